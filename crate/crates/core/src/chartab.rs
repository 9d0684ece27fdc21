//! Ordinary character tables with exact values.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;


use crate::classes::{wreath_pair_index, ClassData, Locator};
use crate::cyclotomic::{power_basis_growth, Cyclotomic, ModularImages, Rational};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// How a table was assembled from smaller tables.
#[derive(Clone)]
pub enum Construction {
    /// Computed directly from the group (Dixon–Schneider).
    Direct,
    /// Outer tensor products of two tables.
    DirectProduct { left: Arc<CharacterTable>, right: Arc<CharacterTable> },
    /// Base table of `G`; classes of `G wr C2` are base pairs then swap classes.
    WreathC2 { base: Arc<CharacterTable> },
}

pub struct CharacterTable {
    group: PermGroup,
    classes: Arc<ClassData>,
    irr: Vec<Vec<Cyclotomic>>,
    exponent: u64,
    construction: Construction,
}

/// A class function on the classes of a table.
#[derive(Clone)]
pub struct Character {
    table: Arc<CharacterTable>,
    values: Vec<Cyclotomic>,
}

/// Computes (once per group) and returns the verified character table.
pub fn character_table(g: &PermGroup) -> Result<Arc<CharacterTable>> {
    g.data()
        .table
        .get_or_init(|| {
            let classes = g.conjugacy_classes()?;
            let exponent = classes.exponent();
            let rows = crate::dixon::irreducible_values(&classes, exponent)?;
            CharacterTable::assemble(g.clone(), classes, rows, exponent, Construction::Direct)
                .map(Arc::new)
        })
        .clone()
}

/// Ascending degree, trivial character first, then value sequences.
fn canonical_sort(rows: &mut [Vec<Cyclotomic>]) {
    let nontrivial = |r: &[Cyclotomic]| r.iter().any(|v| *v != r[0]) || r[0] != Cyclotomic::from_int(1, 1);
    rows.sort_by(|a, b| {
        let da = a[0].to_integer().unwrap_or(0);
        let db = b[0].to_integer().unwrap_or(0);
        da.cmp(&db).then_with(|| nontrivial(a).cmp(&nontrivial(b))).then_with(|| a.cmp(b))
    });
}

impl CharacterTable {
    pub(crate) fn from_parts(
        group: PermGroup,
        classes: Arc<ClassData>,
        irr: Vec<Vec<Cyclotomic>>,
        exponent: u64,
        construction: Construction,
    ) -> Result<Self> {
        Self::assemble(group, classes, irr, exponent, construction)
    }

    fn assemble(
        group: PermGroup,
        classes: Arc<ClassData>,
        mut irr: Vec<Vec<Cyclotomic>>,
        exponent: u64,
        construction: Construction,
    ) -> Result<Self> {
        canonical_sort(&mut irr);
        let t = CharacterTable { group, classes, irr, exponent, construction };
        t.verify()?;
        Ok(t)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &Arc<ClassData> {
        &self.classes
    }

    pub fn order(&self) -> u64 {
        self.classes.group_order()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.irr
    }

    pub fn irreducible(self: &Arc<Self>, i: usize) -> Character {
        Character { table: self.clone(), values: self.irr[i].clone() }
    }

    pub fn irreducibles(self: &Arc<Self>) -> Vec<Character> {
        (0..self.irr.len()).map(|i| self.irreducible(i)).collect()
    }

    pub fn trivial_character(self: &Arc<Self>) -> Character {
        self.irreducible(0)
    }

    pub fn class_function(self: &Arc<Self>, values: Vec<Cyclotomic>) -> Result<Character> {
        if values.len() != self.num_classes() {
            return Err(Error::Input(format!(
                "{} values for {} classes",
                values.len(),
                self.num_classes()
            )));
        }
        Ok(Character { table: self.clone(), values })
    }

    /// Index of an irreducible row equal to `values`, if any.
    pub fn row_index(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.irr.iter().position(|r| r.as_slice() == values)
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irr.iter().map(|r| r[0].to_integer().unwrap_or(0) as u64).collect()
    }

    /// Ascending set of irreducible degrees.
    pub fn cd_set(&self) -> BTreeSet<u64> {
        self.degrees().into_iter().collect()
    }

    fn weighted_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.exponent);
        for (c, (x, y)) in a.iter().zip(b).enumerate() {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let term = (x * &y.conj()).scale(Rational::from_integer(self.classes.sizes()[c] as i64));
            acc = &acc + &term;
        }
        acc.scale(Rational::new(1, self.order() as i64))
    }

    /// Exact row and column orthogonality, `sum d^2 = |G|`, integrality, and degree divisibility.
    pub fn verify(&self) -> Result<()> {
        let k = self.num_classes();
        if self.irr.len() != k {
            return Err(Error::Invariant(format!("{} irreducibles for {k} classes", self.irr.len())));
        }
        if self.irr[0].iter().any(|v| *v != Cyclotomic::from_int(1, 1)) {
            return Err(Error::Invariant("first row is not the trivial character".into()));
        }
        let mut sum_sq = 0u64;
        for (i, row) in self.irr.iter().enumerate() {
            let d = row[0]
                .to_integer()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Invariant(format!("row {i} has no positive integer degree")))?
                as u64;
            if self.order() % d != 0 {
                return Err(Error::Invariant(format!("degree {d} does not divide {}", self.order())));
            }
            if !row.iter().all(|v| v.is_algebraic_integer()) {
                return Err(Error::Invariant(format!("row {i} has non-integral values")));
            }
            sum_sq += d * d;
        }
        if sum_sq != self.order() {
            return Err(Error::Invariant(format!("sum of squared degrees {sum_sq} != {}", self.order())));
        }
        self.check_orthogonality()
    }

    /// Exact row and column orthogonality, checked through the images of the
    /// values modulo enough primes `q = 1 (mod n)` to exceed a coefficient bound.
    /// One embedding per prime suffices once the rows are closed under Galois action.
    fn check_orthogonality(&self) -> Result<()> {
        let n = self.exponent;
        let k = self.num_classes();
        let mut ids: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut values: Vec<Vec<i64>> = Vec::new();
        let mut cells = vec![vec![0usize; k]; k];
        for (i, row) in self.irr.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                let v = x
                    .lift(n)
                    .integer_coeffs()
                    .ok_or_else(|| Error::Invariant(format!("row {i} has non-integral values")))?;
                let next = values.len();
                cells[i][c] = *ids.entry(v.clone()).or_insert_with(|| {
                    values.push(v);
                    next
                });
            }
        }
        if cells.iter().collect::<std::collections::HashSet<_>>().len() < k {
            return Err(Error::Invariant("repeated rows".into()));
        }
        let norms: Vec<f64> = values.iter().map(|v| v.iter().map(|c| c.unsigned_abs() as f64).sum()).collect();
        let col_max: Vec<f64> = (0..k).map(|c| (0..k).map(|i| norms[cells[i][c]]).fold(0.0, f64::max)).collect();
        let row_max: Vec<f64> = (0..k).map(|i| (0..k).map(|c| norms[cells[i][c]]).fold(0.0, f64::max)).collect();
        let (m, l1) = power_basis_growth(n);
        let growth = m as f64 * l1 as f64;
        let sizes = self.classes.sizes();
        let b_rows: f64 = growth * (0..k).map(|c| sizes[c] as f64 * col_max[c] * col_max[c]).sum::<f64>();
        let b_cols: f64 = growth * row_max.iter().map(|r| r * r).sum::<f64>();
        let need = (2.0 * (b_rows.max(b_cols) + self.order() as f64) * 1.001 + 2.0).log2();
        let mut have = 0.0;
        let mut unusable = 0;
        let mut q = ((1u64 << 30) / n + 1) * n + 1;
        while have < need {
            while !crate::primes::is_prime(q) {
                q += n;
            }
            if self.orthogonality_mod(q, &values, &cells)? {
                have += (q as f64).log2();
            } else {
                unusable += 1;
                if unusable > 16 {
                    return Err(Error::Invariant("no prime separates the rows".into()));
                }
            }
            q += n;
        }
        Ok(())
    }

    /// `Ok(false)` when `q` cannot separate the rows.
    fn orthogonality_mod(&self, q: u64, values: &[Vec<i64>], cells: &[Vec<usize>]) -> Result<bool> {
        let n = self.exponent;
        let k = self.num_classes();
        let units: Vec<u64> = (0..n).filter(|&r| num_integer::gcd(r, n) == 1).collect();
        let mut pos = vec![usize::MAX; n as usize];
        for (u, &r) in units.iter().enumerate() {
            pos[r as usize] = u;
        }
        let img = ModularImages::new(n, q);
        let vimg: Vec<Vec<u64>> = values.iter().map(|v| units.iter().map(|&r| img.image(v, r)).collect()).collect();
        let embed = |r: u64| -> Vec<Vec<u64>> {
            let u = pos[r as usize];
            cells.iter().map(|row| row.iter().map(|&v| vimg[v][u]).collect()).collect()
        };
        let neg = |r: u64| (n - r) % n;
        let key = |a: &[Vec<u64>], b: &[Vec<u64>], i: usize| -> Vec<u64> { a[i].iter().chain(&b[i]).copied().collect() };
        let (e1, em1) = (embed(units[0]), embed(neg(units[0])));
        let base: HashMap<Vec<u64>, usize> = (0..k).map(|i| (key(&e1, &em1, i), i)).collect();
        if base.len() < k {
            return Ok(false);
        }
        for &r in &units[1..] {
            let (er, emr) = (embed(r), embed(neg(r)));
            let mut seen = vec![false; k];
            for i in 0..k {
                match base.get(&key(&er, &emr, i)) {
                    Some(&j) if !seen[j] => seen[j] = true,
                    _ => return Err(Error::Invariant("rows are not closed under Galois conjugation".into())),
                }
            }
        }
        let f = crate::dixon::Fp::new(q);
        let sizes = self.classes.sizes();
        let weighted: Vec<Vec<u64>> =
            e1.iter().map(|row| row.iter().zip(sizes).map(|(&x, &s)| f.mul(x, s % q)).collect()).collect();
        let dot = |a: &[u64], b: &[u64]| -> u64 {
            let acc: u128 = a.iter().zip(b).map(|(&x, &y)| x as u128 * y as u128).sum();
            (acc % q as u128) as u64
        };
        let order = self.order() % q;
        let bad_rows = crate::par::map_range(k, |i| {
            (i..k).find(|&j| dot(&weighted[i], &em1[j]) != if i == j { order } else { 0 })
        });
        if let Some((i, j)) = bad_rows.iter().enumerate().find_map(|(i, j)| j.map(|j| (i, j))) {
            return Err(Error::Invariant(format!("row orthogonality fails at rows {i}, {j}")));
        }
        let cols: Vec<Vec<u64>> = (0..k).map(|c| e1.iter().map(|row| row[c]).collect()).collect();
        let cols_bar: Vec<Vec<u64>> = (0..k).map(|c| em1.iter().map(|row| row[c]).collect()).collect();
        let bad_cols = crate::par::map_range(k, |a| {
            let cent = self.classes.centralizer_order(a) % q;
            (a..k).find(|&b| dot(&cols[a], &cols_bar[b]) != if a == b { cent } else { 0 })
        });
        if let Some((a, b)) = bad_cols.iter().enumerate().find_map(|(a, b)| b.map(|b| (a, b))) {
            return Err(Error::Invariant(format!("column orthogonality fails at classes {a}, {b}")));
        }
        Ok(true)
    }

    /// For every class of `sub`'s table, the class of this table containing it.
    pub fn fusion_from(&self, sub: &CharacterTable) -> Result<Vec<usize>> {
        if sub.group.degree() != self.group.degree() {
            return Err(Error::NotSubgroup("subgroup acts on a different point set".into()));
        }
        sub.classes
            .representatives()
            .iter()
            .map(|r| self.classes.class_of(r).map_err(|_| Error::NotSubgroup(format!("{r} is not in the group"))))
            .collect()
    }

    /// Values of this table's `wreath` base: class pair index for base classes `(a, b)`.
    pub fn wreath_base_class(&self, a: usize, b: usize) -> Option<usize> {
        match &self.construction {
            Construction::WreathC2 { base } => {
                let k = base.num_classes();
                Some(wreath_pair_index(k, a.min(b), a.max(b)))
            }
            _ => None,
        }
    }

    /// Multiplicities of the base-group constituents `theta_i x theta_j` in a
    /// character of a wreath table, as a `k x k` matrix.
    pub fn wreath_base_constituents(&self, chi: &Character) -> Result<Vec<Vec<u64>>> {
        let k = self.wreath_base()?.num_classes();
        (0..k).map(|i| (0..k).map(|j| self.wreath_base_multiplicity(chi, i, j)).collect()).collect()
    }

    /// Multiplicity of `theta_i x theta_j` in the restriction of `chi` to the base group.
    pub fn wreath_base_multiplicity(&self, chi: &Character, i: usize, j: usize) -> Result<u64> {
        let base = self.wreath_base()?;
        let k = base.num_classes();
        let sizes = base.classes().sizes();
        let n2 = (base.order() * base.order()) as i64;
        let mut acc = Cyclotomic::zero(self.exponent);
        for a in 0..k {
            for b in 0..k {
                let v = &chi.values[wreath_pair_index(k, a.min(b), a.max(b))];
                if v.is_zero() {
                    continue;
                }
                let th = &base.irr[i][a] * &base.irr[j][b];
                let w = Rational::from_integer((sizes[a] * sizes[b]) as i64);
                acc = &acc + &(v * &th.conj()).scale(w);
            }
        }
        acc.scale(Rational::new(1, n2))
            .to_integer()
            .filter(|&m| m >= 0)
            .map(|m| m as u64)
            .ok_or_else(|| Error::Invariant("non-integral base multiplicity".into()))
    }

    fn wreath_base(&self) -> Result<&Arc<CharacterTable>> {
        match &self.construction {
            Construction::WreathC2 { base } => Ok(base),
            _ => Err(Error::Input("table is not a wreath construction".into())),
        }
    }
}

impl Character {
    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn degree(&self) -> u64 {
        self.values[0].to_integer().expect("character degree is an integer") as u64
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    fn same_table(&self, other: &Character) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    /// `<chi, psi>`; rational for characters.
    pub fn inner_product(&self, other: &Character) -> Result<Cyclotomic> {
        self.same_table(other)?;
        Ok(self.table.weighted_product(&self.values, &other.values))
    }

    fn inner_int(&self, other: &Character) -> Result<i64> {
        let ip = self.inner_product(other)?;
        ip.to_integer()
            .ok_or_else(|| Error::Invariant(format!("non-integral inner product {ip}")))
    }

    pub fn norm(&self) -> Result<i64> {
        self.inner_int(self)
    }

    pub fn is_irreducible(&self) -> bool {
        self.table.row_index(&self.values).is_some()
    }

    /// Index of this character among its table's irreducibles.
    pub fn index(&self) -> Option<usize> {
        self.table.row_index(&self.values)
    }

    pub fn tensor(&self, other: &Character) -> Result<Character> {
        self.same_table(other)?;
        Ok(Character {
            table: self.table.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        self.same_table(other)?;
        Ok(Character {
            table: self.table.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn conj(&self) -> Character {
        Character { table: self.table.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    /// Irreducible constituents with positive multiplicity, in table order.
    pub fn decompose(&self) -> Result<Vec<(Character, u64)>> {
        let mut out = Vec::new();
        let mut total = 0u64;
        for irr in self.table.irreducibles() {
            let m = irr.inner_int(self)?;
            if m < 0 {
                return Err(Error::Invariant("negative multiplicity".into()));
            }
            if m > 0 {
                total += m as u64 * irr.degree();
                out.push((irr, m as u64));
            }
        }
        if total != self.degree() {
            return Err(Error::Invariant(format!(
                "constituents account for degree {total}, expected {}",
                self.degree()
            )));
        }
        Ok(out)
    }

    /// The restriction to a subgroup, as a class function on the subgroup's table.
    pub fn restrict(&self, sub: &PermGroup) -> Result<Character> {
        if !sub.is_subgroup_of(self.table.group()) {
            return Err(Error::NotSubgroup(format!("order {} subgroup", sub.order())));
        }
        let st = character_table(sub)?;
        self.restrict_to_table(&st)
    }

    pub fn restrict_to_table(&self, st: &Arc<CharacterTable>) -> Result<Character> {
        let fusion = self.table.fusion_from(st)?;
        Ok(Character { table: st.clone(), values: fusion.iter().map(|&c| self.values[c].clone()).collect() })
    }

    /// Decomposition of the restriction to `sub`.
    pub fn restrict_constituents(&self, sub: &PermGroup) -> Result<Vec<(Character, u64)>> {
        self.restrict(sub)?.decompose()
    }

    /// Induced class function on an overgroup.
    pub fn induce(&self, overgroup: &PermGroup) -> Result<Character> {
        let big = character_table(overgroup)?;
        self.induce_to_table(&big)
    }

    pub fn induce_to_table(&self, big: &Arc<CharacterTable>) -> Result<Character> {
        let sub = &self.table;
        if !sub.group().is_subgroup_of(big.group()) {
            return Err(Error::NotSubgroup("inducing from a non-subgroup".into()));
        }
        let fusion = big.fusion_from(sub)?;
        let k = big.num_classes();
        let mut sums = vec![Cyclotomic::zero(big.exponent()); k];
        for (c, &bc) in fusion.iter().enumerate() {
            let w = Rational::from_integer(sub.classes().sizes()[c] as i64);
            sums[bc] = &sums[bc] + &self.values[c].scale(w);
        }
        let values = sums
            .into_iter()
            .enumerate()
            .map(|(bc, s)| s.scale(Rational::new(big.classes().centralizer_order(bc) as i64, sub.order() as i64)))
            .collect();
        Ok(Character { table: big.clone(), values })
    }

    /// `{g : chi(g) = chi(1)}` as a subgroup.
    pub fn kernel(&self) -> Result<PermGroup> {
        let classes = self.table.classes();
        let mut elems = Vec::new();
        for c in 0..classes.len() {
            if self.values[c] == self.values[0] {
                elems.extend(classes.members(c)?);
            }
        }
        Ok(PermGroup::generated_by(self.table.group().degree(), elems.iter()))
    }

    /// Multiplicities of `zeta_o^t` as eigenvalues on class `c`, where `o` is the element order.
    pub fn eigenvalue_multiplicities(&self, c: usize) -> Result<Vec<u64>> {
        let classes = self.table.classes();
        let o = classes.rep_orders()[c];
        let mut out = Vec::with_capacity(o as usize);
        for t in 0..o as i64 {
            let mut acc = Cyclotomic::zero(self.table.exponent());
            for l in 0..o as i64 {
                let v = &self.values[classes.power_class(c, l)];
                acc = &acc + &(v * &Cyclotomic::root_of_unity(o, -t * l));
            }
            let mu = acc.scale(Rational::new(1, o as i64));
            let m = mu
                .to_integer()
                .filter(|&m| m >= 0)
                .ok_or_else(|| Error::Invariant(format!("eigenvalue multiplicity {mu} on class {c}")))?;
            out.push(m as u64);
        }
        Ok(out)
    }

    /// Order of the determinant character `det chi` (irreducible input).
    pub fn determinant_order(&self) -> Result<u64> {
        if !self.is_irreducible() {
            return Err(Error::Input("determinantal order of a reducible character".into()));
        }
        self.determinant_order_unchecked()
    }

    pub(crate) fn determinant_order_unchecked(&self) -> Result<u64> {
        let classes = self.table.classes();
        let mut ord = 1u64;
        for c in 0..classes.len() {
            let o = classes.rep_orders()[c];
            let d = if self.degree() == 1 {
                self.values[c]
                    .root_of_unity_order()
                    .ok_or_else(|| Error::Invariant("linear value is not a root of unity".into()))?
            } else {
                let mu = self.eigenvalue_multiplicities(c)?;
                let s: u64 = mu.iter().enumerate().map(|(t, m)| t as u64 * m).sum::<u64>() % o;
                o / num_integer::gcd(o, s)
            };
            ord = num_integer::lcm(ord, d);
        }
        Ok(ord)
    }

    /// `chi^g` for `g` normalizing the underlying group: `chi^g(x) = chi(g x g^-1)`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Character> {
        let classes = self.table.classes();
        let gi = g.inverse();
        let values = classes
            .representatives()
            .iter()
            .map(|r| Ok(self.values[classes.class_of(&r.conjugate_by(&gi))?].clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Character { table: self.table.clone(), values })
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) && self.values == other.values
    }
}

impl Eq for Character {}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Character{:?}", self.values)
    }
}

/// Degree-1 characters, pulled back from the table of `G/G'`.
pub fn linear_characters(g: &PermGroup) -> Result<Vec<Character>> {
    let table = character_table(g)?;
    let derived = g.derived_subgroup();
    let mut out = Vec::new();
    if derived.is_trivial() {
        out = table.irreducibles().into_iter().filter(|c| c.degree() == 1).collect();
    } else {
        let q = g.quotient(&derived)?;
        let qt = character_table(q.group())?;
        let qclass: Vec<usize> = table
            .classes()
            .representatives()
            .iter()
            .map(|r| qt.classes().class_of(&q.project(r)))
            .collect::<Result<_>>()?;
        for row in qt.rows().iter().filter(|r| r[0] == Cyclotomic::from_int(1, 1)) {
            let values: Vec<Cyclotomic> = qclass.iter().map(|&c| row[c].lift(table.exponent())).collect();
            let idx = table
                .row_index(&values)
                .ok_or_else(|| Error::Invariant("pulled-back linear character is not irreducible".into()))?;
            out.push(table.irreducible(idx));
        }
        out.sort_by_key(|c| c.index());
    }
    let index = g.order() / derived.order();
    if out.len() as u64 != index {
        return Err(Error::Invariant(format!("{} linear characters for |G:G'| = {index}", out.len())));
    }
    Ok(out)
}

/// Table of `A x B` acting on the disjoint union of the point sets.
pub fn direct_product_table(t1: &Arc<CharacterTable>, t2: &Arc<CharacterTable>) -> Result<Arc<CharacterTable>> {
    let n1 = t1.group().degree();
    let n2 = t2.group().degree();
    let n = n1 + n2;
    let mut gens: Vec<Permutation> = t1.group().generators().iter().map(|g| g.embed(n, 0)).collect();
    gens.extend(t2.group().generators().iter().map(|g| g.embed(n, n1)));
    let group = PermGroup::from_generators(n, gens)?;
    let (c1, c2) = (t1.classes(), t2.classes());
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for (a, ra) in c1.representatives().iter().enumerate() {
        for (b, rb) in c2.representatives().iter().enumerate() {
            reps.push(ra.embed(n, 0).compose(&rb.embed(n, n1)));
            sizes.push(c1.sizes()[a] * c2.sizes()[b]);
        }
    }
    let classes = Arc::new(ClassData::assemble(
        t1.order() * t2.order(),
        reps,
        sizes,
        Locator::Product { left: c1.clone(), right: c2.clone(), left_degree: n1 },
    )?);
    let exponent = num_integer::lcm(t1.exponent(), t2.exponent());
    let mut rows = Vec::new();
    for r1 in t1.rows() {
        for r2 in t2.rows() {
            let mut row = Vec::with_capacity(r1.len() * r2.len());
            for x in r1 {
                for y in r2 {
                    row.push((x * y).lift(exponent));
                }
            }
            rows.push(row);
        }
    }
    let construction = Construction::DirectProduct { left: t1.clone(), right: t2.clone() };
    CharacterTable::assemble(group, classes, rows, exponent, construction).map(Arc::new)
}

/// Table of `G wr C2` built from the base table: induced characters from
/// unordered pairs of distinct irreducibles, and two extensions of each `theta x theta`.
pub fn wreath_c2_table(base: &Arc<CharacterTable>) -> Result<Arc<CharacterTable>> {
    let n = base.group().degree();
    let swap = Permutation::from_images((0..2 * n as u32).map(|i| (i + n as u32) % (2 * n as u32)).collect())?;
    let mut gens: Vec<Permutation> = base.group().generators().iter().map(|g| g.embed(2 * n, 0)).collect();
    gens.push(swap.clone());
    let group = PermGroup::from_generators(2 * n, gens)?;
    let bc = base.classes();
    let k = bc.len();
    let order = base.order();
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for a in 0..k {
        for b in a..k {
            let ra = &bc.representatives()[a];
            let rb = &bc.representatives()[b];
            reps.push(ra.embed(2 * n, 0).compose(&rb.embed(2 * n, n)));
            sizes.push(if a == b { bc.sizes()[a].pow(2) } else { 2 * bc.sizes()[a] * bc.sizes()[b] });
        }
    }
    for c in 0..k {
        reps.push(bc.representatives()[c].embed(2 * n, 0).compose(&swap));
        sizes.push(order * bc.sizes()[c]);
    }
    let classes = Arc::new(ClassData::assemble(
        2 * order * order,
        reps,
        sizes,
        Locator::Wreath { base: bc.clone(), base_degree: n },
    )?);
    let exponent = classes.exponent();
    let swap_offset = k * (k + 1) / 2;
    let zero = Cyclotomic::zero(exponent);
    let two = Rational::from_integer(2);
    let mut rows = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let (t, u) = (&base.rows()[i], &base.rows()[j]);
            let mut row = Vec::with_capacity(classes.len());
            for a in 0..k {
                for b in a..k {
                    let v = if a == b {
                        (&t[a] * &u[a]).scale(two)
                    } else {
                        &(&t[a] * &u[b]) + &(&t[b] * &u[a])
                    };
                    row.push(v.lift(exponent));
                }
            }
            row.extend(std::iter::repeat(zero.clone()).take(k));
            rows.push(row);
        }
    }
    for t in base.rows() {
        let mut plus = Vec::with_capacity(classes.len());
        for a in 0..k {
            for b in a..k {
                plus.push((&t[a] * &t[b]).lift(exponent));
            }
        }
        let mut minus = plus.clone();
        for c in 0..k {
            plus.push(t[c].lift(exponent));
            minus.push((-&t[c]).lift(exponent));
        }
        debug_assert_eq!(plus.len(), swap_offset + k);
        rows.push(plus);
        rows.push(minus);
    }
    if rows.len() != k * (k - 1) / 2 + 2 * k {
        return Err(Error::Invariant("wreath row count".into()));
    }
    CharacterTable::assemble(group, classes, rows, exponent, Construction::WreathC2 { base: base.clone() })
        .map(Arc::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_alternating, build_frobenius};

    fn rebuilt(t: &CharacterTable, irr: Vec<Vec<Cyclotomic>>) -> Result<CharacterTable> {
        CharacterTable::from_parts(t.group.clone(), t.classes.clone(), irr, t.exponent, Construction::Direct)
    }

    #[test]
    fn genuine_tables_verify() {
        for g in [build_alternating(4), build_frobenius(7, 3).unwrap()] {
            let t = character_table(&g.build().unwrap()).unwrap();
            assert!(rebuilt(&t, t.irr.clone()).is_ok());
        }
    }

    #[test]
    fn corrupted_tables_are_rejected() {
        let t = character_table(&build_alternating(4).build().unwrap()).unwrap();
        let last = t.irr.len() - 1;
        // swapped values in one row
        let mut irr = t.irr.clone();
        irr[last].swap(1, 2);
        assert!(rebuilt(&t, irr).is_err());
        // a nonreal row replaced by its own conjugate breaks Galois closure
        let i = (0..t.irr.len()).find(|&i| t.irr[i].iter().any(|v| !v.is_rational())).unwrap();
        let mut irr = t.irr.clone();
        let j = (0..t.irr.len()).find(|&j| j != i && t.irr[j] == t.irr[i].iter().map(|v| v.conj()).collect::<Vec<_>>()).unwrap();
        irr[i] = irr[j].clone();
        assert!(rebuilt(&t, irr).is_err());
    }
}
