//! pi-special characters, nuclei, B_pi sets and Fong constituents.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::chartab::{character_table, linear_characters, Character, CharacterTable};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::primes::PrimeSet;

pub use crate::primes::pi_part;

/// Largest group order accepted by the exhaustive subnormal test.
pub const EXHAUSTIVE_ORDER_LIMIT: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialMode {
    /// Degree plus determinantal orders of constituents along one chief series.
    ChiefSeries,
    /// The definition itself, over every subnormal subgroup.
    Exhaustive,
}

fn is_main_table(t: &Arc<CharacterTable>) -> bool {
    character_table(t.group()).map(|m| Arc::ptr_eq(&m, t)).unwrap_or(false)
}

fn constituents_have_pi_order(chi: &Character, sub: &PermGroup, pi: &PrimeSet) -> Result<bool> {
    let st = character_table(sub)?;
    for (theta, _) in chi.restrict_to_table(&st)?.decompose()? {
        if !pi.is_pi_number(theta.degree()) || !pi.is_pi_number(theta.determinant_order_unchecked()?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn special_by_chief_series(chi: &Character, pi: &PrimeSet) -> Result<bool> {
    if !pi.is_pi_number(chi.degree()) {
        return Ok(false);
    }
    let g = chi.table().group();
    for term in g.chief_series()?.iter().skip(1) {
        if !constituents_have_pi_order(chi, term, pi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every subnormal subgroup of `g`, `g` first.
pub fn subnormal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let mut found = vec![g.clone()];
    let mut i = 0;
    while i < found.len() {
        let s = found[i].clone();
        for n in s.normal_subgroups()? {
            if !found.iter().any(|f| f.ptr_eq(&n) || *f == n) {
                found.push(n);
            }
        }
        i += 1;
    }
    Ok(found)
}

fn special_exhaustive(chi: &Character, pi: &PrimeSet) -> Result<bool> {
    let g = chi.table().group();
    if g.order() > EXHAUSTIVE_ORDER_LIMIT {
        return Err(Error::BoundExceeded { order: g.order(), cap: EXHAUSTIVE_ORDER_LIMIT });
    }
    for s in subnormal_subgroups(g)? {
        if !constituents_have_pi_order(chi, &s, pi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether an irreducible character is pi-special.
pub fn is_pi_special(chi: &Character, pi: &PrimeSet, mode: SpecialMode) -> Result<bool> {
    let Some(idx) = chi.index() else {
        return Err(Error::Input("pi-special test of a reducible character".into()));
    };
    match mode {
        SpecialMode::Exhaustive => special_exhaustive(chi, pi),
        SpecialMode::ChiefSeries if is_main_table(chi.table()) => {
            Ok(pi_special_rows(chi.table(), pi)?.contains(&idx))
        }
        SpecialMode::ChiefSeries => special_by_chief_series(chi, pi),
    }
}

/// Row indices of the pi-special irreducibles of a table (chief-series test).
pub fn pi_special_rows(t: &Arc<CharacterTable>, pi: &PrimeSet) -> Result<Arc<Vec<usize>>> {
    let key = pi.restrict_to(t.order());
    let main = is_main_table(t);
    if main {
        let cache = t.group().data().special_rows.lock().expect("cache poisoned");
        if let Some(rows) = cache.get(&key) {
            return Ok(rows.clone());
        }
    }
    let mut rows = Vec::new();
    for chi in t.irreducibles() {
        if special_by_chief_series(&chi, &key)? {
            rows.push(chi.index().expect("irreducible"));
        }
    }
    let rows = Arc::new(rows);
    if main {
        t.group().data().special_rows.lock().expect("cache poisoned").insert(key, rows.clone());
    }
    Ok(rows)
}

/// `X_pi(G)`.
pub fn pi_special_set(g: &PermGroup, pi: &PrimeSet) -> Result<Vec<Character>> {
    let t = character_table(g)?;
    Ok(pi_special_rows(&t, pi)?.iter().map(|&i| t.irreducible(i)).collect())
}

fn complement(pi: &PrimeSet, t: &CharacterTable) -> PrimeSet {
    pi.complement_in(t.order())
}

/// The factorization `theta = alpha * beta` with alpha pi-special and beta pi'-special, if any.
pub fn factor_pi_factored(theta: &Character, pi: &PrimeSet) -> Result<Option<(Character, Character)>> {
    let t = theta.table();
    if theta.index().is_none() {
        return Err(Error::Input("factorization of a reducible character".into()));
    }
    let xs = pi_special_rows(t, pi)?;
    let ys = pi_special_rows(t, &complement(pi, t))?;
    let d = theta.degree();
    let mut found: Option<(Character, Character)> = None;
    for &a in xs.iter() {
        let alpha = t.irreducible(a);
        if d % alpha.degree() != 0 {
            continue;
        }
        for &b in ys.iter() {
            let beta = t.irreducible(b);
            if alpha.degree() * beta.degree() != d {
                continue;
            }
            if alpha.tensor(&beta)?.values() == theta.values() {
                if found.is_some() {
                    return Err(Error::Invariant(format!("two pi-factorizations of a degree {d} character")));
                }
                found = Some((alpha.clone(), beta));
            }
        }
    }
    Ok(found)
}

/// The subgroup `W` and factorization `alpha * beta` a character is induced from.
#[derive(Clone, Debug)]
pub struct NucleusData {
    pub w: PermGroup,
    pub alpha: Character,
    pub beta: Character,
    /// Normal subgroup and chosen constituent at each descent step.
    pub chain: Vec<(PermGroup, Character)>,
}

impl NucleusData {
    pub fn beta_is_trivial(&self) -> bool {
        is_trivial_character(&self.beta)
    }
}

fn is_trivial_character(chi: &Character) -> bool {
    let one = Cyclotomic::from_int(1, 1);
    chi.values().iter().all(|v| *v == one)
}

/// `{g : theta^g = theta}` for `theta` a character of a normal subgroup of `g`.
pub fn inertia_group(g: &PermGroup, theta: &Character) -> Result<PermGroup> {
    if !theta.table().group().is_normal_in(g) {
        return Err(Error::NotNormal("inertia group over a non-normal subgroup".into()));
    }
    let values = theta.values().to_vec();
    g.filter_subgroup(|x| theta.conjugate_by(x).map(|c| c.values() == values.as_slice()).unwrap_or(false))
}

fn induces_to(psi: &Character, target: &Character) -> Result<bool> {
    Ok(psi.induce_to_table(target.table())?.values() == target.values())
}

fn descent_step(chi: &Character, pi: &PrimeSet) -> Result<(PermGroup, Character, Character)> {
    let g = chi.table().group().clone();
    let mut choice = None;
    for n in g.normal_subgroups()?.iter().rev() {
        if n.order() == g.order() {
            continue;
        }
        let nt = character_table(n)?;
        let cons = chi.restrict_to_table(&nt)?.decompose()?;
        let theta = cons.into_iter().next().expect("nonzero restriction").0;
        if factor_pi_factored(&theta, pi)?.is_some() {
            choice = Some((n.clone(), theta));
            break;
        }
    }
    let (n, theta) = choice.ok_or_else(|| Error::Invariant("no normal subgroup with pi-factored constituents".into()))?;
    let t = inertia_group(&g, &theta)?;
    if t.order() == g.order() {
        return Err(Error::Invariant(format!(
            "constituent on normal subgroup of order {} is invariant in a group of order {}",
            n.order(),
            g.order()
        )));
    }
    let index = g.order() / t.order();
    let tt = character_table(&t)?;
    let nt = theta.table().clone();
    let mut correspondent = None;
    for (psi, _) in chi.restrict_to_table(&tt)?.decompose()? {
        if psi.degree() * index != chi.degree() {
            continue;
        }
        let over = psi.restrict_to_table(&nt)?.inner_product(&theta)?;
        if over.is_zero() {
            continue;
        }
        if correspondent.is_some() {
            return Err(Error::Invariant("two Clifford correspondents".into()));
        }
        correspondent = Some(psi);
    }
    let psi = correspondent.ok_or_else(|| Error::Invariant("no Clifford correspondent".into()))?;
    if !induces_to(&psi, chi)? {
        return Err(Error::Invariant("Clifford correspondent does not induce back".into()));
    }
    Ok((n, theta, psi))
}

/// Nucleus of an irreducible character of a pi-separable group, by Clifford descent.
pub fn nucleus(chi: &Character, pi: &PrimeSet) -> Result<NucleusData> {
    if chi.index().is_none() {
        return Err(Error::Input("nucleus of a reducible character".into()));
    }
    let mut chain = Vec::new();
    let mut current = chi.clone();
    loop {
        if let Some((alpha, beta)) = factor_pi_factored(&current, pi)? {
            if !induces_to(&alpha.tensor(&beta)?, chi)? {
                return Err(Error::Invariant("nucleus does not induce to the character".into()));
            }
            return Ok(NucleusData { w: current.table().group().clone(), alpha, beta, chain });
        }
        let (n, theta, psi) = descent_step(&current, pi)?;
        chain.push((n, theta));
        current = psi;
    }
}

/// Row indices of B_pi(G) in the group's table.
pub fn bpi_rows(g: &PermGroup, pi: &PrimeSet) -> Result<Arc<Vec<usize>>> {
    let t = character_table(g)?;
    let key = pi.restrict_to(g.order());
    if let Some(rows) = g.data().bpi_rows.lock().expect("cache poisoned").get(&key) {
        return Ok(rows.clone());
    }
    let k = t.num_classes();
    let rows: Vec<usize> = if key.is_empty() {
        vec![0]
    } else if key.is_pi_number(g.order()) {
        (0..k).collect()
    } else {
        if !g.is_pi_separable(&key)? {
            return Err(Error::NotSeparable(key.to_string()));
        }
        let verdicts = crate::par::map_range(k, |i| nucleus(&t.irreducible(i), &key).map(|n| n.beta_is_trivial()));
        let mut rows = Vec::new();
        for (i, v) in verdicts.into_iter().enumerate() {
            if v? {
                rows.push(i);
            }
        }
        rows
    };
    let expected = t.classes().count_pi_classes(&key);
    if rows.len() != expected {
        return Err(Error::Invariant(format!(
            "|B_{key}| = {} but there are {expected} classes of {key}-elements",
            rows.len()
        )));
    }
    let rows = Arc::new(rows);
    g.data().bpi_rows.lock().expect("cache poisoned").insert(key, rows.clone());
    Ok(rows)
}

/// `B_pi(G)` in table order.
pub fn bpi_set(g: &PermGroup, pi: &PrimeSet) -> Result<Vec<Character>> {
    let t = character_table(g)?;
    Ok(bpi_rows(g, pi)?.iter().map(|&i| t.irreducible(i)).collect())
}

/// Constituents of `chi_H` of degree `chi(1)_pi`, each checked to have multiplicity one.
pub fn fong_constituents(chi: &Character, h: &PermGroup, pi: &PrimeSet) -> Result<Vec<Character>> {
    let target = pi_part(chi.degree(), pi);
    let ht = character_table(h)?;
    let mut out = Vec::new();
    for (phi, m) in chi.restrict_to_table(&ht)?.decompose()? {
        if phi.degree() != target {
            continue;
        }
        if m != 1 {
            return Err(Error::Invariant(format!("Fong constituent of degree {target} has multiplicity {m}")));
        }
        out.push(phi);
    }
    if out.is_empty() {
        return Err(Error::Invariant(format!("no constituent of degree {target} on the Hall subgroup")));
    }
    Ok(out)
}

/// `Irr_{pi'}(G)`: irreducibles of pi'-degree.
pub fn irr_pi_prime_set(g: &PermGroup, pi: &PrimeSet) -> Result<Vec<Character>> {
    let t = character_table(g)?;
    Ok(t.irreducibles().into_iter().filter(|c| pi_part(c.degree(), pi) == 1).collect())
}

fn degree_set(chars: &[Character]) -> BTreeSet<u64> {
    chars.iter().map(|c| c.degree()).collect()
}

/// Degree sets of `B_pi(G)` and `B_{pi'}(G)`.
pub fn bcd_sets(g: &PermGroup, pi: &PrimeSet) -> Result<(BTreeSet<u64>, BTreeSet<u64>)> {
    let b = bpi_set(g, pi)?;
    let b2 = bpi_set(g, &pi.complement_in(g.order()))?;
    Ok((degree_set(&b), degree_set(&b2)))
}

/// The sets attached to one group and prime set.
pub struct PiAnalysis {
    pub group: PermGroup,
    pub pi: PrimeSet,
    pub table: Arc<CharacterTable>,
    pub x_pi: Vec<Character>,
    pub x_pi_prime: Vec<Character>,
    pub b_pi: Vec<Character>,
    pub b_pi_prime: Vec<Character>,
    pub pi_class_count: usize,
    pub pi_prime_class_count: usize,
}

impl PiAnalysis {
    pub fn compute(g: &PermGroup, pi: &PrimeSet) -> Result<Self> {
        let table = character_table(g)?;
        let pi = pi.restrict_to(g.order());
        let pi2 = pi.complement_in(g.order());
        let a = PiAnalysis {
            group: g.clone(),
            x_pi: pi_special_set(g, &pi)?,
            x_pi_prime: pi_special_set(g, &pi2)?,
            b_pi: bpi_set(g, &pi)?,
            b_pi_prime: bpi_set(g, &pi2)?,
            pi_class_count: table.classes().count_pi_classes(&pi),
            pi_prime_class_count: table.classes().count_pi_classes(&pi2),
            table,
            pi,
        };
        for (x, b) in [(&a.x_pi, &a.b_pi), (&a.x_pi_prime, &a.b_pi_prime)] {
            if !x.iter().all(|c| b.contains(c)) {
                return Err(Error::Invariant("a pi-special character outside B_pi".into()));
            }
        }
        Ok(a)
    }

    pub fn pi_prime(&self) -> PrimeSet {
        self.pi.complement_in(self.group.order())
    }
}

fn rows_of(chars: &[Character]) -> BTreeSet<usize> {
    chars.iter().filter_map(|c| c.index()).collect()
}

// ---------------------------------------------------------------------------
// structural identities; each returns an Invariant error naming the witness

/// `X_{pi'}(G) = Irr_{pi'}(G) ∩ B_{pi'}(G)`.
pub fn check_x_pi_prime_identity(g: &PermGroup, pi: &PrimeSet) -> Result<()> {
    let pi2 = pi.complement_in(g.order());
    let lhs = rows_of(&pi_special_set(g, &pi2)?);
    let irr = rows_of(&irr_pi_prime_set(g, pi)?);
    let b = rows_of(&bpi_set(g, &pi2)?);
    let rhs: BTreeSet<usize> = irr.intersection(&b).copied().collect();
    if lhs != rhs {
        return Err(Error::Invariant(format!("X_pi' rows {lhs:?} but Irr_pi' ∩ B_pi' rows {rhs:?}")));
    }
    Ok(())
}

/// For members of B_pi: pi-special exactly when the degree is a pi-number.
pub fn check_degree_criterion(g: &PermGroup, pi: &PrimeSet) -> Result<()> {
    for chi in bpi_set(g, pi)? {
        let special = is_pi_special(&chi, pi, SpecialMode::ChiefSeries)?;
        if special != pi.is_pi_number(chi.degree()) {
            return Err(Error::Invariant(format!(
                "B_pi member of degree {} has pi-special = {special}",
                chi.degree()
            )));
        }
    }
    Ok(())
}

/// Restriction and induction of B_pi characters across every normal subgroup.
pub fn check_normal_behaviour(g: &PermGroup, pi: &PrimeSet) -> Result<()> {
    let t = character_table(g)?;
    let b_g = rows_of(&bpi_set(g, pi)?);
    for m in g.normal_subgroups()? {
        let mt = character_table(&m)?;
        let b_m = rows_of(&bpi_set(&m, pi)?);
        for &i in &b_g {
            for (theta, _) in t.irreducible(i).restrict_to_table(&mt)?.decompose()? {
                if !b_m.contains(&theta.index().expect("irreducible")) {
                    return Err(Error::Invariant(format!(
                        "B_pi member of degree {} has a constituent of degree {} outside B_pi of a normal subgroup of order {}",
                        t.irreducible(i).degree(),
                        theta.degree(),
                        m.order()
                    )));
                }
            }
        }
        let coprime_index = pi.is_pi_prime_number(g.order() / m.order());
        for &j in &b_m {
            let psi = mt.irreducible(j);
            let above: Vec<usize> = psi
                .induce_to_table(&t)?
                .decompose()?
                .into_iter()
                .filter_map(|(c, _)| c.index())
                .filter(|c| b_g.contains(c))
                .collect();
            if above.is_empty() || (coprime_index && above.len() != 1) {
                return Err(Error::Invariant(format!(
                    "B_pi character of degree {} of a normal subgroup of order {} lies under {} members of B_pi(G)",
                    psi.degree(),
                    m.order(),
                    above.len()
                )));
            }
        }
    }
    Ok(())
}

/// Fong constituents on a Hall pi-subgroup: existence, multiplicity one, and
/// no constituent shared between two members of B_pi. Returns the owner of
/// each Hall-subgroup row that is a Fong constituent.
pub fn fong_owners(g: &PermGroup, pi: &PrimeSet, h: &PermGroup) -> Result<HashMap<usize, usize>> {
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for chi in bpi_set(g, pi)? {
        let ci = chi.index().expect("irreducible");
        for phi in fong_constituents(&chi, h, pi)? {
            let pi_idx = phi.index().expect("irreducible");
            if let Some(prev) = owner.insert(pi_idx, ci) {
                return Err(Error::Invariant(format!(
                    "Fong constituent of degree {} shared by rows {prev} and {ci}",
                    phi.degree()
                )));
            }
        }
    }
    let ht = character_table(h)?;
    for (&p, &c) in &owner {
        let phi = ht.irreducible(p);
        for chi in bpi_set(g, pi)? {
            let ci = chi.index().expect("irreducible");
            if ci == c {
                continue;
            }
            let m = chi.restrict_to_table(&ht)?.inner_product(&phi)?;
            if !m.is_zero() {
                return Err(Error::Invariant(format!(
                    "Fong constituent of row {c} also lies under row {ci}"
                )));
            }
        }
    }
    Ok(owner)
}

pub fn check_fong(g: &PermGroup, pi: &PrimeSet) -> Result<()> {
    let h = g.hall_subgroup(pi)?;
    fong_owners(g, pi, &h).map(|_| ())
}

/// Linear characters of a Hall pi-subgroup: each is a Fong constituent, and
/// two share a B_pi owner exactly when they are conjugate under `N_G(H)`.
pub fn check_linear_fong_classes(g: &PermGroup, pi: &PrimeSet) -> Result<()> {
    let h = g.hall_subgroup(pi)?;
    let owner = fong_owners(g, pi, &h)?;
    let lin = linear_characters(&h)?;
    let n = g.normalizer(&h)?;
    let mut orbit_of: HashMap<usize, usize> = HashMap::new();
    for phi in &lin {
        let i = phi.index().expect("irreducible");
        if orbit_of.contains_key(&i) {
            continue;
        }
        let mut stack = vec![phi.clone()];
        orbit_of.insert(i, i);
        while let Some(x) = stack.pop() {
            for s in n.generators() {
                let y = x.conjugate_by(s)?;
                let j = y.index().expect("conjugate of an irreducible");
                if let std::collections::hash_map::Entry::Vacant(e) = orbit_of.entry(j) {
                    e.insert(i);
                    stack.push(y);
                }
            }
        }
    }
    for a in &lin {
        let ia = a.index().expect("irreducible");
        let Some(&oa) = owner.get(&ia) else {
            return Err(Error::Invariant("linear character of the Hall subgroup is not a Fong constituent".into()));
        };
        for b in &lin {
            let ib = b.index().expect("irreducible");
            let same_owner = owner.get(&ib) == Some(&oa);
            let conjugate = orbit_of[&ia] == orbit_of[&ib];
            if same_owner != conjugate {
                return Err(Error::Invariant(format!(
                    "linear characters {ia} and {ib}: same owner {same_owner}, N_G(H)-conjugate {conjugate}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::build_symmetric;

    fn s3() -> (PermGroup, Arc<CharacterTable>) {
        let g = build_symmetric(3).build().unwrap();
        let t = character_table(&g).unwrap();
        (g, t)
    }

    #[test]
    fn s3_special_sets() {
        let (g, t) = s3();
        let two = PrimeSet::single(2);
        let three = PrimeSet::single(3);
        let degrees = |v: Vec<Character>| v.iter().map(|c| c.degree()).collect::<Vec<_>>();
        assert_eq!(degrees(pi_special_set(&g, &two).unwrap()), vec![1, 1]);
        assert_eq!(degrees(pi_special_set(&g, &three).unwrap()), vec![1]);
        let chi2 = t.irreducible(2);
        for mode in [SpecialMode::ChiefSeries, SpecialMode::Exhaustive] {
            assert!(!is_pi_special(&chi2, &two, mode).unwrap());
        }
    }

    #[test]
    fn s3_nuclei() {
        let (_, t) = s3();
        let chi2 = t.irreducible(2);
        let n = nucleus(&chi2, &PrimeSet::single(3)).unwrap();
        assert_eq!(n.w.order(), 3);
        assert_eq!(n.alpha.degree(), 1);
        assert!(n.beta_is_trivial());
        let n = nucleus(&chi2, &PrimeSet::single(2)).unwrap();
        assert!(!n.beta_is_trivial());
    }

    #[test]
    fn s3_bpi_and_fong() {
        let (g, t) = s3();
        let three = PrimeSet::single(3);
        let b = bpi_set(&g, &three).unwrap();
        assert_eq!(b.iter().map(|c| c.degree()).collect::<Vec<_>>(), vec![1, 2]);
        let h = g.hall_subgroup(&three).unwrap();
        let f = fong_constituents(&t.irreducible(2), &h, &three).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|c| c.degree() == 1));
        let (a, b) = bcd_sets(&g, &three).unwrap();
        assert_eq!((a, b), ([1, 2].into(), [1].into()));
    }
}
