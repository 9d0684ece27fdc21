//! Group builders, the builtin corpus, and JSON documents for groups and tables.
//!
//! Document formats (field names are fixed):
//!
//! * group: `{"name", "degree", "generators": [[1-based images]], "tags", "suggested_pi"}`
//! * corpus file: `{"groups": [group, ...]}`
//! * table: `{"degree", "generators", "order", "exponent", "classes": {"representatives",
//!   "sizes", "power_maps"}, "irreducibles": [[cyclotomic, ...], ...]}`
//! * cyclotomic: `{"n": conductor, "coeffs": [[k, "num/den"], ...]}` in the power basis
//!
//! Integers above 2^53 are written as decimal strings.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::chartab::{CharacterTable, Construction};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::primes::{is_prime, prime_divisors, PrimeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default)]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suggested_pi: Option<Vec<Vec<u64>>>,
}

impl GroupSpec {
    pub fn new(name: &str, degree: usize, gens: &[Permutation]) -> Self {
        GroupSpec {
            name: name.to_string(),
            degree,
            generators: gens.iter().map(|g| g.to_one_based()).collect(),
            tags: Vec::new(),
            suggested_pi: None,
        }
    }

    fn with_tags(mut self, tags: &[&str]) -> Self {
        self.tags = tags.iter().map(|t| t.to_string()).collect();
        self
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if g.len() != self.degree {
                    return Err(Error::Input(format!(
                        "{}: generator {i} has {} images, degree is {}",
                        self.name,
                        g.len(),
                        self.degree
                    )));
                }
                Permutation::from_one_based(g)
                    .map_err(|e| Error::Input(format!("{}: generator {i}: {e}", self.name)))
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.permutations()?;
        if let Some(sets) = &self.suggested_pi {
            for s in sets {
                PrimeSet::new(s.iter().copied())?;
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<PermGroup> {
        PermGroup::from_generators(self.degree, self.permutations()?)
    }

    /// Suggested prime sets, defaulting to each prime divisor of the order and
    /// the two smallest prime divisors together.
    pub fn pi_choices(&self, order: u64) -> Result<Vec<PrimeSet>> {
        if let Some(sets) = &self.suggested_pi {
            return sets.iter().map(|s| PrimeSet::new(s.iter().copied())).collect();
        }
        Ok(default_pi_choices(order))
    }
}

pub fn default_pi_choices(order: u64) -> Vec<PrimeSet> {
    let primes = prime_divisors(order);
    let mut out: Vec<PrimeSet> = primes.iter().map(|&p| PrimeSet::single(p)).collect();
    if primes.len() >= 2 {
        out.push(PrimeSet::new([primes[0], primes[1]]).expect("distinct primes"));
    }
    out
}

pub fn load_group_spec(doc: &str) -> Result<GroupSpec> {
    let spec: GroupSpec = serde_json::from_str(doc)?;
    spec.validate()?;
    Ok(spec)
}

pub fn save_group_spec(spec: &GroupSpec) -> Result<String> {
    Ok(serde_json::to_string_pretty(spec)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub groups: Vec<GroupSpec>,
}

pub fn load_corpus(doc: &str) -> Result<Vec<GroupSpec>> {
    let file: CorpusFile = serde_json::from_str(doc)?;
    let mut names = BTreeSet::new();
    for g in &file.groups {
        if !names.insert(g.name.clone()) {
            return Err(Error::Input(format!("duplicate group name {}", g.name)));
        }
    }
    Ok(file.groups)
}

pub fn save_corpus(groups: &[GroupSpec]) -> Result<String> {
    Ok(serde_json::to_string_pretty(&CorpusFile { groups: groups.to_vec() })?)
}

// ---------------------------------------------------------------------------
// builders

fn perm(images: Vec<u32>) -> Permutation {
    Permutation::from_images(images).expect("builder produced a bijection")
}

pub fn build_cyclic(n: usize) -> GroupSpec {
    let g = perm((0..n as u32).map(|i| (i + 1) % n as u32).collect());
    GroupSpec::new(&format!("C{n}"), n, &[g]).with_tags(&["solvable", "abelian"])
}

pub fn build_symmetric(n: usize) -> GroupSpec {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[1, 2]]).unwrap());
        gens.push(perm((0..n as u32).map(|i| (i + 1) % n as u32).collect()));
    }
    let mut spec = GroupSpec::new(&format!("S{n}"), n, &gens);
    if n <= 4 {
        spec = spec.with_tags(&["solvable"]);
    }
    spec
}

pub fn build_alternating(n: usize) -> GroupSpec {
    let gens: Vec<Permutation> = (3..=n as u32)
        .map(|k| Permutation::from_cycles(n, &[&[1, 2, k]]).unwrap())
        .collect();
    let mut spec = GroupSpec::new(&format!("A{n}"), n, &gens);
    if n <= 4 {
        spec = spec.with_tags(&["solvable"]);
    }
    spec
}

/// Dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn build_dihedral(n: usize) -> GroupSpec {
    let rot = perm((0..n as u32).map(|i| (i + 1) % n as u32).collect());
    let refl = perm((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
    GroupSpec::new(&format!("D{}", 2 * n), n, &[rot, refl]).with_tags(&["solvable"])
}

/// Quaternion group in its regular representation. Points encode `±{1,i,j,k}`.
pub fn build_quaternion() -> GroupSpec {
    // unit products: table[a][b] = (sign, unit) for a*b, units 0..4 = 1,i,j,k
    const T: [[(bool, u32); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mul = |x: u32, y: u32| -> u32 {
        let (sx, ux) = (x >= 4, x % 4);
        let (sy, uy) = (y >= 4, y % 4);
        let (s, u) = T[ux as usize][uy as usize];
        u + if sx ^ sy ^ s { 4 } else { 0 }
    };
    let right = |g: u32| perm((0..8).map(|x| mul(x, g)).collect());
    GroupSpec::new("Q8", 8, &[right(1), right(2)]).with_tags(&["solvable"])
}

fn f3_point(a: u32, b: u32) -> u32 {
    3 * (a % 3) + (b % 3)
}

fn f3_linear(m: [[u32; 2]; 2]) -> impl Fn(u32, u32) -> (u32, u32) {
    move |a, b| ((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3)
}

const SL23_GENS: [[[u32; 2]; 2]; 2] = [[[1, 1], [0, 1]], [[1, 0], [1, 1]]];

/// `SL(2,3)` acting on the 8 nonzero vectors of the plane over the 3-element field.
pub fn build_sl23() -> GroupSpec {
    let nonzero: Vec<(u32, u32)> =
        (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|&v| v != (0, 0)).collect();
    let pos = |v: (u32, u32)| nonzero.iter().position(|&w| w == v).unwrap() as u32;
    let gens: Vec<Permutation> = SL23_GENS
        .iter()
        .map(|&m| {
            let f = f3_linear(m);
            perm(nonzero.iter().map(|&(a, b)| pos(f(a, b))).collect())
        })
        .collect();
    GroupSpec::new("SL(2,3)", 8, &gens).with_tags(&["solvable"])
}

/// `SL(2,3) ⋉ (Z3)^2` as affine maps of the plane over the 3-element field (degree 9, order 216).
pub fn build_sl23_on_z3sq() -> GroupSpec {
    let mut gens: Vec<Permutation> = SL23_GENS
        .iter()
        .map(|&m| {
            let f = f3_linear(m);
            perm((0..9).map(|x| { let (a, b) = f(x / 3, x % 3); f3_point(a, b) }).collect())
        })
        .collect();
    gens.push(perm((0..9).map(|x| f3_point(x / 3 + 1, x % 3)).collect()));
    GroupSpec::new("SL(2,3):3^2", 9, &gens).with_tags(&["solvable", "paper-example"])
}

/// Frobenius group `C_p ⋊ C_q` of order `pq` acting on `p` points.
pub fn build_frobenius(p: u64, q: u64) -> Result<GroupSpec> {
    if !is_prime(p) || !is_prime(q) || (p - 1) % q != 0 {
        return Err(Error::Input(format!("no Frobenius group for p = {p}, q = {q}")));
    }
    let root = (2..p)
        .find(|&r| prime_divisors(p - 1).iter().all(|&f| mod_pow(r, (p - 1) / f, p) != 1))
        .unwrap_or(1);
    let a = mod_pow(root, (p - 1) / q, p);
    let shift = perm((0..p as u32).map(|x| (x + 1) % p as u32).collect());
    let mult = perm((0..p).map(|x| (x * a % p) as u32).collect());
    let name = if q == 2 { format!("D{}", 2 * p) } else { format!("C{p}:C{q}") };
    Ok(GroupSpec::new(&name, p as usize, &[shift, mult]).with_tags(&["solvable", "frobenius"]))
}

fn mod_pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    acc
}

/// Direct product on the disjoint union of the point sets.
pub fn build_direct_product(a: &GroupSpec, b: &GroupSpec) -> Result<GroupSpec> {
    let n = a.degree + b.degree;
    let mut gens: Vec<Permutation> = a.permutations()?.iter().map(|g| g.embed(n, 0)).collect();
    gens.extend(b.permutations()?.iter().map(|g| g.embed(n, a.degree)));
    let mut spec = GroupSpec::new(&format!("{}x{}", paren(&a.name), paren(&b.name)), n, &gens);
    spec.tags = common_tags(a, b);
    Ok(spec)
}

/// `G wr C2` on two copies of the base points plus the block swap (order `2|G|^2`).
pub fn build_wreath_c2(base: &GroupSpec) -> Result<GroupSpec> {
    let n = base.degree;
    let mut gens: Vec<Permutation> = base.permutations()?.iter().map(|g| g.embed(2 * n, 0)).collect();
    gens.push(perm((0..2 * n as u32).map(|i| (i + n as u32) % (2 * n as u32)).collect()));
    let mut spec = GroupSpec::new(&format!("{}wrC2", paren(&base.name)), 2 * n, &gens);
    spec.tags = common_tags(base, base);
    Ok(spec)
}

fn paren(name: &str) -> String {
    if name.chars().all(|c| c.is_ascii_alphanumeric()) {
        name.to_string()
    } else {
        format!("({name})")
    }
}

fn common_tags(a: &GroupSpec, b: &GroupSpec) -> Vec<String> {
    if a.tags.iter().any(|t| t == "solvable") && b.tags.iter().any(|t| t == "solvable") {
        vec!["solvable".into()]
    } else {
        Vec::new()
    }
}

/// Solvable groups of order at most 1000, including both worked examples.
pub fn builtin_corpus() -> Vec<GroupSpec> {
    let f = |p, q| build_frobenius(p, q).expect("valid Frobenius pair");
    let c73 = f(7, 3);
    let mut d8xf21 = build_direct_product(&build_dihedral(4), &c73).unwrap();
    d8xf21.tags.push("paper-example".into());
    let mut wr = build_wreath_c2(&c73).unwrap();
    wr.tags.push("paper-example".into());
    vec![
        build_cyclic(6),
        build_direct_product(&build_cyclic(2), &build_cyclic(2)).unwrap(),
        build_symmetric(3),
        build_dihedral(4),
        build_quaternion(),
        f(5, 2),
        build_alternating(4),
        build_symmetric(4),
        build_sl23(),
        c73,
        f(11, 5),
        build_direct_product(&build_symmetric(3), &build_symmetric(3)).unwrap(),
        d8xf21,
        build_sl23_on_z3sq(),
        wr,
    ]
}

/// Looks a builtin group up by name, also accepting a few constructor names.
pub fn builtin_by_name(name: &str) -> Result<GroupSpec> {
    if let Some(g) = builtin_corpus().into_iter().find(|g| g.name == name) {
        return Ok(g);
    }
    let extra = [
        build_symmetric(5),
        build_alternating(5),
        build_cyclic(2),
        build_cyclic(3),
        build_frobenius(7, 2).unwrap(),
        build_wreath_c2(&build_sl23_on_z3sq()).unwrap(),
        build_wreath_c2(&build_cyclic(2)).unwrap(),
    ];
    extra
        .into_iter()
        .find(|g| g.name == name)
        .ok_or_else(|| Error::Input(format!("unknown builtin group '{name}'")))
}

// ---------------------------------------------------------------------------
// tables

/// Unsigned integer written as a JSON number up to 2^53 and as a string above.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PortableU64(pub u64);

const SAFE_INT: u64 = 1 << 53;

impl Serialize for PortableU64 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 > SAFE_INT {
            s.serialize_str(&self.0.to_string())
        } else {
            s.serialize_u64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for PortableU64 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(PortableU64(n)),
            Raw::Str(s) => s.parse().map(PortableU64).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclotomicDoc {
    pub n: u64,
    pub coeffs: Vec<(usize, String)>,
}

impl CyclotomicDoc {
    pub fn from_value(v: &Cyclotomic) -> Self {
        CyclotomicDoc {
            n: v.conductor(),
            coeffs: v.sparse_terms().into_iter().map(|(k, q)| (k, format!("{}/{}", q.numer(), q.denom()))).collect(),
        }
    }

    pub fn to_value(&self) -> Result<Cyclotomic> {
        if self.n == 0 {
            return Err(Error::Document("conductor 0".into()));
        }
        let phi = crate::cyclotomic::totient(self.n);
        let mut coeffs = vec![Rational::zero(); phi];
        for (k, q) in &self.coeffs {
            if *k >= phi {
                return Err(Error::Document(format!("basis index {k} out of range for conductor {}", self.n)));
            }
            coeffs[*k] = parse_rational(q)?;
        }
        Ok(Cyclotomic::from_basis_coeffs(self.n, coeffs).expect("length checked"))
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Document(format!("bad rational '{s}'"));
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().map_err(|_| bad())?;
    let d: i64 = d.trim().parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassesDoc {
    pub representatives: Vec<Vec<u32>>,
    pub sizes: Vec<PortableU64>,
    pub power_maps: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    pub order: PortableU64,
    pub exponent: u64,
    pub classes: ClassesDoc,
    pub irreducibles: Vec<Vec<CyclotomicDoc>>,
}

pub fn table_document(t: &CharacterTable) -> TableDoc {
    let cl = t.classes();
    TableDoc {
        degree: t.group().degree(),
        generators: t.group().generators().iter().map(|g| g.to_one_based()).collect(),
        order: PortableU64(t.order()),
        exponent: t.exponent(),
        classes: ClassesDoc {
            representatives: cl.representatives().iter().map(|r| r.to_one_based()).collect(),
            sizes: cl.sizes().iter().map(|&s| PortableU64(s)).collect(),
            power_maps: cl.prime_power_maps().into_iter().map(|(p, m)| (p.to_string(), m)).collect(),
        },
        irreducibles: t.rows().iter().map(|r| r.iter().map(CyclotomicDoc::from_value).collect()).collect(),
    }
}

pub fn save_table(t: &CharacterTable) -> Result<String> {
    Ok(serde_json::to_string_pretty(&table_document(t))?)
}

/// Loads a table document, rebuilding the group and re-verifying the table.
/// Stored classes are matched to freshly enumerated ones, so the stored
/// column order may be any order.
pub fn load_table(doc: &str) -> Result<Arc<CharacterTable>> {
    let d: TableDoc = serde_json::from_str(doc)?;
    let gens = d
        .generators
        .iter()
        .map(|g| Permutation::from_one_based(g))
        .collect::<Result<Vec<_>>>()?;
    let group = PermGroup::from_generators(d.degree, gens)?;
    if group.order() != d.order.0 {
        return Err(Error::Document(format!("stored order {} but generators give {}", d.order.0, group.order())));
    }
    let classes = group.conjugacy_classes()?;
    let k = classes.len();
    if d.classes.representatives.len() != k || d.classes.sizes.len() != k {
        return Err(Error::Document(format!("stored {} classes, group has {k}", d.classes.representatives.len())));
    }
    let mut column_of = vec![usize::MAX; k];
    for (stored, rep) in d.classes.representatives.iter().enumerate() {
        let c = classes.class_of(&Permutation::from_one_based(rep)?)?;
        if column_of[c] != usize::MAX {
            return Err(Error::Document("two stored classes coincide".into()));
        }
        if classes.sizes()[c] != d.classes.sizes[stored].0 {
            return Err(Error::Document(format!("class {stored} has the wrong size")));
        }
        column_of[c] = stored;
    }
    let stored_maps = &d.classes.power_maps;
    for (p, map) in classes.prime_power_maps() {
        let Some(sm) = stored_maps.get(&p.to_string()) else {
            return Err(Error::Document(format!("missing {p}-power map")));
        };
        for c in 0..k {
            if sm.get(column_of[c]).map(|&x| x < k && x == column_of[map[c]]) != Some(true) {
                return Err(Error::Document(format!("{p}-power map disagrees at class {c}")));
            }
        }
    }
    let mut rows = Vec::new();
    for row in &d.irreducibles {
        if row.len() != k {
            return Err(Error::Document("irreducible row of the wrong length".into()));
        }
        let vals = row.iter().map(|v| v.to_value()).collect::<Result<Vec<_>>>()?;
        rows.push((0..k).map(|c| vals[column_of[c]].lift(d.exponent)).collect());
    }
    CharacterTable::from_parts(group, classes, rows, d.exponent, Construction::Direct).map(Arc::new)
}

// ---------------------------------------------------------------------------
// reports

pub fn save_report(report: &crate::theorems::RunReport) -> Result<String> {
    Ok(serde_json::to_string_pretty(report)?)
}

pub fn load_report(doc: &str) -> Result<crate::theorems::RunReport> {
    Ok(serde_json::from_str(doc)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_orders() {
        let cases: Vec<(GroupSpec, u64)> = vec![
            (build_symmetric(4), 24),
            (build_quaternion(), 8),
            (build_sl23(), 24),
            (build_sl23_on_z3sq(), 216),
            (build_frobenius(7, 3).unwrap(), 21),
            (build_frobenius(5, 2).unwrap(), 10),
            (build_frobenius(3, 2).unwrap(), 6),
            (build_wreath_c2(&build_cyclic(2)).unwrap(), 8),
            (build_wreath_c2(&build_frobenius(7, 3).unwrap()).unwrap(), 882),
        ];
        for (spec, order) in cases {
            assert_eq!(spec.build().unwrap().order(), order, "{}", spec.name);
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let g = build_quaternion().build().unwrap();
        let cl = g.conjugacy_classes().unwrap();
        let involutions: u64 = cl
            .rep_orders()
            .iter()
            .zip(cl.sizes())
            .filter(|(&o, _)| o == 2)
            .map(|(_, &s)| s)
            .sum();
        assert_eq!(involutions, 1);
        assert!(!g.is_abelian());
    }

    #[test]
    fn frobenius_rejects_bad_pairs() {
        assert!(build_frobenius(7, 5).is_err());
        assert!(build_frobenius(9, 2).is_err());
    }

    #[test]
    fn s4_spec_document() {
        let spec = load_group_spec(r#"{"name":"S4","degree":4,"generators":[[2,1,3,4],[2,3,4,1]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 24);
        let err = load_group_spec(r#"{"name":"bad","degree":3,"generators":[[1,1,2]]}"#);
        assert!(matches!(err, Err(Error::Input(_))));
        let err = load_group_spec(r#"{"name":"bad","degree":3,"generators":[[1,2]]}"#);
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn portable_integers() {
        let big = PortableU64(1 << 60);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, format!("\"{}\"", 1u64 << 60));
        assert_eq!(serde_json::from_str::<PortableU64>(&s).unwrap(), big);
        assert_eq!(serde_json::to_string(&PortableU64(7)).unwrap(), "7");
    }
}
