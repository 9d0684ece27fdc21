//! Exact elements of cyclotomic fields.
//!
//! An element of `Q(zeta_n)` is stored in the power basis
//! `1, zeta, ..., zeta^(phi(n)-1)`, i.e. as a polynomial reduced modulo the
//! n-th cyclotomic polynomial. The representation is unique for a fixed
//! conductor, so equality within a conductor is structural. Values with
//! different conductors are compared after lifting to the common multiple.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rational = Ratio<i64>;

struct Field {
    phi: usize,
    /// Coefficients of the monic cyclotomic polynomial, lowest degree first.
    poly: Vec<i64>,
    /// `zeta^j` for `0 <= j < n` expressed in the power basis.
    powers: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &field(d).poly);
        }
    }
    p
}

fn build_field(n: u64) -> Field {
    let poly = cyclotomic_poly(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by zeta
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..(phi - 1)]);
        if top != 0 {
            for j in 0..phi {
                next[j] -= top * poly[j];
            }
        }
        cur = next;
    }
    Field { phi, poly, powers }
}

fn field(n: u64) -> Arc<Field> {
    static FIELDS: OnceLock<RwLock<HashMap<u64, Arc<Field>>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = map.read().expect("field cache poisoned").get(&n) {
        return f.clone();
    }
    let f = Arc::new(build_field(n));
    map.write().expect("field cache poisoned").entry(n).or_insert(f).clone()
}

/// Euler's totient, via the degree of the cyclotomic polynomial.
pub fn totient(n: u64) -> usize {
    field(n).phi
}

#[derive(Clone)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        assert!(n >= 1);
        Cyclotomic { n, coeffs: vec![Rational::zero(); totient(n)] }
    }

    pub fn from_rational(n: u64, q: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(n: u64, k: i64) -> Self {
        Self::from_rational(n, Rational::from_integer(k))
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        let f = field(n);
        let k = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            n,
            coeffs: f.powers[k].iter().map(|&c| Rational::from_integer(c)).collect(),
        }
    }

    /// `sum q * zeta_n^k` over the given terms; exponents taken modulo `n`.
    pub fn from_exponent_terms<I: IntoIterator<Item = (i64, Rational)>>(n: u64, terms: I) -> Self {
        let f = field(n);
        let mut coeffs = vec![Rational::zero(); f.phi];
        for (k, q) in terms {
            if q.is_zero() {
                continue;
            }
            let k = k.rem_euclid(n as i64) as usize;
            for (c, &b) in coeffs.iter_mut().zip(&f.powers[k]) {
                if b != 0 {
                    *c += q * b;
                }
            }
        }
        Cyclotomic { n, coeffs }
    }

    /// Builds directly from power-basis coefficients (length must be phi(n)).
    pub fn from_basis_coeffs(n: u64, coeffs: Vec<Rational>) -> Option<Self> {
        (coeffs.len() == totient(n)).then_some(Cyclotomic { n, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn basis_coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero `(k, c_k)` pairs of the power-basis expansion.
    pub fn sparse_terms(&self) -> Vec<(usize, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, *c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0])
    }

    pub fn to_integer(&self) -> Option<i64> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// In the power basis, algebraic integers are exactly the integral coordinate vectors.
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Re-expresses the value in `Q(zeta_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "cannot lift conductor {} to {}", self.n, m);
        let step = (m / self.n) as i64;
        Self::from_exponent_terms(
            m,
            self.coeffs.iter().enumerate().map(|(k, &q)| (k as i64 * step, q)),
        )
    }

    /// Galois automorphism `zeta -> zeta^k` (k coprime to the conductor).
    pub fn galois(&self, k: i64) -> Self {
        Self::from_exponent_terms(
            self.n,
            self.coeffs.iter().enumerate().map(|(j, &q)| (j as i64 * k, q)),
        )
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, q: Rational) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.n == b.n {
            (a.clone(), b.clone())
        } else {
            let m = a.n.lcm(&b.n);
            (a.lift(m), b.lift(m))
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let f = field(self.n);
        let phi = f.phi;
        if self.is_rational() {
            return other.scale(self.coeffs[0]);
        }
        if other.is_rational() {
            return self.scale(other.coeffs[0]);
        }
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        for i in (phi..prod.len()).rev() {
            let c = prod[i];
            if c.is_zero() {
                continue;
            }
            for j in 0..phi {
                let p = f.poly[j];
                if p != 0 {
                    prod[i - phi + j] -= c * p;
                }
            }
        }
        prod.truncate(phi);
        Cyclotomic { n: self.n, coeffs: prod }
    }

    /// Order of the value as a root of unity, if it is one.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        let n = self.n;
        let mut best = None;
        for k in 0..n {
            if Self::root_of_unity(n, k as i64) == *self {
                best = Some(n / n.gcd(&k));
                break;
            }
        }
        best
    }

    /// Lowers to the smallest conductor that still contains the value.
    pub fn minimal_conductor(&self) -> u64 {
        let mut n = self.n;
        loop {
            let mut lowered = false;
            for d in (1..n).filter(|d| n % d == 0) {
                // a value lies in Q(zeta_d) iff it is fixed by Gal(Q(zeta_n)/Q(zeta_d))
                let fixed = (0..n as i64)
                    .filter(|k| (*k as u64).gcd(&n) == 1 && (*k as u64 % d == 1 % d))
                    .all(|k| self.galois(k) == *self);
                if fixed {
                    n = d;
                    lowered = true;
                    break;
                }
            }
            if !lowered || n == 1 {
                return n;
            }
        }
    }
}

/// Reduction of algebraic integers of `Q(zeta_n)` modulo a prime `q = 1 (mod n)`:
/// `zeta` goes to `w^r` for a fixed primitive n-th root `w` and a unit `r`.
pub(crate) struct ModularImages {
    n: u64,
    f: crate::dixon::Fp,
    /// `w^e` for `0 <= e < n`.
    wpow: Vec<u64>,
}

impl ModularImages {
    pub fn new(n: u64, q: u64) -> Self {
        assert!(q % n == 1 % n, "{q} is not 1 mod {n}");
        let f = crate::dixon::Fp::new(q);
        let w = f.pow(crate::dixon::primitive_root(f), (q - 1) / n);
        let mut wpow = Vec::with_capacity(n as usize);
        let mut cur = 1;
        for _ in 0..n {
            wpow.push(cur);
            cur = f.mul(cur, w);
        }
        ModularImages { n, f, wpow }
    }

    /// Image of an integral coefficient vector under `zeta -> w^r`.
    pub fn image(&self, coeffs: &[i64], r: u64) -> u64 {
        let q = self.f.p() as i64;
        let mut acc = 0u64;
        for (s, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let c = c.rem_euclid(q) as u64;
                acc = self.f.add(acc, self.f.mul(c, self.wpow[(r * s as u64 % self.n) as usize]));
            }
        }
        acc
    }
}

/// Largest absolute coefficient and largest l1-norm among the power-basis
/// expansions of `zeta_n^e`.
pub(crate) fn power_basis_growth(n: u64) -> (u64, u64) {
    let f = field(n);
    let max = f.powers.iter().flatten().map(|c| c.unsigned_abs()).max().unwrap_or(1);
    let l1 = f.powers.iter().map(|v| v.iter().map(|c| c.unsigned_abs()).sum()).max().unwrap_or(1);
    (max, l1)
}

impl Cyclotomic {
    /// Power-basis coefficients as integers, for algebraic integers.
    pub(crate) fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::common(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

/// A fixed total order: conductor first, then coefficients. Only meaningful
/// for values sharing a conductor, which is how tables use it.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == rhs.n {
            Cyclotomic {
                n: self.n,
                coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            }
        } else {
            let (a, b) = Cyclotomic::common(self, rhs);
            &a + &b
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == rhs.n {
            self.mul_same(rhs)
        } else {
            let (a, b) = Cyclotomic::common(self, rhs);
            a.mul_same(&b)
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Human-readable form such as `-1-2z12^3`, where `zN^k` means `zeta_N^k`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sparse_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx > 0 || neg {
                write!(f, "{}", if neg { "-" } else { if idx > 0 { "+" } else { "" } })?;
            }
            if *k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "z{}", self.n)?;
                if *k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(field(1).poly, vec![-1, 1]);
        assert_eq!(field(3).poly, vec![1, 1, 1]);
        assert_eq!(field(4).poly, vec![1, 0, 1]);
        assert_eq!(field(12).poly, vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(24), 8);
        assert_eq!(totient(42), 12);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [2u64, 3, 4, 6, 7, 12, 15] {
            let mut s = Cyclotomic::zero(n);
            for k in 0..n as i64 {
                s = &s + &Cyclotomic::root_of_unity(n, k);
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn multiplication_of_roots() {
        let a = Cyclotomic::root_of_unity(12, 5);
        let b = Cyclotomic::root_of_unity(12, 9);
        assert_eq!(&a * &b, Cyclotomic::root_of_unity(12, 2));
        let w = Cyclotomic::root_of_unity(3, 1);
        // w * conj(w) = 1 and w + conj(w) = -1
        assert_eq!(&w * &w.conj(), Cyclotomic::from_int(3, 1));
        assert_eq!(&w + &w.conj(), Cyclotomic::from_int(3, -1));
    }

    #[test]
    fn mixed_conductors_compare_after_lifting() {
        let w3 = Cyclotomic::root_of_unity(3, 1);
        let w6 = Cyclotomic::root_of_unity(6, 2);
        assert_eq!(w3, w6);
        let half = Cyclotomic::from_rational(5, q(1, 2));
        assert_eq!(half, Cyclotomic::from_rational(1, q(1, 2)));
        assert_eq!((&w3 + &half).conductor(), 15);
    }

    #[test]
    fn minimal_conductor_detects_subfields() {
        let i = Cyclotomic::root_of_unity(12, 3);
        assert_eq!(i.minimal_conductor(), 4);
        assert_eq!(Cyclotomic::from_int(12, 7).minimal_conductor(), 1);
        // zeta_8 + zeta_8^7 = sqrt 2 lives in Q(zeta_8), not lower
        let s = &Cyclotomic::root_of_unity(8, 1) + &Cyclotomic::root_of_unity(8, 7);
        assert_eq!(s.minimal_conductor(), 8);
        assert_eq!(Cyclotomic::root_of_unity(6, 1).minimal_conductor(), 3);
    }

    #[test]
    fn root_order() {
        assert_eq!(Cyclotomic::root_of_unity(12, 4).root_of_unity_order(), Some(3));
        assert_eq!(Cyclotomic::from_int(12, -1).root_of_unity_order(), Some(2));
        assert_eq!(Cyclotomic::from_int(12, 2).root_of_unity_order(), None);
    }
}
