//! Dixon–Schneider: simultaneous eigenvectors of the class multiplication
//! matrices over a prime field, lifted to exact cyclotomic values through
//! eigenvalue multiplicities.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::ClassData;
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::primes::{is_prime, prime_divisors};

static SEED: AtomicU64 = AtomicU64::new(0x5eed_b1a5);

/// Seed for the random class-sum combinations. Tables do not depend on it
/// (rows are sorted canonically); only the splitting path does.
pub fn set_seed(seed: u64) {
    SEED.store(seed, Ordering::Relaxed);
}

pub fn seed() -> u64 {
    SEED.load(Ordering::Relaxed)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverting zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2 sqrt(order)`.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime(p) && p * p > 4 * order) {
        p += exponent;
    }
    p
}

pub(crate) fn primitive_root(f: Fp) -> u64 {
    let factors = prime_divisors(f.p - 1);
    (2..f.p)
        .find(|&g| factors.iter().all(|&q| f.pow(g, (f.p - 1) / q) != 1))
        .expect("prime field has a primitive root")
}

/// Row-reduces in place, returning pivot columns.
fn rref(f: Fp, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    let t = f.mul(factor, rows[r][j]);
                    rows[i][j] = f.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : m x = 0}` for a square matrix.
fn nullspace(f: Fp, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut rows = m.to_vec();
    let pivots = rref(f, &mut rows);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; n];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, rows[r][fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial through a Hessenberg form, lowest degree first.
fn charpoly(f: Fp, a: &[Vec<u64>]) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let j = m - 1;
        let Some(i) = (m..n).find(|&i| h[i][j] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = f.inv(h[m][j]);
        for i in m + 1..n {
            let u = f.mul(h[i][j], inv);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = f.mul(u, h[m][c]);
                h[i][c] = f.sub(h[i][c], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[i]);
                row[m] = f.add(row[m], t);
            }
        }
    }
    // p_{m+1} = (x - h_mm) p_m - sum_{i<m} h_im (prod_{r=i+1..m} h_{r,r-1}) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let pm = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in pm.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[m][m], c));
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(h[i][m], prod);
            if coef != 0 {
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval(f: Fp, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Class multiplication matrices: `mats[j][i][k]` counts `x` in class `j`
/// with `x^-1 z_k` in class `i`, where `z_k` is the representative of class `k`.
fn class_matrices(f: Fp, classes: &ClassData) -> Result<Vec<Vec<Vec<u64>>>> {
    let k = classes.len();
    let members: Vec<Vec<_>> = (0..k).map(|c| classes.members(c)).collect::<Result<_>>()?;
    let reps = classes.representatives();
    let mats: Vec<Result<Vec<Vec<u64>>>> = crate::par::map_range(k, |j| {
        let mut m = vec![vec![0u64; k]; k];
        for x in &members[j] {
            let xi = x.inverse();
            for (kk, z) in reps.iter().enumerate() {
                let i = classes.class_of(&xi.compose(z))?;
                m[i][kk] += 1;
            }
        }
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v %= f.p;
            }
        }
        Ok(m)
    });
    mats.into_iter().collect()
}

struct Splitter<'a> {
    f: Fp,
    mats: &'a [Vec<Vec<u64>>],
}

impl Splitter<'_> {
    /// Splits a subspace (RREF rows) into eigenspaces of `a`; None if `a` acts as a scalar.
    fn split(&self, basis: &[Vec<u64>], pivots: &[usize], a: &[Vec<u64>]) -> Option<Vec<Vec<Vec<u64>>>> {
        let f = self.f;
        let d = basis.len();
        let k = a.len();
        // images of basis vectors, expressed in basis coordinates via pivot entries
        let mut r = vec![vec![0u64; d]; d];
        for (col, b) in basis.iter().enumerate() {
            for (row_idx, &pc) in pivots.iter().enumerate() {
                let mut s = 0u64;
                for t in 0..k {
                    if b[t] != 0 && a[pc][t] != 0 {
                        s = f.add(s, f.mul(a[pc][t], b[t]));
                    }
                }
                r[row_idx][col] = s;
            }
        }
        let cp = charpoly(f, &r);
        let roots: Vec<u64> = (0..f.p).filter(|&x| eval(f, &cp, x) == 0).collect();
        if roots.len() < 2 {
            return None;
        }
        let mut parts = Vec::new();
        for lam in roots {
            let mut m = r.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = f.sub(row[i], lam);
            }
            let coords = nullspace(f, &m);
            let mut vecs: Vec<Vec<u64>> = coords
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; k];
                    for (ci, b) in c.iter().zip(basis) {
                        if *ci != 0 {
                            for t in 0..k {
                                v[t] = f.add(v[t], f.mul(*ci, b[t]));
                            }
                        }
                    }
                    v
                })
                .collect();
            rref(f, &mut vecs);
            parts.push(vecs);
        }
        Some(parts)
    }
}

/// Exact irreducible character values, one row per character, in no particular order.
pub(crate) fn irreducible_values(classes: &ClassData, conductor: u64) -> Result<Vec<Vec<Cyclotomic>>> {
    let order = classes.group_order();
    let k = classes.len();
    let exponent = classes.exponent();
    let p = dixon_prime(exponent, order);
    let f = Fp::new(p);
    let z = f.pow(primitive_root(f), (p - 1) / exponent);
    let mats = class_matrices(f, classes)?;
    let splitter = Splitter { f, mats: &mats };
    let mut rng = ChaCha8Rng::seed_from_u64(seed());

    let mut done: Vec<Vec<u64>> = Vec::new();
    let mut pending: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()];
    while let Some(mut space) = pending.pop() {
        let pivots = rref(f, &mut space);
        if space.len() == 1 {
            done.push(space.pop().unwrap());
            continue;
        }
        let mut parts = None;
        for _ in 0..4 {
            let coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            let mut a = vec![vec![0u64; k]; k];
            for (j, m) in splitter.mats.iter().enumerate() {
                if coeffs[j] == 0 {
                    continue;
                }
                for (arow, mrow) in a.iter_mut().zip(m) {
                    for (x, &y) in arow.iter_mut().zip(mrow) {
                        *x = f.add(*x, f.mul(coeffs[j], y));
                    }
                }
            }
            parts = splitter.split(&space, &pivots, &a);
            if parts.is_some() {
                break;
            }
        }
        if parts.is_none() {
            for m in splitter.mats.iter() {
                parts = splitter.split(&space, &pivots, m);
                if parts.is_some() {
                    break;
                }
            }
        }
        match parts {
            Some(ps) => pending.extend(ps),
            None => {
                return Err(Error::Invariant(format!(
                    "eigenspace of dimension {} could not be split",
                    space.len()
                )))
            }
        }
    }
    if done.len() != k {
        return Err(Error::Invariant(format!("found {} characters for {k} classes", done.len())));
    }

    let sizes = classes.sizes();
    let order_mod = order % p;
    let mut rows = Vec::with_capacity(k);
    for mut w in done {
        if w[0] == 0 {
            return Err(Error::Invariant("central character vanishes on the identity".into()));
        }
        let inv0 = f.inv(w[0]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv0);
        }
        // sum_k w_k w_k* / |C_k| = |G| / chi(1)^2
        let mut s = 0u64;
        for c in 0..k {
            let t = f.mul(f.mul(w[c], w[classes.inverse_class(c)]), f.inv(sizes[c] % p));
            s = f.add(s, t);
        }
        let d2 = f.mul(order_mod, f.inv(s));
        let degree = (1..=((order as f64).sqrt() as u64 + 1))
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::Invariant("no admissible character degree".into()))?;
        let values: Vec<u64> = (0..k)
            .map(|c| f.mul(f.mul(w[c], degree), f.inv(sizes[c] % p)))
            .collect();
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let o = classes.rep_orders()[c];
            let zo = f.pow(z, exponent / o);
            let inv_o = f.inv(o % p);
            let mut terms = Vec::new();
            for t in 0..o {
                let mut acc = 0u64;
                for l in 0..o {
                    let v = values[classes.power_class(c, l as i64)];
                    let root = f.pow(zo, (o - (t * l) % o) % o);
                    acc = f.add(acc, f.mul(v, root));
                }
                let mu = f.mul(acc, inv_o);
                if mu > degree {
                    return Err(Error::Invariant(format!(
                        "eigenvalue multiplicity {mu} exceeds degree {degree}"
                    )));
                }
                if mu > 0 {
                    terms.push(((t * (conductor / o)) as i64, Rational::from_integer(mu as i64)));
                }
            }
            row.push(Cyclotomic::from_exponent_terms(conductor, terms));
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        // S3: exponent 6, need p > 2 sqrt 6 ~ 4.9, p = 1 mod 6 -> 7
        assert_eq!(dixon_prime(6, 6), 7);
        assert_eq!(dixon_prime(42, 882), 127);
        let p = dixon_prime(12, 216);
        assert!(is_prime(p) && p % 12 == 1 && p * p > 864);
    }

    #[test]
    fn charpoly_of_small_matrix() {
        let f = Fp::new(7);
        // [[2,1],[0,3]] -> (x-2)(x-3) = x^2 - 5x + 6
        let cp = charpoly(f, &[vec![2, 1], vec![0, 3]]);
        assert_eq!(cp, vec![6, 2, 1]);
        let cp = charpoly(f, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        // x^3 - 1
        assert_eq!(cp, vec![6, 0, 0, 1]);
    }

    #[test]
    fn nullspace_dimension() {
        let f = Fp::new(5);
        let ns = nullspace(f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(ns.len(), 1);
        assert_eq!(f.add(ns[0][0], f.mul(2, ns[0][1])), 0);
    }
}
