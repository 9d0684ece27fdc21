//! Conjugacy classes with canonical ordering and power maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{ElementIndex, PermGroup};
use crate::perm::Permutation;
use crate::primes::prime_divisors;

/// How an arbitrary element is mapped to its class.
pub(crate) enum Locator {
    /// Every element listed, with its class.
    Enumerated { elements: Arc<ElementIndex>, class_of: Vec<u32> },
    /// Classes of `A x B` on the disjoint union of the two point sets.
    Product { left: Arc<ClassData>, right: Arc<ClassData>, left_degree: usize },
    /// Classes of `A wr C2` on two copies of the base points.
    Wreath { base: Arc<ClassData>, base_degree: usize },
}

pub struct ClassData {
    group_order: u64,
    reps: Vec<Permutation>,
    sizes: Vec<u64>,
    rep_orders: Vec<u64>,
    /// `powers[c][l]` is the class of `rep_c^l` for `0 <= l < order(rep_c)`.
    powers: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    pub(crate) locator: Locator,
}

impl ClassData {
    /// Conjugation orbits of every element, in canonical order:
    /// ascending element order, then class size, then smallest member.
    pub(crate) fn enumerate(g: &PermGroup) -> Result<Self> {
        let elems = g.element_index()?;
        let n = elems.len();
        let mut raw_class = vec![u32::MAX; n];
        let mut raw: Vec<(u64, u64, usize)> = Vec::new(); // (order, size, rep index)
        for i in 0..n {
            if raw_class[i] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            raw_class[i] = id;
            let mut stack = vec![elems.elements()[i].clone()];
            let mut size = 1u64;
            while let Some(x) = stack.pop() {
                for s in g.generators() {
                    let y = x.conjugate_by(s);
                    let j = elems.index_of(&y).expect("conjugate outside group");
                    if raw_class[j] == u32::MAX {
                        raw_class[j] = id;
                        size += 1;
                        stack.push(y);
                    }
                }
            }
            raw.push((elems.elements()[i].order(), size, i));
        }
        // elements are sorted, so the first member met is the smallest
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&c| raw[c]);
        let mut rank = vec![0u32; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new as u32;
        }
        let class_of: Vec<u32> = raw_class.iter().map(|&c| rank[c as usize]).collect();
        let reps = order.iter().map(|&c| elems.elements()[raw[c].2].clone()).collect();
        let sizes = order.iter().map(|&c| raw[c].1).collect();
        Self::assemble(
            g.order(),
            reps,
            sizes,
            Locator::Enumerated { elements: elems, class_of },
        )
    }

    pub(crate) fn assemble(
        group_order: u64,
        reps: Vec<Permutation>,
        sizes: Vec<u64>,
        locator: Locator,
    ) -> Result<Self> {
        let mut cd = ClassData {
            group_order,
            rep_orders: reps.iter().map(|r| r.order()).collect(),
            reps,
            sizes,
            powers: Vec::new(),
            inverse: Vec::new(),
            locator,
        };
        if cd.sizes.iter().sum::<u64>() != group_order {
            return Err(Error::Invariant("class sizes do not sum to the group order".into()));
        }
        let mut powers = Vec::with_capacity(cd.reps.len());
        for r in &cd.reps {
            let mut row = Vec::new();
            let mut x = Permutation::identity(r.degree());
            for _ in 0..r.order() {
                row.push(cd.class_of(&x)?);
                x = x.compose(r);
            }
            powers.push(row);
        }
        cd.inverse = powers
            .iter()
            .map(|row| if row.len() > 1 { row[row.len() - 1] } else { row[0] })
            .collect();
        cd.powers = powers;
        for (i, r) in cd.reps.iter().enumerate() {
            if cd.class_of(r)? != i {
                return Err(Error::Invariant(format!("representative {i} is not in its own class")));
            }
        }
        Ok(cd)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn rep_orders(&self) -> &[u64] {
        &self.rep_orders
    }

    pub fn centralizer_order(&self, c: usize) -> u64 {
        self.group_order / self.sizes[c]
    }

    /// Class of `g^-1` for `g` in class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse[c]
    }

    /// Class of `rep_c^l` for any integer `l`.
    pub fn power_class(&self, c: usize, l: i64) -> usize {
        let o = self.rep_orders[c] as i64;
        self.powers[c][l.rem_euclid(o) as usize]
    }

    /// The p-th power maps for every prime p dividing the exponent.
    pub fn prime_power_maps(&self) -> BTreeMap<u64, Vec<usize>> {
        let exp = self.rep_orders.iter().fold(1, |a, &o| num_integer::lcm(a, o));
        prime_divisors(exp)
            .into_iter()
            .map(|p| (p, (0..self.len()).map(|c| self.power_class(c, p as i64)).collect()))
            .collect()
    }

    pub fn exponent(&self) -> u64 {
        self.rep_orders.iter().fold(1, |a, &o| num_integer::lcm(a, o))
    }

    /// The class containing `g`.
    pub fn class_of(&self, g: &Permutation) -> Result<usize> {
        match &self.locator {
            Locator::Enumerated { elements, class_of } => elements
                .index_of(g)
                .map(|i| class_of[i] as usize)
                .ok_or_else(|| Error::Input(format!("{g} is not a group element"))),
            Locator::Product { left, right, left_degree } => {
                let n1 = *left_degree;
                if (0..n1).any(|i| g.image(i) >= n1) {
                    return Err(Error::Input(format!("{g} does not preserve the product blocks")));
                }
                let a = left.class_of(&g.restrict_block(0, n1))?;
                let b = right.class_of(&g.restrict_block(n1, g.degree() - n1))?;
                Ok(a * right.len() + b)
            }
            Locator::Wreath { base, base_degree } => {
                let n = *base_degree;
                let k = base.len();
                if g.degree() != 2 * n {
                    return Err(Error::Input("wrong degree for wreath element".into()));
                }
                if g.image(0) < n {
                    let a = base.class_of(&g.restrict_block(0, n))?;
                    let b = base.class_of(&g.restrict_block(n, n))?;
                    Ok(wreath_pair_index(k, a.min(b), a.max(b)))
                } else {
                    // g = (x, y) * swap: x(i) = g(i) - n, y(i) = g(i + n)
                    let x: Vec<u32> = (0..n).map(|i| (g.image(i) - n) as u32).collect();
                    let y: Vec<u32> = (0..n).map(|i| g.image(i + n) as u32).collect();
                    let x = Permutation::from_images(x)?;
                    let y = Permutation::from_images(y)?;
                    let c = base.class_of(&x.compose(&y))?;
                    Ok(k * (k + 1) / 2 + c)
                }
            }
        }
    }

    /// All members of class `c` (only for enumerated classes).
    pub fn members(&self, c: usize) -> Result<Vec<Permutation>> {
        match &self.locator {
            Locator::Enumerated { elements, class_of } => Ok(elements
                .elements()
                .iter()
                .zip(class_of)
                .filter(|(_, &k)| k as usize == c)
                .map(|(e, _)| e.clone())
                .collect()),
            _ => Err(Error::Input("class members are only listed for enumerated groups".into())),
        }
    }

    /// Number of classes whose elements are pi-elements.
    pub fn count_pi_classes(&self, pi: &crate::primes::PrimeSet) -> usize {
        self.rep_orders.iter().filter(|&&o| pi.is_pi_number(o)).count()
    }
}

/// Index of the base-group class pair `{a, b}` (a <= b) in a wreath class list.
pub(crate) fn wreath_pair_index(k: usize, a: usize, b: usize) -> usize {
    debug_assert!(a <= b && b < k);
    // row i holds the k - i pairs {i, i..k}
    a * k - a * a.saturating_sub(1) / 2 + (b - a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indices_are_dense() {
        let k = 5;
        let mut seen = Vec::new();
        for a in 0..k {
            for b in a..k {
                seen.push(wreath_pair_index(k, a, b));
            }
        }
        assert_eq!(seen, (0..k * (k + 1) / 2).collect::<Vec<_>>());
    }
}
