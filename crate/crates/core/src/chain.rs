//! Deterministic Schreier–Sims stabilizer chains.

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal }
    }

    /// Extends orbit and transversal after generators were added.
    fn grow_orbit(&mut self) {
        let mut i = 0;
        // rescan everything: new generators can reach old points' neighbours
        while i < self.orbit.len() {
            let p = self.orbit[i];
            let up = self.transversal[p].clone().expect("orbit point without transversal");
            for s in &self.gens {
                let q = s.image(p);
                if self.transversal[q].is_none() {
                    self.transversal[q] = Some(up.compose(s));
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set, with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain { degree, levels: Vec::new() };
        for g in gens {
            chain.extend(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `g` to the group if it is not already a member. Returns whether the group grew.
    pub fn extend(&mut self, g: &Permutation) -> bool {
        let (residue, level) = self.sift_from(0, g);
        if residue.is_identity() {
            return false;
        }
        self.add_generator(0, level, residue);
        true
    }

    /// `g` fixes the base points of levels `from..to`; it joins the generators of all those levels.
    fn add_generator(&mut self, from: usize, to: usize, g: Permutation) {
        if to == self.levels.len() {
            let base = g.first_moved_point().expect("identity passed as strong generator");
            self.levels.push(Level::new(self.degree, base));
        }
        for j in from..=to {
            self.levels[j].gens.push(g.clone());
            self.levels[j].grow_orbit();
        }
        for j in (from..=to).rev() {
            self.close_level(j);
        }
    }

    /// Sifts every Schreier generator of level `j` through the levels below.
    fn close_level(&mut self, j: usize) {
        let orbit = self.levels[j].orbit.clone();
        let gens = self.levels[j].gens.clone();
        for &p in &orbit {
            let up = self.levels[j].transversal[p].clone().unwrap();
            for s in &gens {
                let q = s.image(p);
                let uq = self.levels[j].transversal[q].as_ref().unwrap();
                let schreier = up.compose(s).compose(&uq.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, drop) = self.sift_from(j + 1, &schreier);
                if !residue.is_identity() {
                    self.add_generator(j + 1, drop, residue);
                }
            }
        }
    }

    /// Sifts starting at `start`; returns the residue and the level where sifting stopped.
    fn sift_from(&self, start: usize, g: &Permutation) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, lvl) in self.levels.iter().enumerate().skip(start) {
            let p = h.image(lvl.base);
            match &lvl.transversal[p] {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, i),
            }
        }
        let n = self.levels.len();
        (h, n)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift_from(0, g).0.is_identity()
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit.len() as u64).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// All group elements, unsorted, each exactly once.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for lvl in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * lvl.orbit.len());
            for h in &elems {
                for &p in &lvl.orbit {
                    next.push(h.compose(lvl.transversal[p].as_ref().unwrap()));
                }
            }
            elems = next;
        }
        elems
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cycles: &[&[u32]], n: usize) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=7usize {
            let cyc: Vec<u32> = (1..=n as u32).collect();
            let c = StabChain::new(n, &[p(&[&[1, 2]], n), p(&[&cyc], n)]);
            assert_eq!(c.order(), (1..=n as u64).product::<u64>());
            assert_eq!(c.orbit_lengths().iter().map(|&l| l as u64).product::<u64>(), c.order());
        }
    }

    #[test]
    fn membership() {
        let a4 = StabChain::new(4, &[p(&[&[1, 2, 3]], 4), p(&[&[2, 3, 4]], 4)]);
        assert_eq!(a4.order(), 12);
        assert!(!a4.contains(&p(&[&[1, 2]], 4)));
        assert!(a4.contains(&p(&[&[1, 2], &[3, 4]], 4)));
        let elems = a4.elements();
        assert_eq!(elems.len(), 12);
        assert!(elems.iter().all(|e| a4.contains(e)));
    }
}
