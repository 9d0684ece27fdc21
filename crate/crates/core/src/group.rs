//! Permutation groups: construction, membership, and structural subgroups.
//!
//! Groups are interned by element set once they are small enough to
//! enumerate, so every derived datum (classes, tables, chief series) is
//! computed once per subgroup no matter which route produced the handle.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::chain::StabChain;
use crate::chartab::CharacterTable;
use crate::classes::ClassData;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::primes::{gcd, prime_divisors, PrimeSet};

static ORDER_CAP: AtomicU64 = AtomicU64::new(100_000);

/// Groups larger than this are never enumerated element by element.
pub fn order_cap() -> u64 {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: u64) {
    ORDER_CAP.store(cap, Ordering::Relaxed);
}

/// Sorted element list with a reverse index.
pub struct ElementIndex {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl ElementIndex {
    fn new(mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        ElementIndex { elements, index }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub(crate) struct GroupData {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    elements: OnceLock<Result<Arc<ElementIndex>>>,
    pub(crate) classes: OnceLock<Result<Arc<ClassData>>>,
    pub(crate) table: OnceLock<Result<Arc<CharacterTable>>>,
    chief: OnceLock<Result<Vec<PermGroup>>>,
    derived: OnceLock<PermGroup>,
    /// pi-special row indices, keyed by the prime set (restricted to the order's primes).
    pub(crate) special_rows: Mutex<HashMap<PrimeSet, Arc<Vec<usize>>>>,
    /// B_pi row indices, same keying.
    pub(crate) bpi_rows: Mutex<HashMap<PrimeSet, Arc<Vec<usize>>>>,
}

/// Cheaply clonable handle to an immutable permutation group.
#[derive(Clone)]
pub struct PermGroup(Arc<GroupData>);

type RegistryKey = (usize, u64, u64);

fn registry() -> &'static Mutex<HashMap<RegistryKey, Vec<PermGroup>>> {
    static REG: OnceLock<Mutex<HashMap<RegistryKey, Vec<PermGroup>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl PermGroup {
    fn from_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        PermGroup(Arc::new(GroupData {
            degree,
            generators,
            chain,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
            table: OnceLock::new(),
            chief: OnceLock::new(),
            derived: OnceLock::new(),
            special_rows: Mutex::new(HashMap::new()),
            bpi_rows: Mutex::new(HashMap::new()),
        }))
    }

    /// Validates the generators, builds a stabilizer chain, and interns the result.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Input(format!(
                    "generator {g} has degree {} but the group acts on {degree} points",
                    g.degree()
                )));
            }
        }
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabChain::new(degree, &gens);
        Ok(Self::from_chain(degree, gens, chain).intern())
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("trivial group")
    }

    /// Builds the subgroup generated by an element collection, picking a short
    /// generating set greedily.
    pub fn generated_by<'a, I>(degree: usize, elems: I) -> Self
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut chain = StabChain::new(degree, &[]);
        let mut gens = Vec::new();
        for e in elems {
            if chain.extend(e) {
                gens.push(e.clone());
            }
        }
        Self::from_chain(degree, gens, chain).intern()
    }

    fn intern(self) -> Self {
        let order = self.order();
        if order > order_cap() {
            return self;
        }
        let elems = match self.element_index() {
            Ok(e) => e,
            Err(_) => return self,
        };
        let mut h = DefaultHasher::new();
        for e in elems.elements() {
            e.hash(&mut h);
        }
        let key = (self.degree(), order, h.finish());
        let mut reg = registry().lock().expect("group registry poisoned");
        let bucket = reg.entry(key).or_default();
        for g in bucket.iter() {
            if g.element_index().map(|e| e.elements() == elems.elements()).unwrap_or(false) {
                return g.clone();
            }
        }
        bucket.push(self.clone());
        self
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.0.generators
    }

    pub fn order(&self) -> u64 {
        self.0.chain.order()
    }

    pub fn chain(&self) -> &StabChain {
        &self.0.chain
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree() {
            return Err(Error::Input(format!(
                "element of degree {} tested against a group of degree {}",
                g.degree(),
                self.degree()
            )));
        }
        Ok(self.0.chain.contains(g))
    }

    pub(crate) fn has(&self, g: &Permutation) -> bool {
        self.0.chain.contains(g)
    }

    pub fn ptr_eq(&self, other: &PermGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn data(&self) -> &GroupData {
        &self.0
    }

    pub fn check_cap(&self) -> Result<()> {
        let order = self.order();
        if order > order_cap() {
            return Err(Error::BoundExceeded { order, cap: order_cap() });
        }
        Ok(())
    }

    /// Sorted list of all elements (subject to the order cap).
    pub fn element_index(&self) -> Result<Arc<ElementIndex>> {
        self.0
            .elements
            .get_or_init(|| {
                self.check_cap()?;
                Ok(Arc::new(ElementIndex::new(self.0.chain.elements())))
            })
            .clone()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree() == g.degree() && self.generators().iter().all(|x| g.has(x))
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g.generators()
                .iter()
                .all(|x| self.generators().iter().all(|h| self.has(&h.conjugate_by(x))))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a * b == b * a))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> Result<u64> {
        let classes = self.conjugacy_classes()?;
        Ok(classes.rep_orders().iter().fold(1, |acc, &o| num_integer::lcm(acc, o)))
    }

    pub fn conjugacy_classes(&self) -> Result<Arc<ClassData>> {
        self.0.classes.get_or_init(|| ClassData::enumerate(self).map(Arc::new)).clone()
    }

    /// Smallest normal subgroup of `self` containing `base` and `elems`.
    pub fn normal_closure(&self, base: &PermGroup, elems: &[Permutation]) -> PermGroup {
        let mut chain = base.chain().clone();
        let mut gens: Vec<Permutation> = base.generators().to_vec();
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        for e in elems {
            if chain.extend(e) {
                gens.push(e.clone());
                queue.push_back(e.clone());
            }
        }
        for g in base.generators() {
            queue.push_back(g.clone());
        }
        while let Some(h) = queue.pop_front() {
            for x in self.generators() {
                let c = h.conjugate_by(x);
                if chain.extend(&c) {
                    gens.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        PermGroup::from_chain(self.degree(), gens, chain).intern()
    }

    /// Normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        self.0
            .derived
            .get_or_init(|| {
                let gens = self.generators();
                let mut comms = Vec::new();
                for (i, a) in gens.iter().enumerate() {
                    for b in &gens[i + 1..] {
                        let c = a.commutator(b);
                        if !c.is_identity() {
                            comms.push(c);
                        }
                    }
                }
                self.normal_closure(&PermGroup::trivial(self.degree()), &comms)
            })
            .clone()
    }

    pub fn is_solvable(&self) -> bool {
        let mut g = self.clone();
        loop {
            if g.is_trivial() {
                return true;
            }
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return false;
            }
            g = d;
        }
    }

    /// Subgroup of elements satisfying a predicate (the predicate must define a subgroup).
    pub fn filter_subgroup<F>(&self, pred: F) -> Result<PermGroup>
    where
        F: Fn(&Permutation) -> bool + Sync + Send,
    {
        let elems = self.element_index()?;
        let kept: Vec<&Permutation> = crate::par::filter(elems.elements(), |g| pred(g));
        Ok(PermGroup::generated_by(self.degree(), kept))
    }

    /// `N_G(H)`.
    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup(format!("order {} in order {}", h.order(), self.order())));
        }
        if h.is_normal_in(self) {
            return Ok(self.clone());
        }
        let hgens = h.generators().to_vec();
        self.filter_subgroup(|g| hgens.iter().all(|x| h.has(&x.conjugate_by(g))))
    }

    /// `A ∩ B` for subgroups of `self`.
    pub fn intersection(&self, a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
        for (name, s) in [("A", a), ("B", b)] {
            if !s.is_subgroup_of(self) {
                return Err(Error::NotSubgroup(format!("{name} is not contained in the ambient group")));
            }
        }
        let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
        small.filter_subgroup(|g| big.has(g))
    }

    /// `C_G(x)`.
    pub fn centralizer_of(&self, x: &Permutation) -> Result<PermGroup> {
        self.filter_subgroup(|g| g * x == x * g)
    }

    /// All normal subgroups, ascending by order (subject to the order cap).
    pub fn normal_subgroups(&self) -> Result<Vec<PermGroup>> {
        let classes = self.conjugacy_classes()?;
        let trivial = PermGroup::trivial(self.degree());
        let closures: Vec<PermGroup> = classes
            .representatives()
            .iter()
            .skip(1)
            .map(|r| self.normal_closure(&trivial, std::slice::from_ref(r)))
            .collect();
        let mut found: Vec<PermGroup> = vec![trivial];
        let mut frontier = found.clone();
        while let Some(n) = frontier.pop() {
            for c in &closures {
                if c.is_subgroup_of(&n) {
                    continue;
                }
                let joined = self.normal_closure(&n, c.generators());
                if !found.iter().any(|f| f.ptr_eq(&joined) || *f == joined) {
                    found.push(joined.clone());
                    frontier.push(joined);
                }
            }
        }
        found.sort_by_key(|g| g.order());
        Ok(found)
    }

    /// Minimal normal subgroups of `self`.
    pub fn minimal_normal_subgroups(&self) -> Result<Vec<PermGroup>> {
        let normals = self.normal_subgroups()?;
        Ok(normals
            .iter()
            .filter(|n| !n.is_trivial())
            .filter(|n| {
                !normals
                    .iter()
                    .any(|m| !m.is_trivial() && m.order() < n.order() && m.is_subgroup_of(n))
            })
            .cloned()
            .collect())
    }

    /// Chief series `1 = G_0 < G_1 < ... < G_k = G`, refining the derived series.
    pub fn chief_series(&self) -> Result<Vec<PermGroup>> {
        self.0.chief.get_or_init(|| self.compute_chief_series()).clone()
    }

    fn compute_chief_series(&self) -> Result<Vec<PermGroup>> {
        self.check_cap()?;
        let classes = self.conjugacy_classes()?;
        let mut derived = vec![self.clone()];
        loop {
            let last = derived.last().unwrap().clone();
            let d = last.derived_subgroup();
            if d.order() == last.order() {
                break;
            }
            derived.push(d);
        }
        // walk the derived series bottom-up, inserting minimal normal steps
        let mut series = vec![PermGroup::trivial(self.degree())];
        for target in derived.iter().rev() {
            loop {
                let current = series.last().unwrap().clone();
                if current.order() == target.order() {
                    break;
                }
                let mut best: Option<PermGroup> = None;
                for r in classes.representatives() {
                    if !target.has(r) || current.has(r) {
                        continue;
                    }
                    let cand = self.normal_closure(&current, std::slice::from_ref(r));
                    if best.as_ref().map_or(true, |b| cand.order() < b.order()) {
                        best = Some(cand);
                    }
                }
                series.push(best.ok_or_else(|| Error::Invariant("chief series stalled".into()))?);
            }
        }
        Ok(series)
    }

    /// True iff every chief factor is a pi-group or a pi'-group.
    pub fn is_pi_separable(&self, pi: &PrimeSet) -> Result<bool> {
        let series = self.chief_series()?;
        Ok(series.windows(2).all(|w| {
            let idx = w[1].order() / w[0].order();
            pi.is_pi_number(idx) || pi.is_pi_prime_number(idx)
        }))
    }

    /// Largest normal pi-subgroup.
    pub fn pi_core(&self, pi: &PrimeSet) -> Result<PermGroup> {
        let classes = self.conjugacy_classes()?;
        let mut core = PermGroup::trivial(self.degree());
        loop {
            let mut grew = false;
            for (r, &o) in classes.representatives().iter().zip(classes.rep_orders()) {
                if !pi.is_pi_number(o) || core.has(r) {
                    continue;
                }
                let cand = self.normal_closure(&core, std::slice::from_ref(r));
                if pi.is_pi_number(cand.order()) {
                    core = cand;
                    grew = true;
                }
            }
            if !grew {
                return Ok(core);
            }
        }
    }

    /// A maximal pi-subgroup containing `start`, grown one element at a time.
    fn maximal_pi_subgroup(&self, pi: &PrimeSet, start: PermGroup) -> Result<PermGroup> {
        let elems = self.element_index()?;
        let target = pi.part(self.order());
        let mut h = start;
        let mut chain = h.chain().clone();
        let mut gens = h.generators().to_vec();
        'grow: while chain.order() < target {
            for x in elems.elements() {
                if !pi.is_pi_number(x.order()) || chain.contains(x) {
                    continue;
                }
                let mut trial = chain.clone();
                trial.extend(x);
                if pi.is_pi_number(trial.order()) {
                    chain = trial;
                    gens.push(x.clone());
                    continue 'grow;
                }
            }
            break;
        }
        h = PermGroup::from_chain(self.degree(), gens, chain).intern();
        Ok(h)
    }

    /// A Sylow p-subgroup (maximal p-subgroups are Sylow).
    pub fn sylow_subgroup(&self, p: u64) -> Result<PermGroup> {
        let pi = PrimeSet::new([p])?;
        let s = self.maximal_pi_subgroup(&pi, PermGroup::trivial(self.degree()))?;
        if s.order() != pi.part(self.order()) {
            return Err(Error::Invariant(format!("Sylow {p}-search produced order {}", s.order())));
        }
        Ok(s)
    }

    /// A Hall pi-subgroup. In a pi-separable group every maximal pi-subgroup
    /// is Hall, so a greedy growth from a Sylow subgroup suffices; the order is
    /// verified before returning.
    pub fn hall_subgroup(&self, pi: &PrimeSet) -> Result<PermGroup> {
        let target = pi.part(self.order());
        if target == self.order() {
            return Ok(self.clone());
        }
        if target == 1 {
            return Ok(PermGroup::trivial(self.degree()));
        }
        if !self.is_pi_separable(pi)? {
            return Err(Error::NotSeparable(pi.to_string()));
        }
        let present: Vec<u64> = pi.restrict_to(self.order()).iter().collect();
        let seed = self.sylow_subgroup(present[0])?;
        let h = self.maximal_pi_subgroup(pi, seed)?;
        if h.order() != target || gcd(h.order(), self.order() / h.order()) != 1 {
            return Err(Error::Invariant(format!(
                "Hall {pi}-search ended at order {} (expected {target})",
                h.order()
            )));
        }
        Ok(h)
    }

    /// True iff some Sylow p-subgroup is normal and abelian (trivially true when p does not divide |G|).
    pub fn has_normal_abelian_sylow(&self, p: u64) -> Result<bool> {
        if self.order() % p != 0 {
            return Ok(true);
        }
        let s = self.sylow_subgroup(p)?;
        Ok(s.is_normal_in(self) && s.is_abelian())
    }

    /// Orders of elements of the group, as a set of prime divisors.
    pub fn prime_divisors(&self) -> Vec<u64> {
        prime_divisors(self.order())
    }

    /// Action on the right cosets of a normal subgroup.
    pub fn quotient(&self, k: &PermGroup) -> Result<Quotient> {
        if !k.is_normal_in(self) {
            return Err(Error::NotNormal(format!("order {} in order {}", k.order(), self.order())));
        }
        let elems = self.element_index()?;
        let mut coset_of = vec![u32::MAX; elems.len()];
        let mut reps: Vec<Permutation> = Vec::new();
        let kelems = k.element_index()?;
        for (i, g) in elems.elements().iter().enumerate() {
            if coset_of[i] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            for x in kelems.elements() {
                let j = elems.index_of(&x.compose(g)).expect("coset element outside group");
                coset_of[j] = c;
            }
            reps.push(g.clone());
        }
        let q = Quotient { group: None, reps, coset_of, elements: elems };
        let gens: Vec<Permutation> = self.generators().iter().map(|g| q.project_raw(g)).collect();
        let group = PermGroup::from_generators(q.reps.len(), gens)?;
        if group.order() * k.order() != self.order() {
            return Err(Error::Invariant("coset action has the wrong order".into()));
        }
        Ok(Quotient { group: Some(group), ..q })
    }
}

/// `G/K` acting on right cosets of `K`, with the projection from `G`.
pub struct Quotient {
    group: Option<PermGroup>,
    reps: Vec<Permutation>,
    coset_of: Vec<u32>,
    elements: Arc<ElementIndex>,
}

impl Quotient {
    pub fn group(&self) -> &PermGroup {
        self.group.as_ref().expect("quotient group")
    }

    fn coset(&self, g: &Permutation) -> usize {
        self.coset_of[self.elements.index_of(g).expect("element outside group")] as usize
    }

    fn project_raw(&self, g: &Permutation) -> Permutation {
        let images = self.reps.iter().map(|r| self.coset(&r.compose(g)) as u32).collect();
        Permutation::from_images_unchecked(images)
    }

    /// Image of an element of `G` in the coset action.
    pub fn project(&self, g: &Permutation) -> Permutation {
        self.project_raw(g)
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other)
            || (self.degree() == other.degree()
                && self.order() == other.order()
                && self.is_subgroup_of(other))
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens [", self.degree(), self.order())?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// Every element of `g` is either a pi-element or a pi'-element.
pub fn all_elements_pi_or_pi_prime(g: &PermGroup, pi: &PrimeSet) -> Result<bool> {
    let classes = g.conjugacy_classes()?;
    Ok(classes
        .rep_orders()
        .iter()
        .all(|&o| pi.is_pi_number(o) || pi.is_pi_prime_number(o)))
}

/// Distinct subgroups `W` with `h <= W <= g`, breadth-first, ignoring those of index above `max_index`.
/// The boolean reports whether an overgroup was pruned by the index bound.
pub fn overgroups_within_index(
    g: &PermGroup,
    h: &PermGroup,
    max_index: u64,
) -> Result<(Vec<PermGroup>, bool)> {
    let elems = g.element_index()?;
    let mut seen: HashSet<*const GroupData> = HashSet::new();
    let mut all = vec![h.clone()];
    seen.insert(Arc::as_ptr(&h.0));
    let mut queue = VecDeque::from([h.clone()]);
    let mut pruned = false;
    while let Some(w) = queue.pop_front() {
        let welems = w.element_index()?;
        let mut covered = vec![false; elems.len()];
        for (i, x) in elems.elements().iter().enumerate() {
            if covered[i] || w.has(x) {
                continue;
            }
            // <W, x> only depends on the coset Wx
            for y in welems.elements() {
                covered[elems.index_of(&y.compose(x)).expect("coset outside group")] = true;
            }
            let mut gens = w.generators().to_vec();
            gens.push(x.clone());
            let bigger = PermGroup::generated_by(g.degree(), gens.iter());
            if seen.insert(Arc::as_ptr(&bigger.0)) {
                all.push(bigger.clone());
                queue.push_back(bigger);
            }
        }
    }
    all.retain(|w| {
        let keep = g.order() / w.order() <= max_index;
        pruned |= !keep;
        keep
    });
    Ok((all, pruned))
}
