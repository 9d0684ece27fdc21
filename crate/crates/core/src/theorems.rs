//! Executable equivalence checks and the corpus runner.
//!
//! Every check evaluates its two sides independently. Checks that state a
//! single fact rather than an equivalence (the counting corollary, the
//! four-point corollary, the vanishing lemma, the maximal nucleus) report the
//! computed fact as the left side and the theorem's claim (always true) as the
//! right side, so `equivalence_holds` still reads `lhs <=> rhs`.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::chartab::{character_table, linear_characters, CharacterTable};
use crate::corpus::GroupSpec;
use crate::error::{Error, Result};
use crate::group::{all_elements_pi_or_pi_prime, overgroups_within_index, PermGroup};
use crate::pichar::{bpi_rows, bpi_set, pi_part, pi_special_rows};
use crate::primes::PrimeSet;

pub const DEFAULT_NUCLEUS_INDEX_BOUND: u64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    ItoMichler,
    DegreePrimeCorollary,
    ThompsonEquiv,
    ThompsonA,
    ThompsonB,
    NwCorollary,
    FourPointCorollary,
    NormalPiComplement,
    WolfCount,
    ExtensionLemma,
    LemmaVanish,
    BpiUnionSize,
    MaximalNucleus,
}

impl CheckName {
    pub const ALL: [CheckName; 13] = [
        CheckName::ItoMichler,
        CheckName::DegreePrimeCorollary,
        CheckName::ThompsonEquiv,
        CheckName::ThompsonA,
        CheckName::ThompsonB,
        CheckName::NwCorollary,
        CheckName::FourPointCorollary,
        CheckName::NormalPiComplement,
        CheckName::WolfCount,
        CheckName::ExtensionLemma,
        CheckName::LemmaVanish,
        CheckName::BpiUnionSize,
        CheckName::MaximalNucleus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::ItoMichler => "ito-michler",
            CheckName::DegreePrimeCorollary => "degree-prime-corollary",
            CheckName::ThompsonEquiv => "thompson-equiv",
            CheckName::ThompsonA => "thompson-a",
            CheckName::ThompsonB => "thompson-b",
            CheckName::NwCorollary => "nw-corollary",
            CheckName::FourPointCorollary => "four-point-corollary",
            CheckName::NormalPiComplement => "normal-pi-complement",
            CheckName::WolfCount => "wolf-count",
            CheckName::ExtensionLemma => "extension-lemma",
            CheckName::LemmaVanish => "lemma-vanish",
            CheckName::BpiUnionSize => "bpi-union-size",
            CheckName::MaximalNucleus => "maximal-nucleus",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown check '{s}'")))
    }

    /// Whether the check takes a prime `p` in addition to the prime set.
    pub fn needs_prime(self) -> bool {
        matches!(self, CheckName::ItoMichler | CheckName::DegreePrimeCorollary)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub statement: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Side {
    fn new(statement: &str, holds: bool, witness: Option<String>) -> Self {
        Side { statement: statement.to_string(), holds, witness }
    }

    fn claim() -> Self {
        Side::new("asserted by the theorem", true, None)
    }
}

/// One sub-equivalence or one per-character verdict inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub label: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: CheckName,
    pub group: String,
    pub pi: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub lhs: Side,
    pub rhs: Side,
    pub equivalence_holds: bool,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Part>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    fn finish(check: CheckName, ctx: &Context, p: Option<u64>, lhs: Side, rhs: Side, parts: Vec<Part>) -> Self {
        let equivalence_holds = lhs.holds == rhs.holds;
        let status = if !equivalence_holds {
            Status::Fail
        } else if parts.iter().any(|p| p.status == Status::Skipped) && parts.iter().all(|p| p.status != Status::Fail) {
            Status::Skipped
        } else {
            Status::Pass
        };
        VerificationReport {
            check,
            group: ctx.name.clone(),
            pi: ctx.pi.iter().collect(),
            p,
            lhs,
            rhs,
            equivalence_holds,
            status,
            parts,
            elapsed_ms: None,
        }
    }

    /// Report for a check that aborted with an internal error.
    pub fn aborted(check: CheckName, group: &str, pi: &PrimeSet, p: Option<u64>, err: &Error) -> Self {
        let side = Side::new("not evaluated", false, Some(err.to_string()));
        VerificationReport {
            check,
            group: group.to_string(),
            pi: pi.iter().collect(),
            p,
            lhs: side.clone(),
            rhs: side,
            equivalence_holds: false,
            status: Status::Error,
            parts: Vec::new(),
            elapsed_ms: None,
        }
    }

    /// True for reports that must surface as a nonzero exit status.
    pub fn is_failure(&self) -> bool {
        !self.equivalence_holds || self.status == Status::Error || self.status == Status::Fail
    }
}

/// Everything the checks need for one group and prime set.
pub struct Context {
    pub name: String,
    pub group: PermGroup,
    pub pi: PrimeSet,
    pub pi_prime: PrimeSet,
    pub table: Arc<CharacterTable>,
    pub hall: PermGroup,
    pub normalizer: PermGroup,
    pub derived: PermGroup,
    pub hall_derived: PermGroup,
    b_pi: BTreeSet<usize>,
    b_pi_prime: BTreeSet<usize>,
    x_pi_prime: BTreeSet<usize>,
    irr_pi_prime: BTreeSet<usize>,
    lin: BTreeSet<usize>,
}

fn set_of(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

impl Context {
    pub fn new(name: &str, g: &PermGroup, pi: &PrimeSet) -> Result<Self> {
        if !g.is_pi_separable(pi)? {
            return Err(Error::NotSeparable(format!("{name} is not {pi}-separable")));
        }
        let pi_prime = pi.complement_in(g.order());
        let table = character_table(g)?;
        let hall = g.hall_subgroup(pi)?;
        let normalizer = g.normalizer(&hall)?;
        let irr_pi_prime = table
            .degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| pi_part(d, pi) == 1)
            .map(|(i, _)| i)
            .collect();
        let lin = linear_characters(g)?.iter().filter_map(|c| c.index()).collect();
        Ok(Context {
            name: name.to_string(),
            group: g.clone(),
            pi: pi.clone(),
            b_pi: set_of(&bpi_rows(g, pi)?),
            b_pi_prime: set_of(&bpi_rows(g, &pi_prime)?),
            x_pi_prime: set_of(&pi_special_rows(&table, &pi_prime)?),
            pi_prime,
            derived: g.derived_subgroup(),
            hall_derived: hall.derived_subgroup(),
            table,
            hall,
            normalizer,
            irr_pi_prime,
            lin,
        })
    }

    fn witness_row(&self, i: usize) -> String {
        format!("irr[{i}] of degree {}", self.table.degrees()[i])
    }

    /// First member of `set` that is not linear, as a witness.
    fn nonlinear(&self, set: &BTreeSet<usize>) -> Option<String> {
        set.iter().find(|i| !self.lin.contains(i)).map(|&i| self.witness_row(i))
    }

    fn b_union(&self) -> BTreeSet<usize> {
        self.b_pi.union(&self.b_pi_prime).copied().collect()
    }

    fn inter(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
        a.intersection(b).copied().collect()
    }

    fn only_trivial(s: &BTreeSet<usize>) -> bool {
        s.len() == 1 && s.contains(&0)
    }

    fn describe(set: &BTreeSet<usize>, label: &str) -> String {
        format!("{label} has {} member(s)", set.len())
    }

    pub fn run(&self, check: CheckName, p: Option<u64>, nucleus_bound: u64) -> Result<VerificationReport> {
        match check {
            CheckName::ItoMichler => self.ito_michler(p.ok_or_else(|| Error::Input("ito-michler needs --p".into()))?),
            CheckName::DegreePrimeCorollary => {
                self.degree_prime_corollary(p.ok_or_else(|| Error::Input("degree-prime-corollary needs --p".into()))?)
            }
            CheckName::ThompsonEquiv => self.thompson_equiv(),
            CheckName::ThompsonA => self.thompson_a(),
            CheckName::ThompsonB => self.thompson_b(),
            CheckName::NwCorollary => self.nw_corollary(),
            CheckName::FourPointCorollary => self.four_point_corollary(),
            CheckName::NormalPiComplement => self.normal_pi_complement(),
            CheckName::WolfCount => self.wolf_count(),
            CheckName::ExtensionLemma => self.extension_lemma(),
            CheckName::LemmaVanish => self.lemma_vanish(),
            CheckName::BpiUnionSize => self.bpi_union_size(),
            CheckName::MaximalNucleus => self.maximal_nucleus(nucleus_bound),
        }
    }

    fn p_divides_some(&self, rows: &BTreeSet<usize>, p: u64) -> Option<String> {
        rows.iter().find(|&&i| self.table.degrees()[i] % p == 0).map(|&i| self.witness_row(i))
    }

    pub fn ito_michler(&self, p: u64) -> Result<VerificationReport> {
        let g = &self.group;
        let (lhs_holds, lhs_witness) = if g.order() % p != 0 {
            (true, None)
        } else {
            let s = g.sylow_subgroup(p)?;
            let normal = s.is_normal_in(g);
            let abelian = s.is_abelian();
            (
                normal && abelian,
                Some(format!("Sylow {p}-subgroup of order {}: normal {normal}, abelian {abelian}", s.order())),
            )
        };
        let hit = self.p_divides_some(&self.b_union(), p);
        let lhs = Side::new("G has a normal abelian Sylow p-subgroup", lhs_holds, lhs_witness);
        let rhs = Side::new("p divides no degree in B_pi ∪ B_pi'", hit.is_none(), hit);
        Ok(VerificationReport::finish(CheckName::ItoMichler, self, Some(p), lhs, rhs, Vec::new()))
    }

    pub fn degree_prime_corollary(&self, p: u64) -> Result<VerificationReport> {
        let all: BTreeSet<usize> = (0..self.table.num_classes()).collect();
        let a = self.p_divides_some(&all, p);
        let b = self.p_divides_some(&self.b_union(), p);
        let lhs = Side::new("p divides some degree in Irr(G)", a.is_some(), a);
        let rhs = Side::new("p divides some degree in B_pi ∪ B_pi'", b.is_some(), b);
        Ok(VerificationReport::finish(CheckName::DegreePrimeCorollary, self, Some(p), lhs, rhs, Vec::new()))
    }

    pub fn thompson_equiv(&self) -> Result<VerificationReport> {
        let eq = self.irr_pi_prime == self.lin;
        let lhs_w = if eq { None } else { self.nonlinear(&self.irr_pi_prime) };
        let cut = Self::inter(&self.irr_pi_prime, &self.b_union());
        let rhs_w = self.nonlinear(&cut);
        let lhs = Side::new("Irr_pi'(G) = Lin(G)", eq, lhs_w);
        let rhs = Side::new("Irr_pi'(G) ∩ (B_pi ∪ B_pi') ⊆ Lin(G)", rhs_w.is_none(), rhs_w);
        Ok(VerificationReport::finish(CheckName::ThompsonEquiv, self, None, lhs, rhs, Vec::new()))
    }

    fn subgroup_witness(label_a: &str, a: &PermGroup, label_b: &str, b: &PermGroup) -> String {
        format!("{label_a} has order {}, {label_b} has order {}", a.order(), b.order())
    }

    pub fn thompson_a(&self) -> Result<VerificationReport> {
        let cut = Self::inter(&self.irr_pi_prime, &self.b_pi);
        let w = self.nonlinear(&cut);
        let gh = self.group.intersection(&self.derived, &self.hall)?;
        let eq = gh == self.hall_derived;
        let lhs = Side::new("Irr_pi'(G) ∩ B_pi(G) ⊆ Lin(G)", w.is_none(), w);
        let rhs = Side::new(
            "G' ∩ H = H'",
            eq,
            Some(Self::subgroup_witness("G' ∩ H", &gh, "H'", &self.hall_derived)),
        );
        Ok(VerificationReport::finish(CheckName::ThompsonA, self, None, lhs, rhs, Vec::new()))
    }

    pub fn thompson_b(&self) -> Result<VerificationReport> {
        let cut = Self::inter(&self.irr_pi_prime, &self.b_pi_prime);
        let w = self.nonlinear(&cut);
        let gn = self.group.intersection(&self.derived, &self.normalizer)?;
        let inside = gn.is_subgroup_of(&self.hall);
        let lhs = Side::new("Irr_pi'(G) ∩ B_pi'(G) ⊆ Lin(G)", w.is_none(), w);
        let rhs = Side::new("G' ∩ N_G(H) ≤ H", inside, Some(Self::subgroup_witness("G' ∩ N_G(H)", &gn, "H", &self.hall)));
        Ok(VerificationReport::finish(CheckName::ThompsonB, self, None, lhs, rhs, Vec::new()))
    }

    pub fn nw_corollary(&self) -> Result<VerificationReport> {
        let eq = self.irr_pi_prime == self.lin;
        let lhs_w = if eq { None } else { self.nonlinear(&self.irr_pi_prime) };
        let gn = self.group.intersection(&self.derived, &self.normalizer)?;
        let rhs_eq = gn == self.hall_derived;
        let lhs = Side::new("Irr_pi'(G) = Lin(G)", eq, lhs_w);
        let rhs = Side::new(
            "G' ∩ N_G(H) = H'",
            rhs_eq,
            Some(Self::subgroup_witness("G' ∩ N_G(H)", &gn, "H'", &self.hall_derived)),
        );
        Ok(VerificationReport::finish(CheckName::NwCorollary, self, None, lhs, rhs, Vec::new()))
    }

    pub fn four_point_corollary(&self) -> Result<VerificationReport> {
        let h = &self.hall;
        let perfect = self.hall_derived.order() == h.order();
        let self_normalizing = self.normalizer.order() == h.order();
        let only_trivial_irr = Self::only_trivial(&self.irr_pi_prime);
        let items = [
            (
                "(i)",
                only_trivial_irr,
                Self::only_trivial(&Self::inter(&self.irr_pi_prime, &self.b_union())),
                Self::describe(&self.irr_pi_prime, "Irr_pi'(G)"),
            ),
            (
                "(ii)",
                Self::only_trivial(&Self::inter(&self.irr_pi_prime, &self.b_pi)),
                perfect,
                format!("|H| = {}, |H'| = {}", h.order(), self.hall_derived.order()),
            ),
            (
                "(iii)",
                Self::only_trivial(&self.x_pi_prime),
                self_normalizing,
                format!("|X_pi'(G)| = {}, |N_G(H)| = {}, |H| = {}", self.x_pi_prime.len(), self.normalizer.order(), h.order()),
            ),
            (
                "(iv)",
                only_trivial_irr,
                perfect && self_normalizing,
                format!("H perfect {perfect}, self-normalizing {self_normalizing}"),
            ),
        ];
        let parts: Vec<Part> = items
            .iter()
            .map(|(label, l, r, detail)| Part {
                label: label.to_string(),
                status: if l == r { Status::Pass } else { Status::Fail },
                detail: format!("lhs {l}, rhs {r}; {detail}"),
            })
            .collect();
        let failed: Vec<&str> = parts.iter().filter(|p| p.status == Status::Fail).map(|p| p.label.as_str()).collect();
        let lhs = Side::new(
            "all four sub-equivalences hold",
            failed.is_empty(),
            (!failed.is_empty()).then(|| format!("failing parts {}", failed.join(" "))),
        );
        Ok(VerificationReport::finish(CheckName::FourPointCorollary, self, None, lhs, Side::claim(), parts))
    }

    pub fn normal_pi_complement(&self) -> Result<VerificationReport> {
        let x_pi = set_of(&pi_special_rows(&self.table, &self.pi)?);
        let eq = x_pi == self.b_pi;
        let w = self.b_pi.difference(&x_pi).next().map(|&i| self.witness_row(i));
        let core = self.group.pi_core(&self.pi_prime)?;
        let target = self.pi_prime.part(self.group.order());
        let lhs = Side::new("B_pi(G) = X_pi(G)", eq, w.map(|s| format!("{s} is in B_pi but not pi-special")));
        let rhs = Side::new(
            "G has a normal pi-complement",
            core.order() == target,
            Some(format!("O_pi'(G) has order {}, |G|_pi' = {target}", core.order())),
        );
        Ok(VerificationReport::finish(CheckName::NormalPiComplement, self, None, lhs, rhs, Vec::new()))
    }

    pub fn wolf_count(&self) -> Result<VerificationReport> {
        let n = &self.normalizer;
        let nt = character_table(n)?;
        let pi_prime_degree = |t: &CharacterTable, rows: &[usize]| {
            rows.iter().filter(|&&i| pi_part(t.degrees()[i], &self.pi) == 1).count()
        };
        let a = pi_prime_degree(&self.table, &bpi_rows(&self.group, &self.pi)?);
        let b = pi_prime_degree(&nt, &bpi_rows(n, &self.pi)?);
        let c = self.x_pi_prime.len();
        let d = pi_special_rows(&nt, &self.pi_prime)?.len();
        let q = n.quotient(&self.hall)?;
        let e = character_table(q.group())?.num_classes();
        let holds = a == b && c == d && d == e;
        let detail = format!(
            "B_pi pi'-degree counts G {a}, N {b}; |X_pi'(G)| = {c}, |X_pi'(N)| = {d}, |Irr(N/H)| = {e}"
        );
        let lhs = Side::new("counts agree", holds, Some(detail));
        Ok(VerificationReport::finish(CheckName::WolfCount, self, None, lhs, Side::claim(), Vec::new()))
    }

    pub fn extension_lemma(&self) -> Result<VerificationReport> {
        let cut = Self::inter(&self.irr_pi_prime, &self.b_pi);
        let w = self.nonlinear(&cut);
        let ht = character_table(&self.hall)?;
        let mut restricted = BTreeSet::new();
        for lam in linear_characters(&self.group)? {
            if let Some(i) = lam.restrict_to_table(&ht)?.index() {
                restricted.insert(i);
            }
        }
        let lin_h: BTreeSet<usize> = linear_characters(&self.hall)?.iter().filter_map(|c| c.index()).collect();
        let missing = lin_h.difference(&restricted).count();
        let lhs = Side::new("Irr_pi'(G) ∩ B_pi(G) ⊆ Lin(G)", w.is_none(), w);
        let rhs = Side::new(
            "every linear character of H extends to G",
            missing == 0,
            (missing > 0).then(|| format!("{missing} of {} linear characters of H do not extend", lin_h.len())),
        );
        Ok(VerificationReport::finish(CheckName::ExtensionLemma, self, None, lhs, rhs, Vec::new()))
    }

    pub fn lemma_vanish(&self) -> Result<VerificationReport> {
        let g = &self.group;
        let normals = g.normal_subgroups()?;
        let b = bpi_set(g, &self.pi_prime)?;
        let mut parts = Vec::new();
        for n in g.minimal_normal_subgroups()? {
            if !self.pi_prime.is_pi_number(n.order()) {
                continue;
            }
            for m in &normals {
                if m.order() == n.order() || !n.is_subgroup_of(m) {
                    continue;
                }
                let index = m.order() / n.order();
                if !self.pi.is_pi_number(index) || !m.derived_subgroup().is_subgroup_of(&n) {
                    continue;
                }
                if !m.pi_core(&self.pi)?.is_trivial() {
                    continue;
                }
                let found = b.iter().find(|c| c.degree() % index == 0);
                parts.push(Part {
                    label: format!("|N| = {}, |M| = {}", n.order(), m.order()),
                    status: if found.is_some() { Status::Pass } else { Status::Fail },
                    detail: match found {
                        Some(c) => format!("B_pi' member of degree {} divisible by {index}", c.degree()),
                        None => format!("no B_pi' degree divisible by {index}"),
                    },
                });
            }
        }
        let failed = parts.iter().filter(|p| p.status == Status::Fail).count();
        let lhs = Side::new(
            "for each qualifying (N, M), |M:N| divides some B_pi' degree",
            failed == 0,
            (failed > 0).then(|| format!("{failed} pair(s) without such a character")),
        );
        let mut r = VerificationReport::finish(CheckName::LemmaVanish, self, None, lhs, Side::claim(), parts);
        if r.parts.is_empty() && r.status == Status::Pass {
            r.status = Status::Skipped;
        }
        Ok(r)
    }

    pub fn bpi_union_size(&self) -> Result<VerificationReport> {
        let k = self.table.num_classes();
        let total = self.b_pi.len() + self.b_pi_prime.len();
        let lhs = Side::new(
            "|B_pi| + |B_pi'| - 1 = k(G)",
            total == k + 1,
            Some(format!("|B_pi| = {}, |B_pi'| = {}, k(G) = {k}", self.b_pi.len(), self.b_pi_prime.len())),
        );
        let mixed = self
            .table
            .classes()
            .rep_orders()
            .iter()
            .find(|&&o| !self.pi.is_pi_number(o) && !self.pi_prime.is_pi_number(o))
            .map(|o| format!("element of order {o}"));
        debug_assert_eq!(mixed.is_none(), all_elements_pi_or_pi_prime(&self.group, &self.pi).unwrap_or(false));
        let rhs = Side::new("every element is a pi-element or a pi'-element", mixed.is_none(), mixed);
        Ok(VerificationReport::finish(CheckName::BpiUnionSize, self, None, lhs, rhs, Vec::new()))
    }

    pub fn maximal_nucleus(&self, bound: u64) -> Result<VerificationReport> {
        let g = &self.group;
        let mut overgroups: Option<(Vec<PermGroup>, bool)> = None;
        let mut parts = Vec::new();
        for &i in &self.irr_pi_prime {
            let chi = self.table.irreducible(i);
            let mut found = self.nucleus_witness(&chi, g)?;
            let mut pruned = false;
            if found.is_none() {
                if overgroups.is_none() {
                    let (mut all, pr) = overgroups_within_index(g, &self.hall, bound)?;
                    all.sort_by_key(|w| std::cmp::Reverse(w.order()));
                    overgroups = Some((all, pr));
                }
                let (all, pr) = overgroups.as_ref().expect("computed above");
                pruned = *pr;
                for w in all {
                    if w.order() == g.order() {
                        continue;
                    }
                    if let Some(f) = self.nucleus_witness(&chi, w)? {
                        found = Some(f);
                        break;
                    }
                }
            }
            parts.push(Part {
                label: self.witness_row(i),
                status: match (&found, pruned) {
                    (Some(_), _) => Status::Pass,
                    (None, true) => Status::Skipped,
                    (None, false) => Status::Fail,
                },
                detail: match found {
                    Some(idx) => format!("W of index {idx}"),
                    None if pruned => format!("no W up to index {bound}; larger indices not searched"),
                    None => "no W above H".to_string(),
                },
            });
        }
        let failed = parts.iter().filter(|p| p.status == Status::Fail).count();
        let lhs = Side::new(
            "every character of pi'-degree is induced from a linear pi-special times pi'-special over H ≤ W",
            failed == 0,
            (failed > 0).then(|| format!("{failed} character(s) without such W")),
        );
        Ok(VerificationReport::finish(CheckName::MaximalNucleus, self, None, lhs, Side::claim(), parts))
    }

    /// Index of `w` when some linear pi-special alpha and pi'-special beta of `w` induce `(alpha beta)^G = chi`.
    fn nucleus_witness(&self, chi: &crate::chartab::Character, w: &PermGroup) -> Result<Option<u64>> {
        let index = self.group.order() / w.order();
        if chi.degree() % index != 0 {
            return Ok(None);
        }
        let wt = character_table(w)?;
        let alphas: Vec<usize> = pi_special_rows(&wt, &self.pi)?.iter().copied().filter(|&a| wt.degrees()[a] == 1).collect();
        let betas: Vec<usize> = pi_special_rows(&wt, &self.pi_prime)?
            .iter()
            .copied()
            .filter(|&b| wt.degrees()[b] * index == chi.degree())
            .collect();
        for &a in &alphas {
            for &b in &betas {
                let prod = wt.irreducible(a).tensor(&wt.irreducible(b))?;
                if prod.induce_to_table(&self.table)?.values() == chi.values() {
                    return Ok(Some(index));
                }
            }
        }
        Ok(None)
    }
}

/// Convenience wrappers evaluating a single check on an unnamed group.
pub fn check_ito_michler(g: &PermGroup, pi: &PrimeSet, p: u64) -> Result<VerificationReport> {
    Context::new("", g, pi)?.ito_michler(p)
}

pub fn check_degree_prime_corollary(g: &PermGroup, pi: &PrimeSet, p: u64) -> Result<VerificationReport> {
    Context::new("", g, pi)?.degree_prime_corollary(p)
}

pub fn check_thompson_equiv(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.thompson_equiv()
}

pub fn check_thompson_a(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.thompson_a()
}

pub fn check_thompson_b(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.thompson_b()
}

pub fn check_nw_corollary(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.nw_corollary()
}

pub fn check_four_point_corollary(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.four_point_corollary()
}

pub fn check_normal_pi_complement(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.normal_pi_complement()
}

pub fn check_wolf_count(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.wolf_count()
}

pub fn check_extension_lemma(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.extension_lemma()
}

pub fn check_lemma_vanish(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.lemma_vanish()
}

pub fn check_bpi_union_size(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.bpi_union_size()
}

pub fn check_maximal_nucleus(g: &PermGroup, pi: &PrimeSet) -> Result<VerificationReport> {
    Context::new("", g, pi)?.maximal_nucleus(DEFAULT_NUCLEUS_INDEX_BOUND)
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub checks: Vec<CheckName>,
    pub nucleus_index_bound: u64,
    pub record_timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            checks: CheckName::ALL.to_vec(),
            nucleus_index_bound: DEFAULT_NUCLEUS_INDEX_BOUND,
            record_timings: false,
        }
    }
}

/// A corpus entry refused before any check ran.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub group: String,
    pub pi: Vec<u64>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub entries: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub errors: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<Rejection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub run: RunSummary,
    pub results: Vec<VerificationReport>,
}

impl RunReport {
    pub fn from_results(results: Vec<VerificationReport>, rejected: Vec<Rejection>, entries: usize) -> Self {
        let count = |s: Status| results.iter().filter(|r| r.status == s).count();
        RunReport {
            run: RunSummary {
                seed: crate::dixon::seed(),
                entries,
                pass: count(Status::Pass),
                fail: count(Status::Fail),
                skipped: count(Status::Skipped),
                errors: count(Status::Error),
                rejected,
            },
            results,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.results.iter().any(|r| r.is_failure())
    }
}

/// Runs every configured check on one group and prime set.
pub fn run_entry(name: &str, g: &PermGroup, pi: &PrimeSet, config: &RunConfig) -> std::result::Result<Vec<VerificationReport>, Rejection> {
    let reject = |reason: String| Rejection { group: name.to_string(), pi: pi.iter().collect(), reason };
    match g.is_pi_separable(pi) {
        Ok(true) => {}
        Ok(false) => return Err(reject(format!("not {pi}-separable"))),
        Err(e) => return Err(reject(e.to_string())),
    }
    let ctx = match Context::new(name, g, pi) {
        Ok(c) => c,
        Err(e) => {
            return Ok(config.checks.iter().map(|&c| VerificationReport::aborted(c, name, pi, None, &e)).collect());
        }
    };
    let mut out = Vec::new();
    for &check in &config.checks {
        let primes: Vec<Option<u64>> = if check.needs_prime() {
            g.prime_divisors().into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        for p in primes {
            let start = Instant::now();
            let mut r = ctx
                .run(check, p, config.nucleus_index_bound)
                .unwrap_or_else(|e| VerificationReport::aborted(check, name, pi, p, &e));
            if config.record_timings {
                r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            out.push(r);
        }
    }
    Ok(out)
}

/// Runs the checks on every entry and prime choice; entries are processed in
/// parallel and merged in corpus order.
pub fn run_corpus(corpus: &[GroupSpec], config: &RunConfig) -> RunReport {
    let jobs: Vec<(String, std::result::Result<(PermGroup, Vec<PrimeSet>), String>)> = corpus
        .iter()
        .map(|spec| {
            let built = spec.build().and_then(|g| {
                let pis = spec.pi_choices(g.order())?;
                Ok((g, pis))
            });
            (spec.name.clone(), built.map_err(|e| e.to_string()))
        })
        .collect();
    let mut flat: Vec<(String, PermGroup, PrimeSet)> = Vec::new();
    let mut rejected = Vec::new();
    for (name, built) in jobs {
        match built {
            Ok((g, pis)) => flat.extend(pis.into_iter().map(|pi| (name.clone(), g.clone(), pi))),
            Err(reason) => rejected.push(Rejection { group: name, pi: Vec::new(), reason }),
        }
    }
    let outcomes = crate::par::map(&flat, |(name, g, pi)| run_entry(name, g, pi, config));
    let mut results = Vec::new();
    for o in outcomes {
        match o {
            Ok(rs) => results.extend(rs),
            Err(rej) => rejected.push(rej),
        }
    }
    RunReport::from_results(results, rejected, corpus.len())
}
