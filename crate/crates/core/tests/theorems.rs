use bpilab::corpus::*;
use bpilab::theorems::*;
use bpilab::{PermGroup, PrimeSet};

fn g(spec: GroupSpec) -> PermGroup {
    spec.build().unwrap()
}

fn pi(p: &[u64]) -> PrimeSet {
    PrimeSet::new(p.iter().copied()).unwrap()
}

fn sides(r: &VerificationReport) -> (bool, bool) {
    assert!(r.equivalence_holds, "{r:?}");
    (r.lhs.holds, r.rhs.holds)
}

#[test]
fn builtin_corpus_has_no_failures() {
    let t = std::time::Instant::now();
    let report = run_corpus(&builtin_corpus(), &RunConfig { record_timings: true, ..RunConfig::default() });
    let mut slow: Vec<_> = report.results.iter().map(|r| (r.elapsed_ms.unwrap(), r.group.clone(), r.check)).collect();
    slow.sort();
    eprintln!("{:?}", &slow[slow.len().saturating_sub(8)..]);
    eprintln!("total {:?}", t.elapsed());
    for r in &report.results {
        assert!(!r.is_failure(), "{r:#?}");
    }
    assert!(report.run.rejected.is_empty());
    assert_eq!(report.run.fail + report.run.errors, 0);
}

#[test]
fn ito_michler_examples() {
    let s4 = g(build_symmetric(4));
    assert_eq!(sides(&check_ito_michler(&s4, &pi(&[2]), 3).unwrap()), (false, false));
    let sl = g(build_sl23());
    assert_eq!(sides(&check_ito_michler(&sl, &pi(&[2]), 2).unwrap()), (false, false));
    let c6 = g(build_cyclic(6));
    assert_eq!(sides(&check_ito_michler(&c6, &pi(&[2]), 3).unwrap()), (true, true));
}

#[test]
fn thompson_examples() {
    let s3 = g(build_symmetric(3));
    let s4 = g(build_symmetric(4));
    let f21 = g(build_frobenius(7, 3).unwrap());
    assert_eq!(sides(&check_thompson_equiv(&s3, &pi(&[2])).unwrap()), (true, true));
    assert_eq!(sides(&check_thompson_equiv(&s4, &pi(&[2])).unwrap()), (false, false));
    assert_eq!(sides(&check_thompson_a(&s4, &pi(&[2])).unwrap()), (false, false));
    assert_eq!(sides(&check_thompson_a(&f21, &pi(&[7])).unwrap()), (false, false));
    assert_eq!(sides(&check_thompson_b(&f21, &pi(&[3])).unwrap()), (true, true));
    assert_eq!(sides(&check_nw_corollary(&f21, &pi(&[3])).unwrap()), (true, true));
    assert_eq!(sides(&check_nw_corollary(&s4, &pi(&[2])).unwrap()), (false, false));
    assert_eq!(sides(&check_extension_lemma(&s3, &pi(&[3])).unwrap()), (false, false));
    assert_eq!(sides(&check_extension_lemma(&s3, &pi(&[2])).unwrap()), (true, true));
}

#[test]
fn complement_and_union_examples() {
    let s3 = g(build_symmetric(3));
    assert_eq!(sides(&check_normal_pi_complement(&s3, &pi(&[2])).unwrap()), (true, true));
    assert_eq!(sides(&check_normal_pi_complement(&s3, &pi(&[3])).unwrap()), (false, false));
    assert_eq!(sides(&check_bpi_union_size(&s3, &pi(&[2])).unwrap()), (true, true));
    let c6 = g(build_cyclic(6));
    assert_eq!(sides(&check_bpi_union_size(&c6, &pi(&[2])).unwrap()), (false, false));
}

#[test]
fn four_point_parts() {
    let s3 = g(build_symmetric(3));
    let r = check_four_point_corollary(&s3, &pi(&[2])).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(r.parts[1].detail.starts_with("lhs false, rhs false"), "{:?}", r.parts[1]);
    let s4 = g(build_symmetric(4));
    let r = check_four_point_corollary(&s4, &pi(&[2])).unwrap();
    assert!(r.parts[2].detail.starts_with("lhs true, rhs true"), "{:?}", r.parts[2]);
}

#[test]
fn lemma_vanish_s3() {
    let s3 = g(build_symmetric(3));
    let r = check_lemma_vanish(&s3, &pi(&[2])).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.parts.len(), 1);
    let c6 = g(build_cyclic(6));
    assert_eq!(check_lemma_vanish(&c6, &pi(&[2])).unwrap().status, Status::Skipped);
}

#[test]
fn wolf_counts() {
    let s4 = g(build_symmetric(4));
    let r = check_wolf_count(&s4, &pi(&[2])).unwrap();
    assert!(r.lhs.holds);
    assert!(r.lhs.witness.unwrap().ends_with("|X_pi'(G)| = 1, |X_pi'(N)| = 1, |Irr(N/H)| = 1"));
    let f21 = g(build_frobenius(7, 3).unwrap());
    let r = check_wolf_count(&f21, &pi(&[7])).unwrap();
    assert!(r.lhs.witness.unwrap().ends_with("|Irr(N/H)| = 3"));
}

#[test]
fn non_separable_entry_is_rejected() {
    let mut corpus = vec![build_symmetric(3), build_alternating(5)];
    corpus[1].suggested_pi = Some(vec![vec![2]]);
    let report = run_corpus(&corpus, &RunConfig::default());
    assert_eq!(report.run.rejected.len(), 1);
    assert_eq!(report.run.rejected[0].group, "A5");
    assert!(!report.has_failures());
    assert!(report.results.iter().all(|r| r.group == "S3"));
}
