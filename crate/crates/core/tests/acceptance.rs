//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bpilab::chartab::{direct_product_table, wreath_c2_table};
use bpilab::corpus::*;
use bpilab::pichar::*;
use bpilab::primes::{is_prime, pi_part};
use bpilab::theorems::{run_corpus, RunConfig, Status};
use bpilab::{character_table, CharacterTable, PermGroup, PrimeSet};

fn pi(p: &[u64]) -> PrimeSet {
    PrimeSet::new(p.iter().copied()).unwrap()
}

fn set(v: &[u64]) -> BTreeSet<u64> {
    v.iter().copied().collect()
}

fn corpus() -> Vec<(String, PermGroup, Vec<PrimeSet>)> {
    builtin_corpus()
        .into_iter()
        .map(|s| {
            let g = s.build().unwrap();
            let pis = s.pi_choices(g.order()).unwrap();
            (s.name, g, pis)
        })
        .collect()
}

/// Runs `body`, prints the verdict line and fails the test on error or timeout.
fn criterion(n: u32, limit: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(body))
        .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed > limit {
            Err(format!("took {elapsed:?}, limit {limit:?}"))
        } else {
            Ok(())
        }
    });
    match &outcome {
        Ok(()) => println!("criterion {n}: PASS ({elapsed:.2?})"),
        Err(why) => println!("criterion {n}: FAIL ({why})"),
    }
    if let Err(why) = outcome {
        panic!("criterion {n}: {why}");
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn affine_sl23() -> PermGroup {
    build_sl23_on_z3sq().build().unwrap()
}

fn products(s: &BTreeSet<u64>) -> BTreeSet<u64> {
    s.iter().flat_map(|a| s.iter().map(move |b| a * b)).collect()
}

#[test]
fn criterion_1_affine_sl23_degree_sets() {
    criterion(1, Duration::from_secs(120), || {
        let g = affine_sl23();
        let t = character_table(&g).map_err(|e| e.to_string())?;
        ensure(g.order() == 216, || format!("order {}", g.order()))?;
        ensure(t.cd_set() == set(&[1, 2, 3, 8]), || format!("cd = {:?}", t.cd_set()))?;
        let (b3, b2) = bcd_sets(&g, &pi(&[3])).map_err(|e| e.to_string())?;
        ensure(b3 == set(&[1, 8]), || format!("Bcd_3 = {b3:?}"))?;
        ensure(b2 == set(&[1, 2, 3]), || format!("Bcd_2 = {b2:?}"))
    });
}

#[test]
fn criterion_2_affine_sl23_wreath_arithmetic() {
    let g = affine_sl23();
    let base = character_table(&g).unwrap();
    let (b3, b2) = bcd_sets(&g, &pi(&[3])).unwrap();
    criterion(2, Duration::from_secs(60), || {
        for n in [24, 48] {
            ensure(!products(&b2).contains(&n), || format!("{n} is a product in Bcd_2"))?;
            ensure(!products(&b3).contains(&n), || format!("{n} is a product in Bcd_3"))?;
        }
        let w = wreath_c2_table(&base).map_err(|e| e.to_string())?;
        ensure(w.order() == 2 * 216 * 216, || format!("order {}", w.order()))?;
        ensure(w.cd_set().contains(&48), || format!("cd = {:?}", w.cd_set()))?;
        // some degree-48 irreducible is induced from theta x eta, theta in B_3 of degree 8, eta in B_2 of degree 3
        let rows3 = bpi_rows(&g, &pi(&[3])).map_err(|e| e.to_string())?;
        let rows2 = bpi_rows(&g, &pi(&[2])).map_err(|e| e.to_string())?;
        let degs = base.degrees();
        let mut witnessed = false;
        for chi in w.irreducibles().into_iter().filter(|c| c.degree() == 48) {
            for &i in rows3.iter().filter(|&&i| degs[i] == 8) {
                for &j in rows2.iter().filter(|&&j| degs[j] == 3) {
                    if w.wreath_base_multiplicity(&chi, i, j).map_err(|e| e.to_string())? > 0 {
                        witnessed = true;
                    }
                }
            }
        }
        ensure(witnessed, || "no degree-48 character over theta x eta".into())
    });
}

#[test]
fn criterion_3_product_wreath_degree_twelve() {
    criterion(3, Duration::from_secs(60), || {
        let d8 = character_table(&build_dihedral(4).build().unwrap()).map_err(|e| e.to_string())?;
        let f21 = character_table(&build_frobenius(7, 3).unwrap().build().unwrap()).map_err(|e| e.to_string())?;
        let gt = direct_product_table(&d8, &f21).map_err(|e| e.to_string())?;
        ensure(gt.order() == 168, || format!("order {}", gt.order()))?;
        let k2 = f21.num_classes();
        let theta = (0..d8.num_classes()).find(|&i| d8.degrees()[i] == 2).ok_or("no degree-2 character of D8")?;
        let eta = (0..k2).find(|&j| f21.degrees()[j] == 3).ok_or("no degree-3 character of C7:C3")?;
        // rows of the product table are ordered by matching the product values
        let theta_x_1 = product_row(&gt, &d8, &f21, theta, 0)?;
        let one_x_eta = product_row(&gt, &d8, &f21, 0, eta)?;
        let w = wreath_c2_table(&gt).map_err(|e| e.to_string())?;
        let pi2 = pi(&[2]);
        let mut found = None;
        // induced characters vanish off the base group
        let swap = w.num_classes() - gt.num_classes();
        for chi in w.irreducibles().into_iter().filter(|c| c.degree() == 12 && c.values()[swap..].iter().all(|v| v.is_zero())) {
            if w.wreath_base_multiplicity(&chi, theta_x_1, one_x_eta).map_err(|e| e.to_string())? == 1 {
                found = Some(chi);
                break;
            }
        }
        let chi = found.ok_or("no irreducible over the pair")?;
        let d = chi.degree();
        ensure(d == 2 * d8.degrees()[theta] * f21.degrees()[eta], || format!("degree {d}"))?;
        ensure(d == 12, || format!("degree {d}"))?;
        let (dp, dq) = (pi_part(d, &pi2), d / pi_part(d, &pi2));
        ensure(dp == 4 && dp > 2, || format!("pi-part {dp}"))?;
        ensure(dq == 3 && dq > 1, || format!("pi'-part {dq}"))
    });
}

fn product_row(
    gt: &Arc<CharacterTable>,
    a: &Arc<CharacterTable>,
    b: &Arc<CharacterTable>,
    i: usize,
    j: usize,
) -> Result<usize, String> {
    let exp = gt.exponent();
    let mut row = Vec::new();
    for x in &a.rows()[i] {
        for y in &b.rows()[j] {
            row.push((x * y).lift(exp));
        }
    }
    gt.row_index(&row).ok_or_else(|| "product row missing".into())
}

#[test]
fn criterion_4_count_invariant() {
    criterion(4, Duration::from_secs(600), || {
        for (name, g, pis) in corpus() {
            let classes = g.conjugacy_classes().map_err(|e| e.to_string())?;
            for p in pis {
                for p in [p.clone(), p.complement_in(g.order())] {
                    let b = bpi_set(&g, &p).map_err(|e| format!("{name} {p}: {e}"))?;
                    let want = classes.count_pi_classes(&p);
                    ensure(b.len() == want, || format!("{name} {p}: {} vs {want}", b.len()))?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_5_structural_identities() {
    criterion(5, Duration::from_secs(600), || {
        for (name, g, pis) in corpus() {
            for p in pis {
                let tag = |e: bpilab::Error| format!("{name} {p}: {e}");
                check_x_pi_prime_identity(&g, &p).map_err(tag)?;
                check_degree_criterion(&g, &p).map_err(tag)?;
                check_normal_behaviour(&g, &p).map_err(tag)?;
                check_fong(&g, &p).map_err(tag)?;
                check_linear_fong_classes(&g, &p).map_err(tag)?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_theorem_suite() {
    criterion(6, Duration::from_secs(600), || {
        let report = run_corpus(&builtin_corpus(), &RunConfig::default());
        ensure(report.run.rejected.is_empty(), || format!("rejected {:?}", report.run.rejected))?;
        let bad: Vec<_> = report
            .results
            .iter()
            .filter(|r| !r.equivalence_holds || matches!(r.status, Status::Fail | Status::Error))
            .map(|r| format!("{} {} {:?}", r.check.as_str(), r.group, r.pi))
            .collect();
        ensure(bad.is_empty(), || format!("failures: {bad:?}"))?;
        ensure(report.run.pass > 0, || "nothing ran".into())
    });
}

#[test]
fn criterion_7_internal_oracles() {
    criterion(7, Duration::from_secs(600), || {
        for (name, g, pis) in corpus() {
            let t = character_table(&g).map_err(|e| e.to_string())?;
            t.verify().map_err(|e| format!("{name}: {e}"))?;
            let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
            ensure(sum == g.order(), || format!("{name}: sum of squares {sum}"))?;
            if g.order() > 100 {
                continue;
            }
            for p in pis {
                for p in [p.clone(), p.complement_in(g.order())] {
                    for chi in t.irreducibles() {
                        let a = is_pi_special(&chi, &p, SpecialMode::ChiefSeries).map_err(|e| e.to_string())?;
                        let b = is_pi_special(&chi, &p, SpecialMode::Exhaustive).map_err(|e| e.to_string())?;
                        ensure(a == b, || format!("{name} {p} degree {}: {a} vs {b}", chi.degree()))?;
                    }
                }
            }
        }
        // constructed tables
        let f21 = character_table(&build_frobenius(7, 3).unwrap().build().unwrap()).map_err(|e| e.to_string())?;
        let d8 = character_table(&build_dihedral(4).build().unwrap()).map_err(|e| e.to_string())?;
        let prod = direct_product_table(&d8, &f21).map_err(|e| e.to_string())?;
        prod.verify().map_err(|e| e.to_string())?;
        wreath_c2_table(&f21).map_err(|e| e.to_string())?.verify().map_err(|e| e.to_string())
    });
}

#[test]
fn criterion_8_trivial_boundaries() {
    criterion(8, Duration::from_secs(600), || {
        for (name, g, _) in corpus() {
            let t = character_table(&g).map_err(|e| e.to_string())?;
            let primes = g.prime_divisors();
            let all = PrimeSet::new(primes.iter().copied()).map_err(|e| e.to_string())?;
            let foreign = (2..).find(|&q| is_prime(q) && g.order() % q != 0).unwrap();
            let none = PrimeSet::single(foreign);
            let full = bpi_rows(&g, &all).map_err(|e| e.to_string())?;
            ensure(full.len() == t.num_classes(), || format!("{name}: B_pi != Irr"))?;
            let triv = bpi_rows(&g, &none).map_err(|e| e.to_string())?;
            ensure(*triv == vec![0], || format!("{name}: B_pi != {{1}}"))?;
            ensure(bpi_rows(&g, &PrimeSet::empty()).map_err(|e| e.to_string())?.len() == 1, || format!("{name}: empty pi"))?;
            // the descent itself agrees with the shortcuts
            for chi in t.irreducibles() {
                let a = nucleus(&chi, &all).map_err(|e| e.to_string())?;
                ensure(a.beta_is_trivial(), || format!("{name}: degree {} not in B_all", chi.degree()))?;
                let b = nucleus(&chi, &none).map_err(|e| e.to_string())?;
                let is_one = chi.index() == Some(0);
                ensure(b.beta_is_trivial() == is_one, || format!("{name}: degree {} vs empty pi", chi.degree()))?;
            }
        }
        Ok(())
    });
}
