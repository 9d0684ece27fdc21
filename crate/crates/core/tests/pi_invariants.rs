use bpilab::corpus::builtin_corpus;
use bpilab::pichar::*;
use bpilab::{character_table, PermGroup, PrimeSet};

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

#[test]
fn bpi_count_matches_pi_classes() {
    for (name, g, pis) in corpus() {
        for pi in pis {
            let t = std::time::Instant::now();
            let b = bpi_set(&g, &pi).unwrap_or_else(|e| panic!("{name} {pi}: {e}"));
            let classes = g.conjugacy_classes().unwrap();
            assert_eq!(b.len(), classes.count_pi_classes(&pi), "{name} {pi}");
            eprintln!("{name} {pi}: {} in {:?}", b.len(), t.elapsed());
        }
    }
}

#[test]
fn structural_identities() {
    for (name, g, pis) in corpus() {
        for pi in pis {
            check_x_pi_prime_identity(&g, &pi).unwrap_or_else(|e| panic!("{name} {pi}: {e}"));
            check_degree_criterion(&g, &pi).unwrap_or_else(|e| panic!("{name} {pi}: {e}"));
            check_normal_behaviour(&g, &pi).unwrap_or_else(|e| panic!("{name} {pi}: {e}"));
            check_fong(&g, &pi).unwrap_or_else(|e| panic!("{name} {pi}: {e}"));
            check_linear_fong_classes(&g, &pi).unwrap_or_else(|e| panic!("{name} {pi}: {e}"));
        }
    }
}

#[test]
fn chief_series_test_matches_definition() {
    for (name, g, pis) in corpus() {
        if g.order() > 100 {
            continue;
        }
        let t = character_table(&g).unwrap();
        for pi in pis {
            for pi in [pi.clone(), pi.complement_in(g.order())] {
                for chi in t.irreducibles() {
                    let a = is_pi_special(&chi, &pi, SpecialMode::ChiefSeries).unwrap();
                    let b = is_pi_special(&chi, &pi, SpecialMode::Exhaustive).unwrap();
                    assert_eq!(a, b, "{name} {pi} degree {}", chi.degree());
                }
            }
        }
    }
}
