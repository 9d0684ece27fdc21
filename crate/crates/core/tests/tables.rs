use std::collections::BTreeSet;

use bpilab::chartab::{direct_product_table, wreath_c2_table};
use bpilab::corpus::*;
use bpilab::{character_table, PermGroup, Permutation};

fn group(spec: GroupSpec) -> PermGroup {
    spec.build().unwrap()
}

// closure of the generators by repeated multiplication
fn closure_order(g: &PermGroup) -> u64 {
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut frontier = vec![g.identity()];
    seen.insert(g.identity());
    while let Some(x) = frontier.pop() {
        for s in g.generators() {
            let y = x.compose(s);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u64
}

// number of conjugacy classes by explicit orbits
fn class_count(g: &PermGroup) -> usize {
    let elems = g.element_index().unwrap().elements().to_vec();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for x in &elems {
        if seen.contains(x) {
            continue;
        }
        count += 1;
        for h in &elems {
            seen.insert(x.conjugate_by(h));
        }
    }
    count
}

#[test]
fn orders_match_closure() {
    for spec in builtin_corpus().into_iter().filter(|s| s.degree <= 12) {
        let g = group(spec.clone());
        assert_eq!(g.order(), closure_order(&g), "{}", spec.name);
    }
}

#[test]
fn small_tables_verify() {
    for spec in builtin_corpus() {
        let g = group(spec.clone());
        if g.order() > 300 {
            continue;
        }
        let t = character_table(&g).unwrap();
        assert_eq!(t.num_classes(), class_count(&g), "{}", spec.name);
        let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum, g.order(), "{}", spec.name);
        t.verify().unwrap();
    }
}

#[test]
fn known_degree_sets() {
    let cases: Vec<(GroupSpec, Vec<u64>)> = vec![
        (build_symmetric(4), vec![1, 1, 2, 3, 3]),
        (build_quaternion(), vec![1, 1, 1, 1, 2]),
        (build_sl23(), vec![1, 1, 1, 2, 2, 2, 3]),
        (build_frobenius(7, 3).unwrap(), vec![1, 1, 1, 3, 3]),
        (build_symmetric(5), vec![1, 1, 4, 4, 5, 5, 6]),
    ];
    for (spec, degrees) in cases {
        let t = character_table(&group(spec.clone())).unwrap();
        assert_eq!(t.degrees(), degrees, "{}", spec.name);
    }
}

#[test]
fn affine_sl23_degrees() {
    let t = character_table(&group(build_sl23_on_z3sq())).unwrap();
    assert_eq!(t.cd_set(), [1, 2, 3, 8].into_iter().collect());
    assert_eq!(t.degrees(), vec![1, 1, 1, 2, 2, 2, 3, 8, 8, 8]);
}

#[test]
fn product_constructions_agree_with_direct_tables() {
    let a = character_table(&group(build_dihedral(4))).unwrap();
    let b = character_table(&group(build_frobenius(7, 3).unwrap())).unwrap();
    let p = direct_product_table(&a, &b).unwrap();
    p.verify().unwrap();
    let direct = character_table(&group(build_direct_product(&build_dihedral(4), &build_frobenius(7, 3).unwrap()).unwrap())).unwrap();
    assert_eq!(p.degrees(), direct.degrees());

    let w = wreath_c2_table(&b).unwrap();
    w.verify().unwrap();
    let direct = character_table(&group(build_wreath_c2(&build_frobenius(7, 3).unwrap()).unwrap())).unwrap();
    assert_eq!(w.degrees(), direct.degrees());
    assert_eq!(w.num_classes(), 5 * 6 / 2 + 5);
}

#[test]
fn table_documents_round_trip() {
    let t = character_table(&group(build_sl23())).unwrap();
    let doc = save_table(&t).unwrap();
    let back = load_table(&doc).unwrap();
    assert_eq!(back.rows(), t.rows());
}
