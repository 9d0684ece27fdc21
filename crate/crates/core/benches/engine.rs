use std::cell::RefCell;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bpilab::chartab::wreath_c2_table;
use bpilab::corpus::{build_frobenius, build_sl23_on_z3sq};
use bpilab::pichar::bpi_rows;
use bpilab::{character_table, par, PermGroup, Permutation, PrimeSet};

const PAD: usize = 8;

/// A copy of `g` on a random subset of `PAD` more points, so the group cache misses.
fn relabel(g: &PermGroup, rng: &mut ChaCha8Rng) -> PermGroup {
    let n = g.degree() + PAD;
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    let s = Permutation::from_images(images).unwrap();
    let gens = g
        .generators()
        .iter()
        .map(|x| {
            let padded = (0..n as u32).map(|i| if (i as usize) < g.degree() { x.images()[i as usize] } else { i }).collect();
            Permutation::from_images(padded).unwrap().conjugate_by(&s)
        })
        .collect();
    PermGroup::from_generators(n, gens).unwrap()
}

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn tables(c: &mut Criterion) {
    let g = build_sl23_on_z3sq().build().unwrap();
    let rng = RefCell::new(ChaCha8Rng::seed_from_u64(7));
    let mut group = c.benchmark_group("character_table/SL(2,3):3^2");
    group.sample_size(10);
    for (label, on) in modes() {
        par::set_parallel(on);
        group.bench_function(label, |b| {
            b.iter_batched(|| relabel(&g, &mut rng.borrow_mut()), |h| character_table(&h).unwrap(), BatchSize::SmallInput)
        });
    }
    group.finish();
}

fn wreath(c: &mut Criterion) {
    let base = character_table(&build_frobenius(7, 3).unwrap().build().unwrap()).unwrap();
    let mut group = c.benchmark_group("wreath_c2_table/F21");
    group.sample_size(10);
    for (label, on) in modes() {
        par::set_parallel(on);
        group.bench_function(label, |b| b.iter(|| wreath_c2_table(&base).unwrap()));
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let t = character_table(&build_sl23_on_z3sq().build().unwrap()).unwrap();
    let mut group = c.benchmark_group("verify/SL(2,3):3^2");
    for (label, on) in modes() {
        par::set_parallel(on);
        group.bench_function(label, |b| b.iter(|| t.verify().unwrap()));
    }
    group.finish();
}

fn bpi(c: &mut Criterion) {
    let g = build_sl23_on_z3sq().build().unwrap();
    let pi = PrimeSet::single(3);
    let rng = RefCell::new(ChaCha8Rng::seed_from_u64(11));
    let mut group = c.benchmark_group("bpi_rows/SL(2,3):3^2");
    group.sample_size(10);
    for (label, on) in modes() {
        par::set_parallel(on);
        group.bench_function(label, |b| {
            b.iter_batched(|| relabel(&g, &mut rng.borrow_mut()), |h| bpi_rows(&h, &pi).unwrap(), BatchSize::SmallInput)
        });
    }
    group.finish();
}

criterion_group!(benches, tables, wreath, verify, bpi);
criterion_main!(benches);
