use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use triperm_core::funcspace::{enumerate_poly_functions, Components, SpaceOptions};
use triperm_core::sample::random_tr;
use triperm_core::tri::{compose_tri, invert_tri};
use triperm_core::Ring;

fn tri_ops(c: &mut Criterion) {
    let z4 = Ring::parse("Z4").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = random_tr(&mut rng, &z4, 3, 3);
    let g = random_tr(&mut rng, &z4, 3, 3);
    c.bench_function("compose_tri Z4 n=3 deg 3", |b| b.iter(|| compose_tri(black_box(&f), black_box(&g)).unwrap()));
    c.bench_function("invert_tri Z4 n=3 deg 3", |b| b.iter(|| invert_tri(black_box(&f)).unwrap()));
}

fn spaces(c: &mut Criterion) {
    let opts = SpaceOptions::default();
    let z9 = Ring::parse("Z9").unwrap();
    let z4 = Ring::parse("Z4").unwrap();
    c.bench_function("F(Z9) closure", |b| b.iter(|| enumerate_poly_functions(&z9, 1, &opts).unwrap()));
    c.bench_function("F(Z4^2) closure", |b| b.iter(|| enumerate_poly_functions(&z4, 2, &opts).unwrap()));
    let comps = Components::mt(&z4, 2, &opts).unwrap();
    c.bench_function("pi_2(MT_2) Z4 materialize", |b| b.iter(|| comps.group(opts.group_cap).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = tri_ops, spaces
}
criterion_main!(benches);
