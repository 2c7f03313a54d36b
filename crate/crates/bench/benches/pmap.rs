use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twheis::cohomology::Cochain;
use twheis::heisenberg::make_restricted_twisted;
use twheis::restricted::compatible_eval;
use twheis::{Fe, Field};

fn setup(p: u32, m: usize) -> (twheis::RestrictedTwisted, Vec<Vec<Fe>>) {
    let f = Field::prime(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let lambda = vec![f.one(); m];
    let mu: Vec<Fe> = (0..2 * m + 2).map(|_| f.random(&mut rng)).collect();
    let r = make_restricted_twisted(&f, m, &lambda, &mu).unwrap();
    let elements = (0..64)
        .map(|_| (0..2 * m + 2).map(|_| f.random(&mut rng)).collect())
        .collect();
    (r, elements)
}

fn p_power(c: &mut Criterion) {
    let mut group = c.benchmark_group("p_power");
    for (p, m) in [(3, 2), (7, 3), (13, 3)] {
        let (r, elements) = setup(p, m);
        group.bench_with_input(BenchmarkId::new("p_extend", format!("p={p} m={m}")), &elements, |b, gs| {
            b.iter(|| gs.iter().map(|g| r.pmap.p_extend(black_box(g))).collect::<Vec<_>>())
        });
        group.bench_with_input(BenchmarkId::new("closed_form", format!("p={p} m={m}")), &elements, |b, gs| {
            b.iter(|| gs.iter().map(|g| r.closed_form_p(black_box(g))).collect::<Vec<_>>())
        });
    }
    group.finish();
}

fn compatible(c: &mut Criterion) {
    let mut group = c.benchmark_group("compatible_eval");
    for (p, m) in [(3, 2), (5, 2), (7, 2)] {
        let (r, elements) = setup(p, m);
        let f = r.field().clone();
        let n = 2 * m + 2;
        // e^{1,m+1} is a cocycle, so the value is independent of peeling order
        let phi = Cochain::pair(&f, n, 0, m);
        let omega = vec![f.zero(); n];
        group.bench_with_input(BenchmarkId::from_parameter(format!("p={p} m={m}")), &elements, |b, gs| {
            b.iter(|| {
                gs.iter()
                    .map(|g| compatible_eval(&r.algebra, &phi, &omega, black_box(g)).unwrap())
                    .collect::<Vec<_>>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, p_power, compatible);
criterion_main!(benches);
