use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rankit_core::cfg::doubling_check;
use rankit_core::tsp::shortest_tour;
use rankit_core::{CostLedger, DistanceMatrix};

fn ring(n: usize) -> DistanceMatrix {
    let d = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (i.abs_diff(j) * 10 + (i + j) % 7) as u64 * (i != j) as u64)
                .collect()
        })
        .collect();
    DistanceMatrix::new(d, false).unwrap()
}

fn tsp(c: &mut Criterion) {
    let mut g = c.benchmark_group("shortest_tour");
    g.sample_size(10);
    for n in [5, 7, 9] {
        let m = if n == 5 {
            DistanceMatrix::five_city()
        } else {
            ring(n)
        };
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| {
                let mut ledger = CostLedger::new();
                shortest_tour(black_box(m), &mut ledger).unwrap()
            })
        });
    }
    g.finish();
}

fn cycles(c: &mut Criterion) {
    let mut g = c.benchmark_group("doubling_check");
    g.sample_size(10);
    for d in [2, 6, 10] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| doubling_check(black_box(d)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, tsp, cycles);
criterion_main!(benches);
