use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use ortho_lattice::orthogonality::{decide_batch, decide_with, gen_instance, InstanceSpec};
use ortho_lattice::{Exec, FieldOrder, IntMatrix};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn single_instance(c: &mut Criterion) {
    for (q, sizes) in [
        (FieldOrder::Binary, [16, 32, 64]),
        (FieldOrder::Ternary, [8, 16, 32]),
    ] {
        let mut group = c.benchmark_group(format!("decide_q{}", q.q()));
        group
            .sample_size(10)
            .measurement_time(Duration::from_secs(5));
        for n in sizes {
            let b = gen_instance(q, n, 1, InstanceSpec::Orthogonal).unwrap();
            for (name, exec) in MODES {
                group.bench_with_input(BenchmarkId::new(name, n), &b, |bench, b| {
                    bench.iter(|| decide_with(black_box(b), q, exec).unwrap());
                });
            }
        }
        group.finish();
    }
}

fn non_orthogonal(c: &mut Criterion) {
    // Random codes rarely split, so every candidate gets scanned.
    let mut group = c.benchmark_group("decide_random_code_q3");
    group.sample_size(10);
    for n in [8, 16, 24] {
        let b = gen_instance(FieldOrder::Ternary, n, 3, InstanceSpec::RandomCode(n / 2)).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &b, |bench, b| {
                bench.iter(|| decide_with(black_box(b), FieldOrder::Ternary, exec).unwrap());
            });
        }
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide_batch_q2");
    group.sample_size(10);
    let bases: Vec<IntMatrix> = (0..64u64)
        .map(|s| gen_instance(FieldOrder::Binary, 24, s, InstanceSpec::Orthogonal).unwrap())
        .collect();
    group.throughput(Throughput::Elements(bases.len() as u64));
    for (name, exec) in MODES {
        group.bench_with_input(
            BenchmarkId::new(name, bases.len()),
            &bases,
            |bench, bases| {
                bench.iter(|| decide_batch(black_box(bases), FieldOrder::Binary, exec));
            },
        );
    }
    group.finish();
}

criterion_group!(benches, single_instance, non_orthogonal, batch);
criterion_main!(benches);
