use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use meixner::measures::{orthogonality_gram, QuadConfig};
use meixner::par::Execution;
use meixner::sheffer::{sheffer_poly, Class, MeixnerParams};
use meixner::transforms::monte_carlo_rho;

fn gram(c: &mut Criterion) {
    let cfg = QuadConfig::default();
    let mut group = c.benchmark_group("orthogonality_gram");
    for class in Class::ALL {
        let p = MeixnerParams::reference(class);
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), class), &p, |b, p| {
                b.iter(|| orthogonality_gram(p, 6, &cfg, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let p = MeixnerParams::reference(Class::Laguerre);
    let f = sheffer_poly(&p, 2);
    let mut group = c.benchmark_group("monte_carlo_rho");
    group.sample_size(10);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| b.iter(|| monte_carlo_rho(&p, &f, 1.0, 200_000, 1, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, gram, monte_carlo);
criterion_main!(benches);
