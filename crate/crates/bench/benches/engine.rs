use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nicheck::ic3::{check, EngineOptions};
use nicheck::replacement::PredMode;
use nicheck::selfcomp::{compose_benchmark, Family};

const CONFIGS: [(&str, bool, PredMode); 4] = [
    ("baseline", false, PredMode::None),
    ("sym", true, PredMode::None),
    ("maximal", false, PredMode::Maximal),
    ("sym+maximum", true, PredMode::Maximum),
];

fn engine(c: &mut Criterion) {
    for (family, size) in [(Family::MuxReg, 16), (Family::GcdLockstep, 4), (Family::CounterLeak, 4)] {
        let mut group = c.benchmark_group(format!("{family}({size})"));
        for (name, symmetry, pred) in CONFIGS {
            let b = compose_benchmark(family, size, true, pred != PredMode::None).unwrap();
            let opts = EngineOptions { symmetry, pred, ..Default::default() };
            group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |bench, opts| {
                bench.iter(|| check(&b.circuit, &b.map, opts).unwrap())
            });
        }
        group.finish();
    }
}

criterion_group!(benches, engine);
criterion_main!(benches);
