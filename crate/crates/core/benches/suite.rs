//! Suite fan-out: sequential against the rayon pool.

use criterion::{criterion_group, criterion_main, Criterion};
use normlog::harness::{run_suite_with, Execution, SuiteConfig};

fn config() -> SuiteConfig {
    serde_json::from_str(r#"{"suite": "bench", "sizes": [4, 8], "seeds": 4}"#).unwrap()
}

fn fan_out(c: &mut Criterion) {
    let cfg = config();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| run_suite_with(&cfg, Execution::Sequential).unwrap())
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| run_suite_with(&cfg, Execution::Parallel(None)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, fan_out);
criterion_main!(benches);
