//! Sequential against data-parallel sweeps over suite-sized workloads. Build
//! with `--no-default-features` to see the fallback on its own.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use seqpi::corpus::{typed_nets, Corpus};
use seqpi::encode::encode_x;
use seqpi::par;
use seqpi::pi::{pi_step, Proc};
use seqpi::suite::{simulate_step, Config};
use seqpi::xnet::Net;
use seqpi::xrewrite::step_all;
use seqpi::xtypes::{check_x, infer_x};

fn witness(n: &Net) -> bool {
    let Ok((ctx, _)) = infer_x(n) else { return true };
    step_all(n).iter().all(|q| check_x(q, &ctx))
}

fn two_levels(p: &Proc) -> usize {
    pi_step(p, 2).iter().map(|q| pi_step(q, 2).len()).sum()
}

fn sweeps(c: &mut Criterion) {
    let mode = if par::is_parallel() { "rayon" } else { "fallback" };
    let nets = typed_nets(20240917, 200, 9);
    let corpus = Corpus::bundled();
    let encoded: Vec<Proc> = corpus.nets.iter().map(|e| encode_x(&e.term)).collect();
    let cfg = Config::default();
    let steps: Vec<(Proc, Proc)> = corpus
        .nets
        .iter()
        .filter(|e| !e.name.starts_with("gen"))
        .flat_map(|e| step_all(&e.term).into_iter().map(|r| (encode_x(&e.term), encode_x(&r))))
        .collect();

    let mut g = c.benchmark_group(format!("witness-reduction/{}", mode));
    g.bench_function(BenchmarkId::new("seq", nets.len()), |b| b.iter(|| par::map_seq(black_box(&nets), witness)));
    g.bench_function(BenchmarkId::new("par", nets.len()), |b| b.iter(|| par::map(black_box(&nets), witness)));
    g.finish();

    let mut g = c.benchmark_group(format!("pi-steps/{}", mode));
    g.bench_function(BenchmarkId::new("seq", encoded.len()), |b| b.iter(|| par::map_seq(black_box(&encoded), two_levels)));
    g.bench_function(BenchmarkId::new("par", encoded.len()), |b| b.iter(|| par::map(black_box(&encoded), two_levels)));
    g.finish();

    let mut g = c.benchmark_group(format!("simulate-steps/{}", mode));
    g.sample_size(10).measurement_time(Duration::from_secs(5));
    let sim = |(s, t): &(Proc, Proc)| simulate_step(s, t, &cfg).found;
    g.bench_function(BenchmarkId::new("seq", steps.len()), |b| b.iter(|| par::map_seq(black_box(&steps), sim)));
    g.bench_function(BenchmarkId::new("par", steps.len()), |b| b.iter(|| par::map(black_box(&steps), sim)));
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20).warm_up_time(Duration::from_secs(1));
    targets = sweeps
}
criterion_main!(benches);
