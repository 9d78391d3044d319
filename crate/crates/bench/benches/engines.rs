use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use percword::exactprob::{exact_seen_probability, exhaustive_seen_probability};
use percword::moments::{renewal_table, second_moment_exact};
use percword::montecarlo::{estimate_seen_probability, RngConfig};
use percword::rational::rat;
use percword::recursions::vn_pair_recursion;
use percword_bench::sample_words;

fn automaton(c: &mut Criterion) {
    let mut group = c.benchmark_group("automaton");
    let half = rat(1, 2);
    for (name, word) in sample_words(24) {
        group.bench_with_input(BenchmarkId::new(name, 24), &word, |b, w| {
            b.iter(|| exact_seen_probability(black_box(w), 3, &half).unwrap())
        });
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    for (name, word) in sample_words(6) {
        group.bench_with_input(BenchmarkId::new(name, 6), &word, |b, w| {
            b.iter(|| exhaustive_seen_probability(black_box(w), 3).unwrap())
        });
    }
    group.finish();
}

fn recursions(c: &mut Criterion) {
    c.bench_function("vn_pair_recursion/M5_N400", |b| {
        b.iter(|| vn_pair_recursion(black_box(5), 400).unwrap())
    });
    c.bench_function("renewal_table/M3_N200", |b| {
        b.iter(|| renewal_table(black_box(3), 200).unwrap())
    });
}

fn moments(c: &mut Criterion) {
    let mut group = c.benchmark_group("second_moment");
    for (name, word) in sample_words(10) {
        group.bench_with_input(BenchmarkId::new(name, 10), &word, |b, w| {
            b.iter(|| second_moment_exact(black_box(w), 2).unwrap())
        });
    }
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let cfg = RngConfig::new(1);
    let (_, word) = sample_words(32).remove(0);
    c.bench_function("estimate/alternating32_M2_1e4", |b| {
        b.iter(|| estimate_seen_probability(black_box(&word), 2, 0.5, 10_000, &cfg).unwrap())
    });
}

criterion_group!(benches, automaton, exhaustive, recursions, moments, monte_carlo);
criterion_main!(benches);
