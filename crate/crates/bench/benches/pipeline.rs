use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use procsat_core::encode::{emit_anf, minimize, tseitin};
use procsat_core::harness::{compile, trial_inputs, Options};
use procsat_core::solve::Solver;
use procsat_core::{corpus, symbex};

fn translate(c: &mut Criterion) {
    let mut g = c.benchmark_group("translate");
    for (name, src) in corpus::ALL {
        g.bench_function(name, |b| {
            b.iter(|| symbex::translate_source(black_box(src), &[]).unwrap())
        });
    }
    g.finish();
}

fn emit(c: &mut Criterion) {
    let enc = symbex::translate_source(corpus::A51, &[]).unwrap();
    c.bench_function("tseitin/a51", |b| b.iter(|| tseitin(black_box(&enc))));
    c.bench_function("minimize/a51", |b| b.iter(|| minimize(black_box(&enc), 12)));
    c.bench_function("anf/a51", |b| b.iter(|| emit_anf(black_box(&enc))));
}

fn solve(c: &mut Criterion) {
    let compiled = compile(corpus::A51, &Options::default()).unwrap();
    let width = compiled.program.input_width();
    let vars = compiled.cnf.input_vars();
    let mut solver = Solver::new(&compiled.cnf);
    let mut trial = 0;
    c.bench_function("solve/a51-forward", |b| {
        b.iter(|| {
            trial += 1;
            let assumptions: Vec<i32> = vars
                .iter()
                .zip(trial_inputs(1, trial, width))
                .map(|(&v, x)| if x { v as i32 } else { -(v as i32) })
                .collect();
            solver.solve(&assumptions).unwrap()
        })
    });
}

criterion_group!(benches, translate, emit, solve);
criterion_main!(benches);
