//! Encodings of random programs against the reference interpreter.

mod common;

use procsat_core::boolir::SupportCache;
use procsat_core::encode::{emit_anf, emit_dnf, minimize, tseitin, ClauseSet};
use procsat_core::harness::{compile, Options};
use procsat_core::solve::Solver;
use procsat_core::symbex::{execute, SymbexConfig};
use procsat_core::{check_source, corpus, interp, Encoding, VarId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bits_of(m: u64, n: usize) -> Vec<bool> {
    (0..n).map(|k| m >> k & 1 == 1).collect()
}

#[test]
fn random_programs_match_interpreter() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut total_defs = 0;
    for case in 0..150 {
        let inputs = rng.gen_range(1..=12);
        let outputs = rng.gen_range(1..=4);
        let src = common::random_program(&mut rng, inputs, outputs);
        let prog = check_source(&src, &[]).unwrap_or_else(|d| panic!("case {case}: {d}\n{src}"));
        let plain = execute(&prog, &SymbexConfig::default()).unwrap().encoding;
        let forwarded = execute(
            &prog,
            &SymbexConfig {
                forward: true,
                ..Default::default()
            },
        )
        .unwrap()
        .encoding;
        total_defs += plain.definitions.len();
        let (minimized, _) = minimize(&plain, rng.gen_range(2..=12));
        for enc in [&plain, &forwarded, &minimized] {
            enc.validate().unwrap();
        }
        for _ in 0..32 {
            let x: Vec<bool> = (0..inputs).map(|_| rng.gen()).collect();
            let want = interp::run(&prog, &x).unwrap().outputs;
            for enc in [&plain, &forwarded, &minimized] {
                assert_eq!(enc.output_values(&x).unwrap(), want, "case {case}\n{src}");
            }
        }
    }
    // the generator must produce real work, not just copies
    assert!(total_defs >= 150, "{total_defs}");
}

/// For every input assignment the CNF has a model, and no model disagrees
/// with the interpreter on the outputs.
fn check_projection(cnf: &ClauseSet, graph: &[(Vec<bool>, Vec<bool>)], src: &str) {
    let ins = cnf.input_vars();
    let outs = cnf.output_vars();
    let mut solver = Solver::new(cnf);
    for (x, y) in graph {
        let assume: Vec<i32> = ins
            .iter()
            .zip(x)
            .map(|(&v, &b)| if b { v as i32 } else { -(v as i32) })
            .collect();
        let r = solver.solve(&assume).unwrap();
        let model = r.model.unwrap_or_else(|| panic!("no model for {x:?}\n{src}"));
        let got: Vec<bool> = outs.iter().map(|&v| model[v as usize - 1]).collect();
        assert_eq!(&got, y, "{src}");
        // exclude the correct output: must be unsatisfiable
        let mut blocked = cnf.clone();
        let clause: Vec<i32> = outs
            .iter()
            .zip(y)
            .map(|(&v, &b)| if b { -(v as i32) } else { v as i32 })
            .collect();
        blocked.add(&clause);
        assert!(
            !Solver::new(&blocked).solve(&assume).unwrap().is_sat(),
            "second output for {x:?}\n{src}"
        );
    }
}

#[test]
fn projection_equals_function_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..30 {
        let inputs = rng.gen_range(1..=8);
        let outputs = rng.gen_range(1..=3);
        let src = common::random_program(&mut rng, inputs, outputs);
        let prog = check_source(&src, &[]).unwrap();
        let graph: Vec<(Vec<bool>, Vec<bool>)> = (0..1u64 << inputs)
            .map(|m| {
                let x = bits_of(m, inputs);
                let y = interp::run(&prog, &x).unwrap().outputs;
                (x, y)
            })
            .collect();
        let enc = execute(&prog, &SymbexConfig::default()).unwrap().encoding;
        check_projection(&tseitin(&enc), &graph, &src);
        let (min, _) = minimize(&enc, rng.gen_range(2..=12));
        check_projection(&tseitin(&min), &graph, &src);
    }
}

#[test]
fn projection_with_sixteen_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let src = common::random_program(&mut rng, 16, 2);
    let prog = check_source(&src, &[]).unwrap();
    let graph: Vec<(Vec<bool>, Vec<bool>)> = (0..1u64 << 16)
        .step_by(37)
        .map(|m| {
            let x = bits_of(m, 16);
            let y = interp::run(&prog, &x).unwrap().outputs;
            (x, y)
        })
        .collect();
    let enc = execute(&prog, &SymbexConfig::default()).unwrap().encoding;
    check_projection(&tseitin(&enc), &graph, &src);
}

/// Every definition with support at most 12: ANF, DNF (both modes) and
/// the formula agree on all assignments of the support.
fn check_normal_forms(enc: &Encoding) {
    let anf = emit_anf(enc);
    let dnf = emit_dnf(enc, false).unwrap();
    let full = emit_dnf(enc, true).unwrap();
    assert_eq!(anf.equations.len(), enc.definitions.len(), "no splitting expected");
    let mut cache = SupportCache::new(&enc.arena);
    for (i, d) in enc.definitions.iter().enumerate() {
        let support = cache.support(&enc.arena, d.formula).to_vec();
        if support.len() > 12 {
            continue;
        }
        assert_eq!(anf.equations[i].var, d.var);
        for m in 0..1u32 << support.len() {
            let value = |v: VarId| {
                support
                    .iter()
                    .position(|&s| s == v)
                    .map(|k| m >> k & 1 == 1)
                    .unwrap_or(false)
            };
            let want = enc.arena.eval(d.formula, &|v| Some(value(v))).unwrap();
            assert_eq!(anf.equations[i].eval(value), want);
            assert_eq!(dnf.definitions[i].eval(value), want);
            assert_eq!(full.definitions[i].eval(value), want);
        }
    }
}

#[test]
fn anf_and_dnf_agree_with_definitions() {
    for (name, src) in corpus::ALL {
        let enc = compile(src, &Options::default()).unwrap().encoding;
        check_normal_forms(&enc);
        let min = compile(
            src,
            &Options {
                minimize: Some(12),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(min.minimize.as_ref().unwrap().split, 0, "{name}");
        check_normal_forms(&min.encoding);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let inputs = rng.gen_range(1..=10);
        let src = common::random_program(&mut rng, inputs, 2);
        let enc = compile(&src, &Options::default()).unwrap().encoding;
        check_normal_forms(&enc);
    }
}

#[test]
fn translation_is_deterministic() {
    for (_, src) in corpus::ALL {
        let a = compile(src, &Options::default()).unwrap();
        let b = compile(src, &Options::default()).unwrap();
        assert_eq!(a.cnf, b.cnf);
        assert_eq!(a.encoding.definitions, b.encoding.definitions);
    }
}
