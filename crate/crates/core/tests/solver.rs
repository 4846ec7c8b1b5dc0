//! The internal solver against brute force and known instances.

use procsat_core::encode::ClauseSet;
use procsat_core::harness::{compile, Options};
use procsat_core::solve::{check_model, solve, SolveError, Solver};
use procsat_core::{corpus, interp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cnf(rng: &mut impl Rng, vars: u32, clauses: usize, width: usize) -> ClauseSet {
    let mut cs = ClauseSet::new(vars);
    for _ in 0..clauses {
        let c: Vec<i32> = (0..width)
            .map(|_| {
                let v = rng.gen_range(1..=vars) as i32;
                if rng.gen() {
                    v
                } else {
                    -v
                }
            })
            .collect();
        cs.add(&c);
    }
    cs
}

fn satisfies(clauses: &[Vec<i32>], m: u32) -> bool {
    clauses
        .iter()
        .all(|c| c.iter().any(|&l| (m >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0)))
}

#[test]
fn assumptions_act_as_unit_clauses() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let vars = rng.gen_range(1..=12);
        let clauses = rng.gen_range(0..=50);
        let cs = random_cnf(&mut rng, vars, clauses, 3);
        let mut reused = Solver::new(&cs);
        for _ in 0..4 {
            let assume: Vec<i32> = (0..rng.gen_range(0..=3))
                .map(|_| rng.gen_range(1..=vars as i32) * if rng.gen() { 1 } else { -1 })
                .collect();
            let mut with_units = cs.clone();
            for &a in &assume {
                with_units.add(&[a]);
            }
            let brute = (0..1u32 << vars).any(|m| satisfies(&with_units.clauses, m));
            let fresh = solve(&cs, &assume).unwrap();
            let again = reused.solve(&assume).unwrap();
            assert_eq!(fresh.is_sat(), brute);
            assert_eq!(again.is_sat(), brute);
            for r in [fresh, again] {
                if let Some(m) = r.model {
                    assert!(check_model(&with_units, &m).unwrap());
                }
            }
        }
    }
}

/// Pigeonhole: `n + 1` pigeons in `n` holes.
fn pigeonhole(n: u32) -> ClauseSet {
    let var = |p: u32, h: u32| (p * n + h + 1) as i32;
    let mut cs = ClauseSet::new((n + 1) * n);
    for p in 0..=n {
        cs.add(&(0..n).map(|h| var(p, h)).collect::<Vec<_>>());
    }
    for h in 0..n {
        for p in 0..=n {
            for q in p + 1..=n {
                cs.add(&[-var(p, h), -var(q, h)]);
            }
        }
    }
    cs
}

#[test]
fn pigeonhole_is_unsat() {
    for n in 1..=5 {
        assert!(!solve(&pigeonhole(n), &[]).unwrap().is_sat(), "n = {n}");
    }
}

#[test]
fn decision_limit_gives_unknown() {
    let r = Solver::new(&pigeonhole(8)).with_decision_limit(10).solve(&[]);
    assert!(matches!(r, Err(SolveError::Unknown { .. })), "{r:?}");
}

#[test]
fn lfsr_key_is_recovered_from_nineteen_bits() {
    let opts = Options {
        overrides: vec![("len".into(), 19)],
        ..Default::default()
    };
    let c = compile(corpus::LFSR, &opts).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut solver = Solver::new(&c.cnf);
    for _ in 0..10 {
        let key: Vec<bool> = (0..19).map(|_| rng.gen()).collect();
        let stream = interp::run(&c.program, &key).unwrap().outputs;
        let assume: Vec<i32> = c
            .cnf
            .output_vars()
            .iter()
            .zip(&stream)
            .map(|(&v, &b)| if b { v as i32 } else { -(v as i32) })
            .collect();
        let model = solver.solve(&assume).unwrap().model.expect("keystream has a key");
        let found: Vec<bool> = c.cnf.input_vars().iter().map(|&v| model[v as usize - 1]).collect();
        assert_eq!(interp::run(&c.program, &found).unwrap().outputs, stream);
        // the first 19 keystream bits are the register itself
        assert_eq!(found, key);
    }
}
