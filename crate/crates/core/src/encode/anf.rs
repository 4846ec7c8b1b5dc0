//! Algebraic normal form: each definition as a GF(2) sum of monomials.
//!
//! Definitions with support above 16 variables are split first, so every
//! equation comes from the Möbius transform of a truth table.

use std::fmt;

use rayon::prelude::*;

use super::minimize::split_large;
use super::truth::{TruthTable, MAX_VARS};
use crate::boolir::{Encoding, SupportCache, VarId};

/// `var = m1 + m2 + …`; a monomial is a sorted set of variables, the empty
/// monomial is the constant 1. Monomials are ordered by degree descending,
/// then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfEquation {
    pub var: VarId,
    pub monomials: Vec<Vec<VarId>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnfSystem {
    pub equations: Vec<AnfEquation>,
}

impl AnfEquation {
    /// Value of the right-hand side.
    pub fn eval(&self, value: impl Fn(VarId) -> bool) -> bool {
        self.monomials
            .iter()
            .fold(false, |acc, m| acc ^ m.iter().all(|&v| value(v)))
    }
}

impl fmt::Display for AnfEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.var)?;
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_empty() {
                write!(f, "1")?;
            }
            for (j, v) in m.iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for AnfSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.equations {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn emit_anf(enc: &Encoding) -> AnfSystem {
    let (enc, _, _) = split_large(enc, MAX_VARS);
    let mut cache = SupportCache::new(&enc.arena);
    let supports: Vec<Vec<VarId>> = enc
        .definitions
        .iter()
        .map(|d| cache.support(&enc.arena, d.formula).to_vec())
        .collect();
    let equations = enc
        .definitions
        .par_iter()
        .zip(supports)
        .map(|(d, support)| {
            let coeffs = TruthTable::of(&enc.arena, d.formula, &support).mobius();
            let mut monomials: Vec<Vec<VarId>> = coeffs
                .minterms()
                .map(|m| {
                    (0..support.len())
                        .filter(|k| m >> k & 1 == 1)
                        .map(|k| support[k])
                        .collect()
                })
                .collect();
            monomials.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            AnfEquation { var: d.var, monomials }
        })
        .collect();
    AnfSystem { equations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolir::{Formula, Op, Origin};

    fn single(build: impl Fn(&mut crate::boolir::Arena, &[Formula]) -> Formula, n: usize) -> String {
        let mut enc = Encoding::new();
        let fs: Vec<Formula> = (0..n)
            .map(|_| {
                let v = enc.new_var(Origin::Input, None);
                enc.arena.var(v)
            })
            .collect();
        let f = build(&mut enc.arena, &fs);
        let x = enc.new_var(Origin::Auxiliary, None);
        enc.define(x, f);
        emit_anf(&enc).to_string()
    }

    #[test]
    fn known_forms() {
        assert_eq!(single(|a, v| a.or(v[0], v[1]), 2), "x3 = x1*x2 + x1 + x2\n");
        assert_eq!(single(|a, v| a.xor(v[0], v[1]), 2), "x3 = x1 + x2\n");
        assert_eq!(
            single(
                |a, v| {
                    let ab = a.and(v[0], v[1]);
                    let ac = a.and(v[0], v[2]);
                    let bc = a.and(v[1], v[2]);
                    a.chain(Op::Or, &[ab, ac, bc])
                },
                3
            ),
            "x4 = x1*x2 + x1*x3 + x2*x3\n"
        );
        assert_eq!(single(|a, v| a.not(v[0]), 1), "x2 = x1 + 1\n");
        assert_eq!(single(|_, _| crate::boolir::Arena::FALSE, 1), "x2 = 0\n");
    }

    #[test]
    fn wide_definitions_are_split() {
        let mut enc = Encoding::new();
        let fs: Vec<Formula> = (0..20)
            .map(|_| {
                let v = enc.new_var(Origin::Input, None);
                enc.arena.var(v)
            })
            .collect();
        let pairs: Vec<Formula> = fs.chunks(2).map(|p| enc.arena.and(p[0], p[1])).collect();
        let f = enc.arena.chain(Op::Or, &pairs);
        let x = enc.new_var(Origin::Auxiliary, None);
        enc.define(x, f);
        enc.outputs.push(x);
        let anf = emit_anf(&enc);
        assert!(anf.equations.len() > 1);
        assert_eq!(anf.equations.last().unwrap().var, x);
        // evaluate the system in order and compare with the formula
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let inputs: Vec<bool> = (0..20).map(|_| rng.gen_bool(0.8)).collect();
            let mut vals = std::collections::HashMap::new();
            for (i, &b) in inputs.iter().enumerate() {
                vals.insert(VarId(i as u32 + 1), b);
            }
            for e in &anf.equations {
                let r = e.eval(|v| vals[&v]);
                vals.insert(e.var, r);
            }
            assert_eq!(vals[&x], enc.output_values(&inputs).unwrap()[0]);
        }
    }
}
