//! Disjunctive normal form of each definition, either as the full list of
//! minterms or as a minimized cover.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use super::truth::{minimal_cover, TruthTable, MAX_VARS};
use crate::boolir::{Cube, Encoding, SupportCache, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DnfError {
    #[error("definition of {var} depends on {size} variables (at most {MAX_VARS} allowed); run minimize/split first")]
    SupportTooLarge { var: VarId, size: usize },
}

/// `var = cube | cube | …` over `support`; no cubes is falsum, a cube with
/// no literals is verum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfDefinition {
    pub var: VarId,
    pub support: Vec<VarId>,
    pub cubes: Vec<Cube>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DnfSystem {
    pub definitions: Vec<DnfDefinition>,
}

impl DnfDefinition {
    pub fn eval(&self, value: impl Fn(VarId) -> bool) -> bool {
        let m = self
            .support
            .iter()
            .enumerate()
            .fold(0u32, |acc, (k, &v)| acc | (value(v) as u32) << k);
        self.cubes.iter().any(|c| c.contains(m))
    }
}

impl fmt::Display for DnfDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.var)?;
        if self.cubes.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.cubes.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            if c.care == 0 {
                write!(f, "1")?;
            }
            let mut first = true;
            for (k, v) in self.support.iter().enumerate() {
                if c.care >> k & 1 == 0 {
                    continue;
                }
                if !first {
                    write!(f, " & ")?;
                }
                first = false;
                let neg = if c.value >> k & 1 == 1 { "" } else { "~" };
                write!(f, "{neg}{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for DnfSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.definitions {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

/// DNF of every definition: all minterms when `full`, otherwise a
/// prime-implicant cover (the stored one if the definition was minimized).
pub fn emit_dnf(enc: &Encoding, full: bool) -> Result<DnfSystem, DnfError> {
    let mut cache = SupportCache::with_cap(&enc.arena, MAX_VARS);
    let supports = enc
        .definitions
        .iter()
        .map(|d| match cache.capped(&enc.arena, d.formula) {
            Some(s) => Ok(s.to_vec()),
            None => Err(DnfError::SupportTooLarge {
                var: d.var,
                size: SupportCache::new(&enc.arena).support(&enc.arena, d.formula).len(),
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let definitions = enc
        .definitions
        .par_iter()
        .zip(supports)
        .map(|(d, support)| {
            let cubes = match (&d.cover, full) {
                (Some(c), false) => {
                    return DnfDefinition {
                        var: d.var,
                        support: c.support.clone(),
                        cubes: c.on.clone(),
                    }
                }
                _ => {
                    let t = TruthTable::of(&enc.arena, d.formula, &support);
                    if full {
                        let care = (1u32 << support.len()) - 1;
                        t.minterms().map(|m| Cube { care, value: m }).collect()
                    } else {
                        minimal_cover(&t)
                    }
                }
            };
            DnfDefinition {
                var: d.var,
                support,
                cubes,
            }
        })
        .collect();
    Ok(DnfSystem { definitions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolir::{Arena, Formula, Op, Origin};

    fn single(build: impl Fn(&mut Arena, &[Formula]) -> Formula, n: usize, full: bool) -> String {
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
        emit_dnf(&enc, full).unwrap().to_string()
    }

    #[test]
    fn known_forms() {
        assert_eq!(single(|a, v| a.and(v[0], v[1]), 2, false), "x3 = x1 & x2\n");
        assert_eq!(single(|a, v| a.xor(v[0], v[1]), 2, true), "x3 = x1 & ~x2 | ~x1 & x2\n");
        assert_eq!(single(|_, _| Arena::FALSE, 1, false), "x2 = 0\n");
        assert_eq!(single(|_, _| Arena::TRUE, 1, true), "x2 = 1\n");
        assert_eq!(single(|a, v| a.or(v[0], v[1]), 2, false), "x3 = x1 | x2\n");
        assert_eq!(
            single(|a, v| a.or(v[0], v[1]), 2, true),
            "x3 = x1 & ~x2 | ~x1 & x2 | x1 & x2\n"
        );
    }

    #[test]
    fn guard() {
        let mut enc = Encoding::new();
        let fs: Vec<Formula> = (0..17)
            .map(|_| {
                let v = enc.new_var(Origin::Input, None);
                enc.arena.var(v)
            })
            .collect();
        let f = enc.arena.chain(Op::Xor, &fs);
        let x = enc.new_var(Origin::Auxiliary, None);
        enc.define(x, f);
        let err = emit_dnf(&enc, false).unwrap_err();
        assert_eq!(err, DnfError::SupportTooLarge { var: x, size: 17 });
        assert!(err.to_string().contains("minimize"));
    }
}
