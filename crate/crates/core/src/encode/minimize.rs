//! Two-level minimization of definitions with small support.
//!
//! A definition whose support has at most `limit` variables is replaced by
//! minimal covers of its on-set and off-set; each cube becomes one clause
//! `(x ∨ ¬cube)` or `(¬x ∨ ¬cube)` and no auxiliary gate variables are
//! needed. The replacement is kept only when it yields no more clauses
//! than the gates it removes. Definitions with larger support are first
//! split: maximal sub-formulas that fit the limit are pulled out as new
//! auxiliary definitions.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::truth::{minimal_cover, TruthTable};
use super::tseitin::{gate_cost, tseitin};
use crate::boolir::{Arena, Definition, Encoding, Formula, Node, Origin, SupportCache, TwoLevel};

pub const DEFAULT_LIMIT: usize = 12;
pub const MIN_LIMIT: usize = 2;
pub const MAX_LIMIT: usize = 16;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinimizeStats {
    /// Definitions that had to be split.
    pub split: usize,
    /// Auxiliary definitions introduced by splitting.
    pub introduced: usize,
    /// Definitions replaced by a two-level cover.
    pub minimized: usize,
    pub clauses_before: usize,
    pub clauses_after: usize,
    /// The minimized clause set was larger, so the input was kept.
    pub reverted: bool,
}

/// Split definitions whose support exceeds `limit`. Returns the new
/// encoding with the number of split definitions and of new definitions.
/// A definition is left oversized only when no gate below its root fits
/// the limit (possible for `limit < 3`).
pub fn split_large(enc: &Encoding, limit: usize) -> (Encoding, usize, usize) {
    let mut out = enc.clone();
    let defs = std::mem::take(&mut out.definitions);
    let mut cache = SupportCache::with_cap(&out.arena, limit);
    let (mut split, mut introduced) = (0, 0);
    for d in defs {
        let mut f = d.formula;
        let mut pulled = Vec::new();
        while cache.capped(&out.arena, f).is_none() {
            let front = frontier(&out.arena, &mut cache, f);
            if front.is_empty() {
                break;
            }
            let label = out.var_info(d.var).label.clone();
            let mut repl = HashMap::new();
            for g in front {
                let y = out.new_var(Origin::Auxiliary, label.clone());
                pulled.push(Definition {
                    var: y,
                    formula: g,
                    cover: None,
                });
                repl.insert(g, out.arena.var(y));
            }
            f = out.arena.rewrite(f, &|_, g| repl.get(&g).copied());
        }
        if !pulled.is_empty() {
            split += 1;
            introduced += pulled.len();
        }
        out.definitions.extend(pulled);
        out.definitions.push(Definition { formula: f, ..d });
    }
    (out, split, introduced)
}

/// Largest gates below `f` whose support fits the cache's cap, ordered by
/// their lowest variable and then by node.
fn frontier(arena: &Arena, cache: &mut SupportCache, f: Formula) -> Vec<Formula> {
    let mut found = HashSet::new();
    let mut seen = HashSet::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        if !seen.insert(g) {
            continue;
        }
        for c in arena.node(g).children() {
            let c = match arena.node(c) {
                Node::Not(a) => a,
                _ => c,
            };
            if arena.is_atom(c) {
                continue;
            }
            if cache.capped(arena, c).is_some() {
                found.insert(c);
            } else {
                stack.push(c);
            }
        }
    }
    let mut front: Vec<(u32, Formula)> = found
        .into_iter()
        .map(|g| (cache.capped(arena, g).unwrap()[0].0, g))
        .collect();
    front.sort_unstable_by_key(|&(v, g)| (v, g.index()));
    front.into_iter().map(|(_, g)| g).collect()
}

/// Clauses Tseitin spends on definition `d` alone, given how many
/// definitions reach each node.
fn exclusive_cost(arena: &Arena, owners: &[u32], d: &Definition) -> usize {
    if let Some(c) = &d.cover {
        return c.clause_count();
    }
    let root = match arena.node(d.formula) {
        Node::Const(_) => return 1,
        Node::Not(g) => g,
        _ => d.formula,
    };
    if !arena.node(root).is_gate() {
        return 2;
    }
    let mut cost = if owners[root.index()] > 1 { 2 } else { 0 };
    for g in arena.cone(&[root]) {
        if owners[g.index()] == 1 {
            cost += gate_cost(arena.node(g));
        }
    }
    cost
}

/// Minimize every definition whose support has at most `limit` variables.
/// The result is never larger than Tseitin applied to `enc`.
pub fn minimize(enc: &Encoding, limit: usize) -> (Encoding, MinimizeStats) {
    assert!((MIN_LIMIT..=MAX_LIMIT).contains(&limit), "limit {limit} out of range");
    let mut stats = MinimizeStats {
        clauses_before: tseitin(enc).len(),
        ..Default::default()
    };
    let (mut out, split, introduced) = split_large(enc, limit);
    stats.split = split;
    stats.introduced = introduced;

    let arena = &out.arena;
    let mut owners = vec![0u32; arena.len()];
    for d in &out.definitions {
        for g in arena.cone(&[d.formula]) {
            owners[g.index()] += 1;
        }
    }
    let mut cache = SupportCache::with_cap(arena, limit);
    let supports: Vec<Option<Vec<_>>> = out
        .definitions
        .iter()
        .map(|d| match d.cover {
            None => cache
                .capped(arena, d.formula)
                .map(|s| s.to_vec())
                .filter(|s| !s.is_empty()),
            Some(_) => None,
        })
        .collect();
    let covers: Vec<Option<TwoLevel>> = out
        .definitions
        .par_iter()
        .zip(supports)
        .map(|(d, support)| {
            let support = support?;
            let t = TruthTable::of(arena, d.formula, &support);
            let cover = TwoLevel {
                on: minimal_cover(&t),
                off: minimal_cover(&t.complement()),
                support,
            };
            (cover.clause_count() <= exclusive_cost(arena, &owners, d)).then_some(cover)
        })
        .collect();
    for (i, cover) in covers.into_iter().enumerate() {
        if let Some(cover) = cover {
            let f = cover.to_formula(&mut out.arena);
            let d = &mut out.definitions[i];
            d.formula = f;
            d.cover = Some(cover);
            stats.minimized += 1;
        }
    }
    stats.clauses_after = tseitin(&out).len();
    if stats.clauses_after > stats.clauses_before {
        stats.reverted = true;
        stats.clauses_after = stats.clauses_before;
        return (enc.clone(), stats);
    }
    (out, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolir::{Op, VarId};

    fn inputs(enc: &mut Encoding, n: usize) -> Vec<Formula> {
        (0..n)
            .map(|_| {
                let v = enc.new_var(Origin::Input, None);
                enc.arena.var(v)
            })
            .collect()
    }

    fn same_function(a: &Encoding, b: &Encoding) {
        let n = a.inputs.len();
        assert!(n <= 16);
        for m in 0..1u32 << n {
            let x: Vec<bool> = (0..n).map(|k| m >> k & 1 == 1).collect();
            assert_eq!(a.output_values(&x).unwrap(), b.output_values(&x).unwrap());
        }
    }

    #[test]
    fn majority_definition_gets_six_clauses() {
        let mut enc = Encoding::new();
        let v = inputs(&mut enc, 3);
        let ab = enc.arena.and(v[0], v[1]);
        let ac = enc.arena.and(v[0], v[2]);
        let bc = enc.arena.and(v[1], v[2]);
        let f = enc.arena.chain(Op::Or, &[ab, ac, bc]);
        let x = enc.new_var(Origin::Auxiliary, None);
        enc.define(x, f);
        enc.outputs.push(x);
        enc.output_names.push(("m".into(), 0));
        // Tseitin: five gates, 15 clauses
        assert_eq!(tseitin(&enc).len(), 15);
        let (min, stats) = minimize(&enc, DEFAULT_LIMIT);
        assert_eq!(stats.minimized, 1);
        let cs = tseitin(&min);
        assert_eq!(cs.len(), 6);
        assert_eq!(cs.num_vars, 4);
        same_function(&enc, &min);
    }

    #[test]
    fn xor_is_not_worse() {
        let mut enc = Encoding::new();
        let v = inputs(&mut enc, 4);
        let f = enc.arena.chain(Op::Xor, &v);
        let x = enc.new_var(Origin::Auxiliary, None);
        enc.define(x, f);
        enc.outputs.push(x);
        enc.output_names.push(("p".into(), 0));
        let (min, stats) = minimize(&enc, DEFAULT_LIMIT);
        // 16 cubes against 12 gate clauses: kept as gates
        assert_eq!(stats.minimized, 0);
        assert_eq!(tseitin(&min).len(), 12);
    }

    #[test]
    fn splitting_respects_the_limit() {
        let mut enc = Encoding::new();
        let v = inputs(&mut enc, 10);
        let pairs: Vec<Formula> = v.chunks(2).map(|p| enc.arena.and(p[0], p[1])).collect();
        let f = enc.arena.chain(Op::Xor, &pairs);
        let x = enc.new_var(Origin::Auxiliary, None);
        enc.define(x, f);
        enc.outputs.push(x);
        enc.output_names.push(("s".into(), 0));
        for limit in [2, 3, 4, 6] {
            let (out, split, introduced) = split_large(&enc, limit);
            assert_eq!(split, 1);
            assert!(introduced > 0);
            out.validate().unwrap();
            let mut cache = SupportCache::new(&out.arena);
            for d in &out.definitions {
                assert!(cache.support(&out.arena, d.formula).len() <= limit);
            }
            same_function(&enc, &out);
            let (min, stats) = minimize(&enc, limit);
            assert!(stats.clauses_after <= stats.clauses_before);
            same_function(&enc, &min);
        }
    }

    #[test]
    fn split_order_is_by_lowest_variable() {
        let mut enc = Encoding::new();
        let v = inputs(&mut enc, 6);
        let hi = enc.arena.and(v[4], v[5]);
        let lo = enc.arena.or(v[0], v[1]);
        let mid = enc.arena.xor(v[2], v[3]);
        let t = enc.arena.ite(lo, mid, hi);
        let x = enc.new_var(Origin::Auxiliary, None);
        enc.define(x, t);
        let (out, _, introduced) = split_large(&enc, 3);
        assert_eq!(introduced, 3);
        let first: Vec<VarId> = out.definitions[..3]
            .iter()
            .map(|d| SupportCache::new(&out.arena).support(&out.arena, d.formula)[0])
            .collect();
        assert_eq!(first, vec![VarId(1), VarId(3), VarId(5)]);
    }

    #[test]
    fn corpus_minimization_preserves_function() {
        let enc = crate::symbex::translate_source(crate::corpus::GEFFE, &[]).unwrap();
        let (min, stats) = minimize(&enc, DEFAULT_LIMIT);
        assert!(stats.minimized > 0);
        assert!(stats.clauses_after <= stats.clauses_before);
        min.validate().unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x: Vec<bool> = (0..enc.inputs.len()).map(|_| rng.gen()).collect();
            assert_eq!(enc.output_values(&x).unwrap(), min.output_values(&x).unwrap());
        }
    }
}
