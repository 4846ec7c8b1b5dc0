//! Optional post-pass that inlines single-use definitions.

use std::collections::HashMap;

use crate::boolir::{Arena, EncVar, Encoding, Formula, Origin, SupportCache, VarId};

/// Inline every auxiliary variable that occurs in exactly one later
/// definition and is not an output, then renumber the remaining variables
/// densely (inputs keep ids `1..=|X^in|`).
pub fn forward_single_use(enc: &Encoding) -> Encoding {
    let n = enc.num_vars();
    let mut uses = vec![0usize; n + 1];
    let mut support = SupportCache::new(&enc.arena);
    for d in &enc.definitions {
        for v in support.support(&enc.arena, d.formula) {
            uses[v.0 as usize] += 1;
        }
    }
    let mut pinned = vec![false; n + 1];
    for &v in enc.inputs.iter().chain(&enc.outputs) {
        pinned[v.0 as usize] = true;
    }

    // Rebuild every kept definition in a fresh arena with inlined and
    // renumbered variables.
    let mut out = Encoding::new();
    let mut renamed: HashMap<VarId, VarId> = HashMap::new();
    for &i in &enc.inputs {
        let info = enc.var_info(i);
        let v = out.new_var(Origin::Input, info.label.clone());
        renamed.insert(i, v);
    }
    let mut inlined: HashMap<VarId, Formula> = HashMap::new();
    for d in &enc.definitions {
        let f = copy_into(
            &enc.arena,
            d.formula,
            &mut out.arena,
            &|v| inlined.get(&v).copied(),
            &renamed,
        );
        if uses[d.var.0 as usize] == 1 && !pinned[d.var.0 as usize] {
            inlined.insert(d.var, f);
            continue;
        }
        let EncVar { label, .. } = enc.var_info(d.var).clone();
        let v = out.new_var(Origin::Auxiliary, label);
        renamed.insert(d.var, v);
        out.define(v, f);
    }
    out.outputs = enc.outputs.iter().map(|v| renamed[v]).collect();
    out.output_names = enc.output_names.clone();
    out
}

/// Copy the cone of `f` from `src` into `dst`, replacing variables by
/// inlined formulas (already in `dst`) or renamed variables.
fn copy_into(
    src: &Arena,
    f: Formula,
    dst: &mut Arena,
    inlined: &dyn Fn(VarId) -> Option<Formula>,
    renamed: &HashMap<VarId, VarId>,
) -> Formula {
    use crate::boolir::Node;
    let mut map: HashMap<Formula, Formula> = HashMap::new();
    for g in src.cone(&[f]) {
        let get = |c: Formula| map[&c];
        let new = match src.node(g) {
            Node::Const(b) => Arena::constant(b),
            Node::Var(v) => match inlined(v) {
                Some(x) => x,
                None => dst.var(renamed[&v]),
            },
            Node::Not(a) => {
                let a = get(a);
                dst.not(a)
            }
            Node::And(a, b) => {
                let (a, b) = (get(a), get(b));
                dst.and(a, b)
            }
            Node::Or(a, b) => {
                let (a, b) = (get(a), get(b));
                dst.or(a, b)
            }
            Node::Xor(a, b) => {
                let (a, b) = (get(a), get(b));
                dst.xor(a, b)
            }
            Node::Equiv(a, b) => {
                let (a, b) = (get(a), get(b));
                dst.equiv(a, b)
            }
            Node::Ite(c, t, e) => {
                let (c, t, e) = (get(c), get(t), get(e));
                dst.ite(c, t, e)
            }
        };
        map.insert(g, new);
    }
    map[&f]
}
