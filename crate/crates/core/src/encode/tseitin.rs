//! Tseitin clausification of an encoding.
//!
//! Encoding variable `x_i` becomes DIMACS variable `i`. Every gate node
//! reachable from a definition gets a fresh variable, numbered after the
//! encoding variables in the order gates are first reached, except that a
//! definition's root gate reuses the defined variable itself. Negation is
//! folded into literals. Shared gates are clausified once.
//!
//! Gate clauses (o is the gate literal):
//!
//! ```text
//! and  (¬o ∨ a) (¬o ∨ b) (o ∨ ¬a ∨ ¬b)
//! or   (o ∨ ¬a) (o ∨ ¬b) (¬o ∨ a ∨ b)
//! xor  (¬o ∨ a ∨ b) (¬o ∨ ¬a ∨ ¬b) (o ∨ ¬a ∨ b) (o ∨ a ∨ ¬b)
//! ite  (¬c ∨ ¬t ∨ o) (¬c ∨ t ∨ ¬o) (c ∨ ¬e ∨ o) (c ∨ e ∨ ¬o)
//! ```
//!
//! Equivalence is xor with `o` negated. A definition with a two-level cover
//! contributes one clause per cube instead.

use super::clauses::{ClauseSet, MapEntry};
use crate::boolir::{Arena, Definition, Encoding, Formula, Node, TwoLevel, VarId};

/// Clauses added by each gate kind.
pub fn gate_cost(node: Node) -> usize {
    match node {
        Node::Const(_) | Node::Var(_) | Node::Not(_) => 0,
        Node::And(..) | Node::Or(..) => 3,
        Node::Xor(..) | Node::Equiv(..) | Node::Ite(..) => 4,
    }
}

pub fn tseitin(enc: &Encoding) -> ClauseSet {
    let mut t = Tseitin {
        arena: &enc.arena,
        cs: ClauseSet::new(enc.num_vars() as u32),
        lit: vec![None; enc.arena.len()],
        true_var: None,
    };
    for d in &enc.definitions {
        t.definition(d);
    }
    let names = enc.input_names();
    t.cs.inputs = enc
        .inputs
        .iter()
        .zip(names)
        .map(|(v, (name, index))| MapEntry { name, index, var: v.0 })
        .collect();
    t.cs.outputs = enc
        .outputs
        .iter()
        .zip(&enc.output_names)
        .map(|(v, (name, index))| MapEntry {
            name: name.clone(),
            index: *index,
            var: v.0,
        })
        .collect();
    t.cs
}

struct Tseitin<'a> {
    arena: &'a Arena,
    cs: ClauseSet,
    /// Literal standing for each node once it has been clausified.
    lit: Vec<Option<i32>>,
    true_var: Option<i32>,
}

fn var_lit(v: VarId) -> i32 {
    v.0 as i32
}

impl<'a> Tseitin<'a> {
    fn constant(&mut self, b: bool) -> i32 {
        let t = match self.true_var {
            Some(t) => t,
            None => {
                let t = self.cs.new_var() as i32;
                self.cs.add(&[t]);
                self.true_var = Some(t);
                t
            }
        };
        if b {
            t
        } else {
            -t
        }
    }

    fn definition(&mut self, d: &Definition) {
        let x = var_lit(d.var);
        if let Some(cover) = &d.cover {
            self.cover(x, cover);
            return;
        }
        let f = d.formula;
        match self.arena.node(f) {
            Node::Const(b) => {
                self.cs.add(&[if b { x } else { -x }]);
            }
            Node::Var(_) => {
                let a = self.literal(f);
                self.link(x, a);
            }
            Node::Not(g) => self.root(g, -x),
            _ => self.root(f, x),
        }
    }

    /// Make `out` the literal of gate `f` if `f` has none yet; otherwise
    /// link the two.
    fn root(&mut self, f: Formula, out: i32) {
        if self.arena.node(f).is_gate() && self.lit[f.index()].is_none() {
            self.gate(f, out);
        } else {
            let a = self.literal(f);
            self.link(out, a);
        }
    }

    fn link(&mut self, x: i32, a: i32) {
        self.cs.add(&[-x, a]);
        self.cs.add(&[x, -a]);
    }

    fn cover(&mut self, x: i32, c: &TwoLevel) {
        let lits = |cube: &crate::boolir::Cube| -> Vec<i32> {
            (0..c.support.len())
                .filter(|k| cube.care >> k & 1 == 1)
                .map(|k| {
                    let v = var_lit(c.support[k]);
                    if cube.value >> k & 1 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect()
        };
        for cube in &c.on {
            let mut cl = lits(cube);
            cl.push(x);
            self.cs.add(&cl);
        }
        for cube in &c.off {
            let mut cl = lits(cube);
            cl.push(-x);
            self.cs.add(&cl);
        }
    }

    /// Literal for `f`, clausifying its cone as needed.
    fn literal(&mut self, f: Formula) -> i32 {
        if let Some(l) = self.lit[f.index()] {
            return l;
        }
        // Post-order without recursion: formulas can be deep.
        let mut stack = vec![(f, false)];
        while let Some((g, expanded)) = stack.pop() {
            if self.lit[g.index()].is_some() {
                continue;
            }
            let node = self.arena.node(g);
            match node {
                Node::Const(b) => {
                    let l = self.constant(b);
                    self.lit[g.index()] = Some(l);
                }
                Node::Var(v) => self.lit[g.index()] = Some(var_lit(v)),
                _ if !expanded => {
                    stack.push((g, true));
                    for c in node.children().collect::<Vec<_>>().into_iter().rev() {
                        if self.lit[c.index()].is_none() {
                            stack.push((c, false));
                        }
                    }
                }
                Node::Not(a) => {
                    let l = -self.lit[a.index()].unwrap();
                    self.lit[g.index()] = Some(l);
                }
                _ => {
                    let o = self.cs.new_var() as i32;
                    self.gate(g, o);
                }
            }
        }
        self.lit[f.index()].unwrap()
    }

    /// Emit the clauses of gate `g` with output literal `o`.
    fn gate(&mut self, g: Formula, o: i32) {
        let node = self.arena.node(g);
        let kids: Vec<Formula> = node.children().collect();
        let l: Vec<i32> = kids.iter().map(|&c| self.literal(c)).collect();
        self.lit[g.index()] = Some(o);
        match node {
            Node::And(..) => {
                let (a, b) = (l[0], l[1]);
                self.cs.add(&[-o, a]);
                self.cs.add(&[-o, b]);
                self.cs.add(&[o, -a, -b]);
            }
            Node::Or(..) => {
                let (a, b) = (l[0], l[1]);
                self.cs.add(&[o, -a]);
                self.cs.add(&[o, -b]);
                self.cs.add(&[-o, a, b]);
            }
            Node::Xor(..) | Node::Equiv(..) => {
                let o = if matches!(node, Node::Equiv(..)) { -o } else { o };
                let (a, b) = (l[0], l[1]);
                self.cs.add(&[-o, a, b]);
                self.cs.add(&[-o, -a, -b]);
                self.cs.add(&[o, -a, b]);
                self.cs.add(&[o, a, -b]);
            }
            Node::Ite(..) => {
                let (c, t, e) = (l[0], l[1], l[2]);
                self.cs.add(&[-c, -t, o]);
                self.cs.add(&[-c, t, -o]);
                self.cs.add(&[c, -e, o]);
                self.cs.add(&[c, e, -o]);
            }
            Node::Const(_) | Node::Var(_) | Node::Not(_) => unreachable!("not a gate"),
        }
    }
}
