//! Boolean formula DAG and propositional encodings.
//!
//! An [`Encoding`] is an ordered list of definitions `x' ≡ φ` over encoding
//! variables, together with the designated input and output variables. It is
//! produced by symbolic execution and consumed by every emitter.

mod arena;
mod support;

pub use arena::{Arena, Formula, Node, Op, Unassigned, VarId};
pub use support::SupportCache;

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Input,
    Auxiliary,
}

/// Which program location an encoding variable was created for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Label {
    pub name: String,
    pub index: usize,
    /// Number of definitions emitted before this variable was created.
    pub step: usize,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]@{}", self.name, self.index, self.step)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncVar {
    pub id: VarId,
    pub origin: Origin,
    pub label: Option<Label>,
}

/// A product term over a definition's support. Bit `k` of `care` says the
/// `k`-th support variable occurs; bit `k` of `value` gives its polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub care: u32,
    pub value: u32,
}

impl Cube {
    pub fn literals(self) -> u32 {
        self.care.count_ones()
    }

    pub fn contains(self, minterm: u32) -> bool {
        minterm & self.care == self.value
    }
}

/// Two-level form of a definition: `on` covers the function, `off` covers
/// its complement. Together they give the definition's clauses directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoLevel {
    pub support: Vec<VarId>,
    pub on: Vec<Cube>,
    pub off: Vec<Cube>,
}

impl TwoLevel {
    pub fn clause_count(&self) -> usize {
        self.on.len() + self.off.len()
    }

    /// Sum-of-products formula for the on-cover.
    pub fn to_formula(&self, arena: &mut Arena) -> Formula {
        let vars: Vec<Formula> = self.support.iter().map(|&v| arena.var(v)).collect();
        let terms: Vec<Formula> = self
            .on
            .iter()
            .map(|c| {
                let lits: Vec<Formula> = (0..vars.len())
                    .filter(|k| c.care >> k & 1 == 1)
                    .map(|k| {
                        if c.value >> k & 1 == 1 {
                            vars[k]
                        } else {
                            arena.not(vars[k])
                        }
                    })
                    .collect();
                arena.chain(Op::And, &lits)
            })
            .collect();
        arena.chain(Op::Or, &terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub var: VarId,
    pub formula: Formula,
    /// Set by the minimizer; `formula` is then the cover's SOP.
    pub cover: Option<TwoLevel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("{0} is defined more than once")]
    Redefined(VarId),
    #[error("definition of {var} references {used}, which is neither an input nor defined earlier")]
    NotStratified { var: VarId, used: VarId },
    #[error("input {0} was allocated after an auxiliary variable")]
    LateInput(VarId),
    #[error("output {0} is listed twice")]
    DuplicateOutput(VarId),
    #[error("expected {expected} input bits, got {got}")]
    InputWidth { expected: usize, got: usize },
}

#[derive(Debug, Clone, Default)]
pub struct Encoding {
    pub arena: Arena,
    /// `vars[i]` has id `i + 1`.
    pub vars: Vec<EncVar>,
    pub definitions: Vec<Definition>,
    pub inputs: Vec<VarId>,
    pub outputs: Vec<VarId>,
    /// Program name and element index of each output, parallel to
    /// `outputs`.
    pub output_names: Vec<(String, usize)>,
}

impl Encoding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_info(&self, v: VarId) -> &EncVar {
        &self.vars[v.index()]
    }

    pub fn new_var(&mut self, origin: Origin, label: Option<Label>) -> VarId {
        let id = VarId(self.vars.len() as u32 + 1);
        self.vars.push(EncVar { id, origin, label });
        if origin == Origin::Input {
            self.inputs.push(id);
        }
        id
    }

    pub fn define(&mut self, var: VarId, formula: Formula) {
        self.definitions.push(Definition {
            var,
            formula,
            cover: None,
        });
    }

    /// Check the structural invariants: inputs first, each variable defined
    /// at most once, definitions only reference earlier variables, outputs
    /// injective.
    pub fn validate(&self) -> Result<(), EncodingError> {
        let mut seen_aux = false;
        for v in &self.vars {
            match v.origin {
                Origin::Input if seen_aux => return Err(EncodingError::LateInput(v.id)),
                Origin::Input => {}
                Origin::Auxiliary => seen_aux = true,
            }
        }
        let mut known = vec![false; self.vars.len() + 1];
        for &i in &self.inputs {
            known[i.0 as usize] = true;
        }
        let mut support = SupportCache::new(&self.arena);
        for d in &self.definitions {
            if known[d.var.0 as usize] {
                return Err(EncodingError::Redefined(d.var));
            }
            let used = match &d.cover {
                Some(c) => c.support.clone(),
                None => support.support(&self.arena, d.formula).to_vec(),
            };
            if let Some(&u) = used.iter().find(|u| !known[u.0 as usize]) {
                return Err(EncodingError::NotStratified { var: d.var, used: u });
            }
            known[d.var.0 as usize] = true;
        }
        let mut outs = self.outputs.clone();
        outs.sort_unstable();
        if let Some(w) = outs.windows(2).find(|w| w[0] == w[1]) {
            return Err(EncodingError::DuplicateOutput(w[0]));
        }
        Ok(())
    }

    /// Values of all variables for 64 input assignments at once. `inputs[k]`
    /// holds the lanes of the `k`-th input. Variables that are neither
    /// inputs nor defined evaluate to 0.
    pub fn evaluate_packed(&self, inputs: &[u64]) -> Result<Vec<u64>, EncodingError> {
        if inputs.len() != self.inputs.len() {
            return Err(EncodingError::InputWidth {
                expected: self.inputs.len(),
                got: inputs.len(),
            });
        }
        let mut values = vec![0u64; self.vars.len()];
        for (&v, &x) in self.inputs.iter().zip(inputs) {
            values[v.index()] = x;
        }
        let mut memo: Vec<Option<u64>> = vec![None; self.arena.len()];
        let mut stack = Vec::new();
        for d in &self.definitions {
            values[d.var.index()] = eval_node(&self.arena, d.formula, &values, &mut memo, &mut stack);
        }
        Ok(values)
    }

    /// Values of all variables for one input assignment.
    pub fn evaluate(&self, inputs: &[bool]) -> Result<Vec<bool>, EncodingError> {
        let lanes: Vec<u64> = inputs.iter().map(|&b| b as u64).collect();
        Ok(self.evaluate_packed(&lanes)?.into_iter().map(|w| w & 1 == 1).collect())
    }

    pub fn output_values(&self, inputs: &[bool]) -> Result<Vec<bool>, EncodingError> {
        let all = self.evaluate(inputs)?;
        Ok(self.outputs.iter().map(|v| all[v.index()]).collect())
    }

    /// Program name and element index of each input, parallel to `inputs`.
    pub fn input_names(&self) -> Vec<(String, usize)> {
        self.inputs
            .iter()
            .map(|&v| match &self.var_info(v).label {
                Some(l) => (l.name.clone(), l.index),
                None => (v.to_string(), 0),
            })
            .collect()
    }
}

/// Iterative packed evaluation of `f` with a memo shared across
/// definitions. Valid because a node's value only depends on variables
/// whose values are fixed once they have been defined.
fn eval_node(
    arena: &Arena,
    f: Formula,
    values: &[u64],
    memo: &mut [Option<u64>],
    stack: &mut Vec<(Formula, bool)>,
) -> u64 {
    stack.clear();
    stack.push((f, false));
    while let Some((g, expanded)) = stack.pop() {
        if memo[g.index()].is_some() {
            continue;
        }
        let node = arena.node(g);
        if !expanded {
            stack.push((g, true));
            for c in node.children() {
                if memo[c.index()].is_none() {
                    stack.push((c, false));
                }
            }
            continue;
        }
        let get = |c: Formula| memo[c.index()].expect("children evaluated first");
        let v = match node {
            Node::Const(b) => {
                if b {
                    !0
                } else {
                    0
                }
            }
            Node::Var(x) => values[x.index()],
            Node::Not(a) => !get(a),
            Node::And(a, b) => get(a) & get(b),
            Node::Or(a, b) => get(a) | get(b),
            Node::Xor(a, b) => get(a) ^ get(b),
            Node::Equiv(a, b) => !(get(a) ^ get(b)),
            Node::Ite(c, t, e) => (get(c) & get(t)) | (!get(c) & get(e)),
        };
        memo[g.index()] = Some(v);
    }
    memo[f.index()].unwrap()
}
