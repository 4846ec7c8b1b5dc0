//! Hash-consed formula arena.
//!
//! Nodes are interned: structurally equal nodes share one [`Formula`] handle,
//! so handle equality is structural equality. Children are always created
//! before their parents, so node indices are a topological order of the DAG.

use std::collections::HashMap;

use thiserror::Error;

/// An encoding variable. Ids are dense and start at 1 so they map directly
/// onto DIMACS variable numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl std::fmt::Display for VarId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Handle to an interned node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula(pub(crate) u32);

impl Formula {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Const(bool),
    Var(VarId),
    Not(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Xor(Formula, Formula),
    Equiv(Formula, Formula),
    Ite(Formula, Formula, Formula),
}

impl Node {
    pub fn children(&self) -> impl Iterator<Item = Formula> {
        let (a, b, c) = match *self {
            Node::Const(_) | Node::Var(_) => (None, None, None),
            Node::Not(x) => (Some(x), None, None),
            Node::And(x, y) | Node::Or(x, y) | Node::Xor(x, y) | Node::Equiv(x, y) => (Some(x), Some(y), None),
            Node::Ite(x, y, z) => (Some(x), Some(y), Some(z)),
        };
        a.into_iter().chain(b).chain(c)
    }

    pub fn is_gate(&self) -> bool {
        !matches!(self, Node::Const(_) | Node::Var(_))
    }
}

/// Operator selector for the generic [`Arena::mk`] constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Not,
    And,
    Or,
    Xor,
    Equiv,
    Ite,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("variable {0} is not assigned")]
pub struct Unassigned(pub VarId);

#[derive(Debug, Clone)]
pub struct Arena {
    nodes: Vec<Node>,
    index: HashMap<Node, Formula>,
}

impl Default for Arena {
    fn default() -> Self {
        Self::new()
    }
}

impl Arena {
    pub const FALSE: Formula = Formula(0);
    pub const TRUE: Formula = Formula(1);

    pub fn new() -> Self {
        let mut a = Arena {
            nodes: Vec::new(),
            index: HashMap::new(),
        };
        a.intern(Node::Const(false));
        a.intern(Node::Const(true));
        a
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, f: Formula) -> Node {
        self.nodes[f.index()]
    }

    pub fn constant(b: bool) -> Formula {
        if b {
            Self::TRUE
        } else {
            Self::FALSE
        }
    }

    fn intern(&mut self, node: Node) -> Formula {
        if let Some(&f) = self.index.get(&node) {
            return f;
        }
        let f = Formula(self.nodes.len() as u32);
        self.nodes.push(node);
        self.index.insert(node, f);
        f
    }

    pub fn var(&mut self, v: VarId) -> Formula {
        self.intern(Node::Var(v))
    }

    pub fn as_const(&self, f: Formula) -> Option<bool> {
        match self.node(f) {
            Node::Const(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_var(&self, f: Formula) -> Option<VarId> {
        match self.node(f) {
            Node::Var(v) => Some(v),
            _ => None,
        }
    }

    /// Var or Const: a binding that can be copied without a definition.
    pub fn is_atom(&self, f: Formula) -> bool {
        !self.node(f).is_gate()
    }

    fn complements(&self, a: Formula, b: Formula) -> bool {
        self.node(a) == Node::Not(b) || self.node(b) == Node::Not(a)
    }

    /// Generic constructor. Panics if `children` has the wrong arity.
    pub fn mk(&mut self, op: Op, children: &[Formula]) -> Formula {
        match (op, children) {
            (Op::Not, &[a]) => self.not(a),
            (Op::And, &[a, b]) => self.and(a, b),
            (Op::Or, &[a, b]) => self.or(a, b),
            (Op::Xor, &[a, b]) => self.xor(a, b),
            (Op::Equiv, &[a, b]) => self.equiv(a, b),
            (Op::Ite, &[c, t, e]) => self.ite(c, t, e),
            _ => panic!("wrong arity for {op:?}: {}", children.len()),
        }
    }

    pub fn not(&mut self, a: Formula) -> Formula {
        match self.node(a) {
            Node::Const(b) => Self::constant(!b),
            Node::Not(x) => x,
            _ => self.intern(Node::Not(a)),
        }
    }

    pub fn and(&mut self, a: Formula, b: Formula) -> Formula {
        if a == Self::FALSE || b == Self::FALSE {
            return Self::FALSE;
        }
        if a == Self::TRUE {
            return b;
        }
        if b == Self::TRUE || a == b {
            return a;
        }
        if self.complements(a, b) {
            return Self::FALSE;
        }
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        self.intern(Node::And(x, y))
    }

    pub fn or(&mut self, a: Formula, b: Formula) -> Formula {
        if a == Self::TRUE || b == Self::TRUE {
            return Self::TRUE;
        }
        if a == Self::FALSE {
            return b;
        }
        if b == Self::FALSE || a == b {
            return a;
        }
        if self.complements(a, b) {
            return Self::TRUE;
        }
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        self.intern(Node::Or(x, y))
    }

    pub fn xor(&mut self, a: Formula, b: Formula) -> Formula {
        if a == Self::FALSE {
            return b;
        }
        if b == Self::FALSE {
            return a;
        }
        if a == Self::TRUE {
            return self.not(b);
        }
        if b == Self::TRUE {
            return self.not(a);
        }
        if a == b {
            return Self::FALSE;
        }
        if self.complements(a, b) {
            return Self::TRUE;
        }
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        self.intern(Node::Xor(x, y))
    }

    pub fn equiv(&mut self, a: Formula, b: Formula) -> Formula {
        if a == Self::TRUE {
            return b;
        }
        if b == Self::TRUE {
            return a;
        }
        if a == Self::FALSE {
            return self.not(b);
        }
        if b == Self::FALSE {
            return self.not(a);
        }
        if a == b {
            return Self::TRUE;
        }
        if self.complements(a, b) {
            return Self::FALSE;
        }
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        self.intern(Node::Equiv(x, y))
    }

    pub fn ite(&mut self, c: Formula, t: Formula, e: Formula) -> Formula {
        match self.node(c) {
            Node::Const(true) => return t,
            Node::Const(false) => return e,
            Node::Not(inner) => return self.ite(inner, e, t),
            _ => {}
        }
        if t == e {
            return t;
        }
        if t == c || t == Self::TRUE {
            return self.or(c, e);
        }
        if e == c || e == Self::FALSE {
            return self.and(c, t);
        }
        if t == Self::FALSE {
            let nc = self.not(c);
            return self.and(nc, e);
        }
        if e == Self::TRUE {
            let nc = self.not(c);
            return self.or(nc, t);
        }
        self.intern(Node::Ite(c, t, e))
    }

    /// Left-associated chain `f1 op f2 op ... op fn` for And/Or/Xor.
    pub fn chain(&mut self, op: Op, items: &[Formula]) -> Formula {
        let unit = match op {
            Op::And | Op::Equiv => Self::TRUE,
            Op::Or | Op::Xor => Self::FALSE,
            _ => panic!("chain over non-associative {op:?}"),
        };
        items
            .iter()
            .fold(None, |acc, &f| match acc {
                None => Some(f),
                Some(a) => Some(self.mk(op, &[a, f])),
            })
            .unwrap_or(unit)
    }

    /// Nodes reachable from `roots`, children before parents.
    pub fn cone(&self, roots: &[Formula]) -> Vec<Formula> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<Formula> = roots.to_vec();
        let mut out = Vec::new();
        while let Some(f) = stack.pop() {
            if std::mem::replace(&mut seen[f.index()], true) {
                continue;
            }
            out.push(f);
            stack.extend(self.node(f).children());
        }
        out.sort_unstable();
        out
    }

    /// Number of distinct gate nodes reachable from `f`.
    pub fn gate_count(&self, f: Formula) -> usize {
        self.cone(&[f]).into_iter().filter(|&g| self.node(g).is_gate()).count()
    }

    /// Evaluate under a total assignment of the formula's variables.
    pub fn eval(&self, f: Formula, assignment: &dyn Fn(VarId) -> Option<bool>) -> Result<bool, Unassigned> {
        let cone = self.cone(&[f]);
        let mut val: HashMap<Formula, bool> = HashMap::with_capacity(cone.len());
        for g in cone {
            let v = match self.node(g) {
                Node::Const(b) => b,
                Node::Var(x) => assignment(x).ok_or(Unassigned(x))?,
                node => apply(node, |c| val[&c]),
            };
            val.insert(g, v);
        }
        Ok(val[&f])
    }

    /// Evaluate 64 assignments at once; bit `k` of each lane word is one
    /// assignment.
    pub fn eval_packed(&self, f: Formula, lanes: &dyn Fn(VarId) -> u64) -> u64 {
        let cone = self.cone(&[f]);
        let mut val: HashMap<Formula, u64> = HashMap::with_capacity(cone.len());
        for g in cone {
            let get = |c: Formula| val[&c];
            let v = match self.node(g) {
                Node::Const(b) => {
                    if b {
                        !0
                    } else {
                        0
                    }
                }
                Node::Var(x) => lanes(x),
                Node::Not(a) => !get(a),
                Node::And(a, b) => get(a) & get(b),
                Node::Or(a, b) => get(a) | get(b),
                Node::Xor(a, b) => get(a) ^ get(b),
                Node::Equiv(a, b) => !(get(a) ^ get(b)),
                Node::Ite(c, t, e) => (get(c) & get(t)) | (!get(c) & get(e)),
            };
            val.insert(g, v);
        }
        val[&f]
    }

    /// Rebuild `f` replacing variables through `subst`.
    pub fn substitute(&mut self, f: Formula, subst: &dyn Fn(VarId) -> Option<Formula>) -> Formula {
        self.rewrite(f, &|arena, g| match arena.node(g) {
            Node::Var(x) => subst(x),
            _ => None,
        })
    }

    /// Rebuild `f` bottom-up, using `replace(g)` in place of node `g`
    /// whenever it returns a formula.
    pub fn rewrite(&mut self, f: Formula, replace: &dyn Fn(&Arena, Formula) -> Option<Formula>) -> Formula {
        let cone = self.cone(&[f]);
        let mut map: HashMap<Formula, Formula> = HashMap::with_capacity(cone.len());
        for g in cone {
            if let Some(r) = replace(self, g) {
                map.insert(g, r);
                continue;
            }
            let node = self.node(g);
            let get = |c: Formula| map[&c];
            let new = match node {
                Node::Const(_) | Node::Var(_) => g,
                Node::Not(a) => {
                    let a = get(a);
                    self.not(a)
                }
                Node::And(a, b) => {
                    let (a, b) = (get(a), get(b));
                    self.and(a, b)
                }
                Node::Or(a, b) => {
                    let (a, b) = (get(a), get(b));
                    self.or(a, b)
                }
                Node::Xor(a, b) => {
                    let (a, b) = (get(a), get(b));
                    self.xor(a, b)
                }
                Node::Equiv(a, b) => {
                    let (a, b) = (get(a), get(b));
                    self.equiv(a, b)
                }
                Node::Ite(c, t, e) => {
                    let (c, t, e) = (get(c), get(t), get(e));
                    self.ite(c, t, e)
                }
            };
            map.insert(g, new);
        }
        map[&f]
    }

    /// Human-readable infix rendering, mostly for tests and diagnostics.
    pub fn render(&self, f: Formula) -> String {
        match self.node(f) {
            Node::Const(b) => (b as u8).to_string(),
            Node::Var(v) => v.to_string(),
            Node::Not(a) => format!("~{}", self.render(a)),
            Node::And(a, b) => format!("({} & {})", self.render(a), self.render(b)),
            Node::Or(a, b) => format!("({} | {})", self.render(a), self.render(b)),
            Node::Xor(a, b) => format!("({} ^ {})", self.render(a), self.render(b)),
            Node::Equiv(a, b) => format!("({} == {})", self.render(a), self.render(b)),
            Node::Ite(c, t, e) => format!("({} ? {} : {})", self.render(c), self.render(t), self.render(e)),
        }
    }
}

/// Apply a gate's Boolean function given its children's values.
pub(crate) fn apply(node: Node, get: impl Fn(Formula) -> bool) -> bool {
    match node {
        Node::Const(b) => b,
        Node::Var(_) => unreachable!("variables are looked up, not applied"),
        Node::Not(a) => !get(a),
        Node::And(a, b) => get(a) && get(b),
        Node::Or(a, b) => get(a) || get(b),
        Node::Xor(a, b) => get(a) ^ get(b),
        Node::Equiv(a, b) => get(a) == get(b),
        Node::Ite(c, t, e) => {
            if get(c) {
                get(t)
            } else {
                get(e)
            }
        }
    }
}
