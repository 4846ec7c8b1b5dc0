//! Symbolic execution of checked programs into propositional encodings.
//!
//! Every `bit` storage cell is bound to a [`Formula`] over encoding
//! variables; `int` cells hold concrete values. Moving data between cells
//! only rebinds, so shifts and permutations create no variables. An
//! assignment of a compound formula creates one auxiliary variable and one
//! definition. Conditionals on `bit` values execute both branches and merge
//! the cells they wrote with `ite(φ, δ1, δ2)`; nested merges stay as
//! formulas and only the outermost merge allocates.

mod forward;

pub use forward::forward_single_use;

use std::collections::HashMap;

use thiserror::Error;

use crate::boolir::{Arena, Encoding, Formula, Label, Origin};
use crate::diag::{Diagnostic, Loc};
use crate::frontend::ast::*;
use crate::frontend::scope::Symbol;
use crate::semantics::{int_binop, int_unop, Program, Ty};

#[derive(Debug, Clone)]
pub struct SymbexConfig {
    /// Maximum number of definitions before translation is aborted.
    pub max_definitions: usize,
    /// Maximum total number of loop iterations.
    pub max_iterations: u64,
    /// Inline definitions that are used exactly once.
    pub forward: bool,
}

impl Default for SymbexConfig {
    fn default() -> Self {
        SymbexConfig {
            max_definitions: 1 << 22,
            max_iterations: 1 << 24,
            forward: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbexError {
    #[error("{0}")]
    Program(Diagnostic),
    #[error("{loc}: {what} limit of {limit} exceeded")]
    Budget { what: &'static str, limit: u64, loc: Loc },
}

#[derive(Debug, Clone)]
pub struct Translation {
    pub encoding: Encoding,
    /// Iteration count of every executed loop, in execution order, keyed by
    /// the loop condition.
    pub loop_trips: Vec<(ExprId, u64)>,
}

type SResult<T> = Result<T, SymbexError>;

fn err<T>(loc: Loc, msg: impl Into<String>) -> SResult<T> {
    Err(SymbexError::Program(Diagnostic::error(loc, msg)))
}

/// Translate `program` with the given limits.
pub fn execute(program: &Program, cfg: &SymbexConfig) -> SResult<Translation> {
    let mut engine = Engine {
        prog: program,
        cfg,
        enc: Encoding::new(),
        bits: Vec::new(),
        bit_owner: Vec::new(),
        ints: Vec::new(),
        env: HashMap::new(),
        frames: Vec::new(),
        iterations: 0,
        loop_trips: Vec::new(),
        loc: Loc::new(1, 1),
    };
    engine.init_globals()?;
    let main = program.function(program.main);
    engine.run_function(main, Vec::new())?;
    engine.export_outputs()?;
    let Engine {
        mut enc, loop_trips, ..
    } = engine;
    if cfg.forward {
        enc = forward_single_use(&enc);
    }
    Ok(Translation {
        encoding: enc,
        loop_trips,
    })
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Bits { base: usize, len: usize },
    Ints { base: usize, len: usize },
}

#[derive(Debug, Clone)]
enum Value {
    Bit(Formula),
    Int(i64),
    Bits(Vec<Formula>),
    Ints(Vec<i64>),
    Void,
}

/// Original values of the cells written while one branch of a bit
/// conditional runs.
#[derive(Debug, Default)]
struct Frame {
    bit_base: usize,
    int_base: usize,
    bits: HashMap<usize, Option<Formula>>,
    ints: HashMap<usize, Option<i64>>,
}

struct Engine<'p> {
    prog: &'p Program,
    cfg: &'p SymbexConfig,
    enc: Encoding,
    bits: Vec<Option<Formula>>,
    /// Declaration and element index owning each bit cell, for labels.
    bit_owner: Vec<(DeclId, usize)>,
    ints: Vec<Option<i64>>,
    env: HashMap<DeclId, Slot>,
    frames: Vec<Frame>,
    iterations: u64,
    loop_trips: Vec<(ExprId, u64)>,
    loc: Loc,
}

impl<'p> Engine<'p> {
    fn arena(&mut self) -> &mut Arena {
        &mut self.enc.arena
    }

    // ---- storage -------------------------------------------------------

    fn alloc(&mut self, decl: DeclId) -> Slot {
        let info = self.prog.var(decl);
        let len = info.width();
        let slot = if info.elem == Type::Bit {
            let base = self.bits.len();
            self.bits.resize(base + len, None);
            self.bit_owner.extend((0..len).map(|i| (decl, i)));
            Slot::Bits { base, len }
        } else {
            let base = self.ints.len();
            self.ints.resize(base + len, None);
            Slot::Ints { base, len }
        };
        self.env.insert(decl, slot);
        slot
    }

    fn mark(&self) -> (usize, usize) {
        (self.bits.len(), self.ints.len())
    }

    fn release(&mut self, (b, i): (usize, usize)) {
        self.bits.truncate(b);
        self.bit_owner.truncate(b);
        self.ints.truncate(i);
    }

    fn set_bit(&mut self, cell: usize, v: Option<Formula>) {
        if let Some(top) = self.frames.last_mut() {
            let old = self.bits[cell];
            top.bits.entry(cell).or_insert(old);
        }
        self.bits[cell] = v;
    }

    fn set_int(&mut self, cell: usize, v: Option<i64>) {
        if let Some(top) = self.frames.last_mut() {
            let old = self.ints[cell];
            top.ints.entry(cell).or_insert(old);
        }
        self.ints[cell] = v;
    }

    fn label(&self, cell: usize) -> Label {
        let (decl, index) = self.bit_owner[cell];
        Label {
            name: self.prog.var(decl).name.clone(),
            index,
            step: self.enc.definitions.len(),
        }
    }

    /// Allocate a definition for `f` unless it is a variable or constant.
    fn materialize(&mut self, f: Formula, label: Label) -> SResult<Formula> {
        if self.enc.arena.is_atom(f) {
            return Ok(f);
        }
        if self.enc.definitions.len() >= self.cfg.max_definitions {
            return Err(SymbexError::Budget {
                what: "definition",
                limit: self.cfg.max_definitions as u64,
                loc: self.loc,
            });
        }
        let v = self.enc.new_var(Origin::Auxiliary, Some(label));
        self.enc.define(v, f);
        Ok(self.enc.arena.var(v))
    }

    fn assign_bit(&mut self, cell: usize, f: Formula) -> SResult<()> {
        let label = self.label(cell);
        let f = self.materialize(f, label)?;
        self.set_bit(cell, Some(f));
        Ok(())
    }

    fn read_bit(&self, cell: usize, loc: Loc) -> SResult<Formula> {
        match self.bits[cell] {
            Some(f) => Ok(f),
            None => {
                let (decl, index) = self.bit_owner[cell];
                let info = self.prog.var(decl);
                let what = if info.len.is_some() {
                    format!("`{}[{index}]`", info.name)
                } else {
                    format!("`{}`", info.name)
                };
                err(loc, format!("{what} is read before it is assigned"))
            }
        }
    }

    fn read_int(&self, cell: usize, name: &str, loc: Loc) -> SResult<i64> {
        self.ints[cell].ok_or_else(|| {
            SymbexError::Program(Diagnostic::error(
                loc,
                format!("int `{name}` is uninitialized or depends on a bit-valued condition"),
            ))
        })
    }

    fn slot_of(&self, id: ExprId) -> Slot {
        let decl = self.prog.scopes.var(id).expect("resolved variable");
        self.env[&decl]
    }

    // ---- program structure --------------------------------------------

    fn init_globals(&mut self) -> SResult<()> {
        let prog = self.prog;
        for &g in &prog.globals {
            let slot = self.alloc(g);
            let info = prog.var(g);
            if info.attr == Attr::In {
                let Slot::Bits { base, len } = slot else {
                    unreachable!("inputs are bits")
                };
                for i in 0..len {
                    let v = self.enc.new_var(
                        Origin::Input,
                        Some(Label {
                            name: info.name.clone(),
                            index: i,
                            step: 0,
                        }),
                    );
                    self.bits[base + i] = Some(self.enc.arena.var(v));
                }
            }
        }
        for decl in prog.ast.globals() {
            let info = prog.var(decl.id);
            if info.attr == Attr::In {
                continue;
            }
            self.loc = decl.loc;
            let slot = self.env[&decl.id];
            match (&decl.init, slot) {
                (_, Slot::Ints { base, len: _ }) if info.len.is_none() => {
                    self.ints[base] = Some(prog.const_env[&info.name]);
                }
                (Some(init), _) => {
                    let v = self.expr(init)?;
                    self.store_whole(slot, v)?;
                }
                (None, Slot::Bits { base, len }) => {
                    for c in base..base + len {
                        self.bits[c] = Some(Arena::FALSE);
                    }
                }
                (None, Slot::Ints { base, len }) => {
                    for c in base..base + len {
                        self.ints[c] = Some(0);
                    }
                }
            }
        }
        Ok(())
    }

    fn export_outputs(&mut self) -> SResult<()> {
        let prog = self.prog;
        let mut used = vec![false; self.enc.num_vars() + 1];
        for d in prog.outputs().collect::<Vec<_>>() {
            let Slot::Bits { base, len } = self.env[&d] else {
                unreachable!("outputs are bits")
            };
            for c in base..base + len {
                let f = self.bits[c].expect("globals are always initialized");
                let reuse = self.enc.arena.as_var(f).filter(|v| !used[v.0 as usize]);
                let v = match reuse {
                    Some(v) => v,
                    None => {
                        let label = self.label(c);
                        let v = self.enc.new_var(Origin::Auxiliary, Some(label));
                        self.enc.define(v, f);
                        used.push(false);
                        v
                    }
                };
                used[v.0 as usize] = true;
                self.enc.outputs.push(v);
                self.enc.output_names.push((self.prog.var(d).name.clone(), c - base));
            }
        }
        Ok(())
    }

    fn run_function(&mut self, f: &FunctionDecl, args: Vec<(DeclId, Value)>) -> SResult<Value> {
        let mark = self.mark();
        for (p, v) in args {
            match v {
                Value::Bit(x) => {
                    let Slot::Bits { base, .. } = self.alloc(p) else {
                        unreachable!()
                    };
                    self.bits[base] = Some(x);
                }
                Value::Int(x) => {
                    let Slot::Ints { base, .. } = self.alloc(p) else {
                        unreachable!()
                    };
                    self.ints[base] = Some(x);
                }
                _ => unreachable!("arrays are bound by reference"),
            }
        }
        let mut result = Value::Void;
        for s in &f.body.stmts {
            match &s.kind {
                StmtKind::Return(Some(e)) => {
                    self.loc = s.loc;
                    result = self.expr(e)?;
                }
                StmtKind::Return(None) => {}
                _ => self.stmt(s)?,
            }
        }
        self.release(mark);
        Ok(result)
    }

    fn call(&mut self, e: &Expr, args: &[Expr]) -> SResult<Value> {
        let Some(Symbol::Function(index)) = self.prog.scopes.symbol(e.id) else {
            unreachable!("calls resolve to functions")
        };
        let f = self.prog.function(index);
        let mut bound = Vec::new();
        let mut aliases = Vec::new();
        for (p, a) in f.params.iter().zip(args) {
            match self.prog.var(p.id).ty() {
                Ty::BitArray(_) | Ty::IntArray(_) => aliases.push((p.id, self.slot_of(a.id))),
                _ => bound.push((p.id, self.expr(a)?)),
            }
        }
        for (p, slot) in aliases {
            self.env.insert(p, slot);
        }
        let saved = self.loc;
        let v = self.run_function(f, bound)?;
        self.loc = saved;
        Ok(v)
    }

    // ---- statements ----------------------------------------------------

    fn stmt(&mut self, s: &Stmt) -> SResult<()> {
        self.loc = s.loc;
        match &s.kind {
            StmtKind::Block(b) => {
                let mark = self.mark();
                for s in &b.stmts {
                    self.stmt(s)?;
                }
                self.release(mark);
                Ok(())
            }
            StmtKind::Decl(decls) => {
                for d in decls {
                    // The initializer is evaluated before the name is bound.
                    let init = match &d.init {
                        Some(e) => Some(self.expr(e)?),
                        None => None,
                    };
                    let slot = self.alloc(d.id);
                    if let Some(v) = init {
                        self.loc = d.loc;
                        self.store_whole(slot, v)?;
                    }
                }
                Ok(())
            }
            StmtKind::Expr(e) => self.expr(e).map(|_| ()),
            StmtKind::Assign(a) => self.assign(a),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let c = self.expr(cond)?;
                let phi = match c {
                    Value::Int(v) => Some(v != 0),
                    Value::Bit(f) => self.enc.arena.as_const(f),
                    _ => unreachable!("conditions are scalars"),
                };
                match phi {
                    Some(true) => self.stmt(then_branch),
                    Some(false) => match else_branch {
                        Some(e) => self.stmt(e),
                        None => Ok(()),
                    },
                    None => {
                        let Value::Bit(phi) = c else { unreachable!() };
                        self.fork(
                            phi,
                            |en| en.stmt(then_branch),
                            |en| match else_branch {
                                Some(e) => en.stmt(e),
                                None => Ok(()),
                            },
                        )?;
                        Ok(())
                    }
                }
            }
            StmtKind::For { init, cond, step, body } => {
                self.assign(init)?;
                let mut trips = 0u64;
                loop {
                    self.loc = cond.loc;
                    let Value::Int(c) = self.expr(cond)? else {
                        unreachable!("loop conditions are int")
                    };
                    if c == 0 {
                        break;
                    }
                    self.iterations += 1;
                    if self.iterations > self.cfg.max_iterations {
                        return Err(SymbexError::Budget {
                            what: "loop iteration",
                            limit: self.cfg.max_iterations,
                            loc: s.loc,
                        });
                    }
                    trips += 1;
                    self.stmt(body)?;
                    self.assign(step)?;
                }
                self.loop_trips.push((cond.id, trips));
                Ok(())
            }
            StmtKind::Return(_) => unreachable!("returns are handled by run_function"),
        }
    }

    fn index(&mut self, idx: &Expr, len: usize, name: &str) -> SResult<usize> {
        let Value::Int(i) = self.expr(idx)? else {
            unreachable!("indices are int")
        };
        if i < 0 || i as usize >= len {
            return err(
                idx.loc,
                format!("index {i} is out of bounds for `{name}` of length {len}"),
            );
        }
        Ok(i as usize)
    }

    fn assign(&mut self, a: &Assign) -> SResult<()> {
        self.loc = a.loc;
        let value = self.expr(&a.value)?;
        let slot = self.slot_of(a.target.id);
        let name = &a.target.name;
        match (&a.target.index, slot) {
            (Some(idx), Slot::Bits { base, len }) => {
                let cell = base + self.index(idx, len, name)?;
                let Value::Bit(rhs) = value else { unreachable!() };
                let f = match a.op.binop() {
                    None => rhs,
                    Some(op) => {
                        let cur = self.read_bit(cell, a.loc)?;
                        self.bit_binop(op, cur, rhs)
                    }
                };
                self.assign_bit(cell, f)
            }
            (Some(idx), Slot::Ints { base, len }) => {
                let cell = base + self.index(idx, len, name)?;
                let Value::Int(rhs) = value else { unreachable!() };
                let v = self.int_compound(a, cell, rhs)?;
                self.set_int(cell, Some(v));
                Ok(())
            }
            (None, _) => match (a.op.binop(), value) {
                (None, v) => self.store_whole(slot, v),
                (Some(op), Value::Bit(rhs)) => {
                    let Slot::Bits { base, .. } = slot else { unreachable!() };
                    let cur = self.read_bit(base, a.loc)?;
                    let f = self.bit_binop(op, cur, rhs);
                    self.assign_bit(base, f)
                }
                (Some(op), Value::Bits(rhs)) => {
                    let Slot::Bits { base, .. } = slot else { unreachable!() };
                    let mut out = Vec::with_capacity(rhs.len());
                    for (k, r) in rhs.into_iter().enumerate() {
                        let cur = self.read_bit(base + k, a.loc)?;
                        out.push(self.bit_binop(op, cur, r));
                    }
                    self.store_whole(slot, Value::Bits(out))
                }
                (Some(_), Value::Int(rhs)) => {
                    let Slot::Ints { base, .. } = slot else { unreachable!() };
                    let v = self.int_compound(a, base, rhs)?;
                    self.set_int(base, Some(v));
                    Ok(())
                }
                _ => unreachable!("checked by semantics"),
            },
        }
    }

    fn int_compound(&mut self, a: &Assign, cell: usize, rhs: i64) -> SResult<i64> {
        match a.op.binop() {
            None => Ok(rhs),
            Some(op) => {
                let cur = self.read_int(cell, &a.target.name, a.loc)?;
                int_binop(op, cur, rhs).map_err(|e| SymbexError::Program(Diagnostic::error(a.loc, e.to_string())))
            }
        }
    }

    /// Store a whole value into a variable's cells.
    fn store_whole(&mut self, slot: Slot, v: Value) -> SResult<()> {
        match (slot, v) {
            (Slot::Bits { base, .. }, Value::Bit(f)) => self.assign_bit(base, f),
            (Slot::Bits { base, .. }, Value::Bits(fs)) => {
                for (k, f) in fs.into_iter().enumerate() {
                    self.assign_bit(base + k, f)?;
                }
                Ok(())
            }
            (Slot::Ints { base, .. }, Value::Int(x)) => {
                self.set_int(base, Some(x));
                Ok(())
            }
            (Slot::Ints { base, .. }, Value::Ints(xs)) => {
                for (k, x) in xs.into_iter().enumerate() {
                    self.set_int(base + k, Some(x));
                }
                Ok(())
            }
            _ => unreachable!("checked by semantics"),
        }
    }

    /// Run two branches under the bit condition `phi` and merge the cells
    /// they wrote.
    fn fork<T>(
        &mut self,
        phi: Formula,
        then_f: impl FnOnce(&mut Self) -> SResult<T>,
        else_f: impl FnOnce(&mut Self) -> SResult<T>,
    ) -> SResult<(T, T)> {
        let mark = self.mark();
        let (bit_base, int_base) = mark;
        self.frames.push(Frame {
            bit_base,
            int_base,
            ..Frame::default()
        });
        let t = then_f(self)?;
        self.release(mark);
        let f1 = self.frames.pop().unwrap();

        let mut then_bits: HashMap<usize, Option<Formula>> = HashMap::new();
        for (&c, &old) in f1.bits.iter().filter(|(&c, _)| c < f1.bit_base) {
            then_bits.insert(c, self.bits[c]);
            self.bits[c] = old;
        }
        let mut then_ints: HashMap<usize, Option<i64>> = HashMap::new();
        for (&c, &old) in f1.ints.iter().filter(|(&c, _)| c < f1.int_base) {
            then_ints.insert(c, self.ints[c]);
            self.ints[c] = old;
        }

        self.frames.push(Frame {
            bit_base,
            int_base,
            ..Frame::default()
        });
        let e = else_f(self)?;
        self.release(mark);
        let f2 = self.frames.pop().unwrap();

        let mut cells: Vec<usize> = then_bits
            .keys()
            .copied()
            .chain(f2.bits.keys().copied().filter(|&c| c < bit_base))
            .collect();
        cells.sort_unstable();
        cells.dedup();
        let nested = !self.frames.is_empty();
        for c in cells {
            let orig = f1.bits.get(&c).or_else(|| f2.bits.get(&c)).copied().unwrap();
            let tv = then_bits.get(&c).copied().unwrap_or(orig);
            let ev = if f2.bits.contains_key(&c) { self.bits[c] } else { orig };
            self.bits[c] = orig;
            let merged = match (tv, ev) {
                (Some(a), Some(b)) => Some(self.arena().ite(phi, a, b)),
                _ => None,
            };
            if merged == orig {
                continue;
            }
            match merged {
                Some(m) if !nested => self.assign_bit(c, m)?,
                _ => self.set_bit(c, merged),
            }
        }

        let mut cells: Vec<usize> = then_ints
            .keys()
            .copied()
            .chain(f2.ints.keys().copied().filter(|&c| c < int_base))
            .collect();
        cells.sort_unstable();
        cells.dedup();
        for c in cells {
            let orig = f1.ints.get(&c).or_else(|| f2.ints.get(&c)).copied().unwrap();
            let tv = then_ints.get(&c).copied().unwrap_or(orig);
            let ev = if f2.ints.contains_key(&c) { self.ints[c] } else { orig };
            self.ints[c] = orig;
            let merged = if tv == ev { tv } else { None };
            if merged != orig {
                self.set_int(c, merged);
            }
        }
        Ok((t, e))
    }

    // ---- expressions ---------------------------------------------------

    fn bit_binop(&mut self, op: BinOp, a: Formula, b: Formula) -> Formula {
        let ar = self.arena();
        match op {
            BinOp::Xor | BinOp::Ne => ar.xor(a, b),
            BinOp::And | BinOp::LogAnd => ar.and(a, b),
            BinOp::Or | BinOp::LogOr => ar.or(a, b),
            BinOp::Eq => ar.equiv(a, b),
            BinOp::Lt => {
                let na = ar.not(a);
                ar.and(na, b)
            }
            BinOp::Le => {
                let na = ar.not(a);
                ar.or(na, b)
            }
            BinOp::Gt => {
                let nb = ar.not(b);
                ar.and(a, nb)
            }
            BinOp::Ge => {
                let nb = ar.not(b);
                ar.or(a, nb)
            }
            _ => unreachable!("not a bit operator: {op:?}"),
        }
    }

    fn expr(&mut self, e: &Expr) -> SResult<Value> {
        let ty = self.prog.ty(e.id);
        match &e.kind {
            ExprKind::Int(v) => Ok(match ty {
                Ty::Bit => Value::Bit(Arena::constant(*v == 1)),
                _ => Value::Int(*v as i64),
            }),
            ExprKind::Name(name) => match self.slot_of(e.id) {
                Slot::Bits { base, len } => {
                    if ty == Ty::Bit {
                        Ok(Value::Bit(self.read_bit(base, e.loc)?))
                    } else {
                        (base..base + len)
                            .map(|c| self.read_bit(c, e.loc))
                            .collect::<SResult<_>>()
                            .map(Value::Bits)
                    }
                }
                Slot::Ints { base, len } => {
                    if ty == Ty::Int {
                        Ok(Value::Int(self.read_int(base, name, e.loc)?))
                    } else {
                        (base..base + len)
                            .map(|c| self.read_int(c, name, e.loc))
                            .collect::<SResult<_>>()
                            .map(Value::Ints)
                    }
                }
            },
            ExprKind::Index(name, idx) => match self.slot_of(e.id) {
                Slot::Bits { base, len } => {
                    let c = base + self.index(idx, len, name)?;
                    Ok(Value::Bit(self.read_bit(c, e.loc)?))
                }
                Slot::Ints { base, len } => {
                    let c = base + self.index(idx, len, name)?;
                    Ok(Value::Int(self.read_int(c, name, e.loc)?))
                }
            },
            ExprKind::Call(_, args) => self.call(e, args),
            ExprKind::Unary(op, x) => {
                let v = self.expr(x)?;
                Ok(match v {
                    Value::Int(a) => Value::Int(int_unop(*op, a)),
                    Value::Bit(f) => Value::Bit(self.arena().not(f)),
                    Value::Bits(fs) => Value::Bits(fs.into_iter().map(|f| self.arena().not(f)).collect()),
                    _ => unreachable!("checked by semantics"),
                })
            }
            ExprKind::Binary(op, l, r) => self.binary(e, *op, l, r),
            ExprKind::Ternary(c, t, f) => {
                let cv = self.expr(c)?;
                let phi = match cv {
                    Value::Int(v) => Arena::constant(v != 0),
                    Value::Bit(f) => f,
                    _ => unreachable!(),
                };
                match self.enc.arena.as_const(phi) {
                    Some(true) => self.expr(t),
                    Some(false) => self.expr(f),
                    None => {
                        let (a, b) = self.fork(phi, |en| en.expr(t), |en| en.expr(f))?;
                        let (Value::Bit(a), Value::Bit(b)) = (a, b) else {
                            unreachable!("bit conditions select bits")
                        };
                        Ok(Value::Bit(self.arena().ite(phi, a, b)))
                    }
                }
            }
        }
    }

    fn binary(&mut self, e: &Expr, op: BinOp, l: &Expr, r: &Expr) -> SResult<Value> {
        let lv = self.expr(l)?;
        match (op, &lv) {
            (BinOp::LogAnd, Value::Int(0)) => return Ok(Value::Int(0)),
            (BinOp::LogOr, Value::Int(a)) if *a != 0 => return Ok(Value::Int(1)),
            (BinOp::LogAnd | BinOp::LogOr, Value::Bit(a)) if has_call(r) => {
                // Keep C's short-circuit: the right operand's side effects
                // only happen when it is evaluated.
                let a = *a;
                let skip = Arena::constant(op == BinOp::LogOr);
                let (x, y) = if op == BinOp::LogAnd {
                    self.fork(a, |en| en.expr(r), |_| Ok(Value::Bit(skip)))?
                } else {
                    self.fork(a, |_| Ok(Value::Bit(skip)), |en| en.expr(r))?
                };
                let (Value::Bit(x), Value::Bit(y)) = (x, y) else {
                    unreachable!()
                };
                return Ok(Value::Bit(self.arena().ite(a, x, y)));
            }
            _ => {}
        }
        let rv = self.expr(r)?;
        Ok(match (lv, rv) {
            (Value::Int(a), Value::Int(b)) => Value::Int(
                int_binop(op, a, b).map_err(|er| SymbexError::Program(Diagnostic::error(e.loc, er.to_string())))?,
            ),
            (Value::Bit(a), Value::Bit(b)) => Value::Bit(self.bit_binop(op, a, b)),
            (Value::Bits(a), Value::Bits(b)) => {
                Value::Bits(a.into_iter().zip(b).map(|(x, y)| self.bit_binop(op, x, y)).collect())
            }
            (Value::Bits(a), Value::Int(n)) => {
                if n < 0 {
                    return err(e.loc, format!("shift amount {n} is negative"));
                }
                let n = usize::try_from(n).unwrap_or(usize::MAX);
                let len = a.len();
                Value::Bits(
                    (0..len)
                        .map(|i| {
                            let src = if op == BinOp::Shl {
                                i.checked_sub(n)
                            } else {
                                i.checked_add(n).filter(|&j| j < len)
                            };
                            src.map_or(Arena::FALSE, |j| a[j])
                        })
                        .collect(),
                )
            }
            _ => unreachable!("checked by semantics"),
        })
    }
}

fn has_call(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Call(..) => true,
        ExprKind::Int(_) | ExprKind::Name(_) => false,
        ExprKind::Index(_, i) => has_call(i),
        ExprKind::Unary(_, x) => has_call(x),
        ExprKind::Binary(_, l, r) => has_call(l) || has_call(r),
        ExprKind::Ternary(c, t, f) => has_call(c) || has_call(t) || has_call(f),
    }
}

/// Check and translate `source` with default limits.
pub fn translate_source(source: &str, overrides: &[(String, i64)]) -> Result<Encoding, SymbexError> {
    let prog = crate::semantics::check_source(source, overrides).map_err(SymbexError::Program)?;
    execute(&prog, &SymbexConfig::default()).map(|t| t.encoding)
}

#[cfg(test)]
mod tests;
