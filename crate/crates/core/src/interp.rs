//! Reference concrete interpreter.
//!
//! Runs a checked program directly on concrete `bit` and `int` values. It
//! shares nothing with the symbolic executor beyond the syntax tree and the
//! type tables, so it can serve as the oracle for encodings.

use std::collections::HashMap;

use thiserror::Error;

use crate::diag::{Diagnostic, Loc};
use crate::frontend::ast::*;
use crate::frontend::scope::Symbol;
use crate::semantics::{int_binop, int_unop, Program, Ty};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpError {
    #[error("{0}")]
    Program(Diagnostic),
    #[error("expected {expected} input bits, got {got}")]
    InputWidth { expected: usize, got: usize },
    #[error("{loc}: loop iteration limit of {limit} exceeded")]
    Budget { limit: u64, loc: Loc },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    /// Output bits, `__out` declarations in order, ascending index.
    pub outputs: Vec<bool>,
    /// Iteration count of every executed loop in execution order.
    pub loop_trips: Vec<(ExprId, u64)>,
}

pub const DEFAULT_MAX_ITERATIONS: u64 = 1 << 24;

/// Run `program` on `inputs` (`__in` declarations in order, ascending index).
pub fn run(program: &Program, inputs: &[bool]) -> Result<RunResult, InterpError> {
    run_with_limit(program, inputs, DEFAULT_MAX_ITERATIONS)
}

pub fn run_with_limit(program: &Program, inputs: &[bool], max_iterations: u64) -> Result<RunResult, InterpError> {
    let expected = program.input_width();
    if inputs.len() != expected {
        return Err(InterpError::InputWidth {
            expected,
            got: inputs.len(),
        });
    }
    let mut m = Machine {
        prog: program,
        vars: HashMap::new(),
        iterations: 0,
        max_iterations,
        loop_trips: Vec::new(),
    };
    m.globals(inputs)?;
    m.call_function(program.main, Vec::new())?;
    let mut outputs = Vec::with_capacity(program.output_width());
    for d in program.outputs() {
        let cell = &m.vars[&d];
        for v in cell.borrow().iter() {
            outputs.push(v.expect("globals are initialized") != 0);
        }
    }
    Ok(RunResult {
        outputs,
        loop_trips: m.loop_trips,
    })
}

type Cells = std::rc::Rc<std::cell::RefCell<Vec<Option<i64>>>>;
type IResult<T> = Result<T, InterpError>;

fn fail<T>(loc: Loc, msg: impl Into<String>) -> IResult<T> {
    Err(InterpError::Program(Diagnostic::error(loc, msg)))
}

/// Bits are stored as 0/1 in the same cells as ints.
#[derive(Debug, Clone)]
enum Val {
    Scalar(i64),
    Array(Vec<i64>),
    Void,
}

impl Val {
    fn scalar(&self) -> i64 {
        match self {
            Val::Scalar(v) => *v,
            _ => panic!("expected a scalar value"),
        }
    }
}

struct Machine<'p> {
    prog: &'p Program,
    /// Current storage of each declaration. Array parameters share the
    /// argument's storage.
    vars: HashMap<DeclId, Cells>,
    iterations: u64,
    max_iterations: u64,
    loop_trips: Vec<(ExprId, u64)>,
}

impl<'p> Machine<'p> {
    fn fresh(&mut self, d: DeclId) -> Cells {
        let n = self.prog.var(d).width();
        let c: Cells = std::rc::Rc::new(std::cell::RefCell::new(vec![None; n]));
        self.vars.insert(d, c.clone());
        c
    }

    fn cells(&self, id: ExprId) -> Cells {
        let d = self.prog.scopes.var(id).expect("resolved");
        self.vars[&d].clone()
    }

    fn globals(&mut self, inputs: &[bool]) -> IResult<()> {
        let prog = self.prog;
        let mut next = 0;
        for decl in prog.ast.globals() {
            let info = prog.var(decl.id);
            let cells = self.fresh(decl.id);
            if info.attr == Attr::In {
                let mut c = cells.borrow_mut();
                for slot in c.iter_mut() {
                    *slot = Some(inputs[next] as i64);
                    next += 1;
                }
            } else if info.elem == Type::Int && info.len.is_none() {
                cells.borrow_mut()[0] = Some(prog.const_env[&info.name]);
            } else if let Some(init) = &decl.init {
                let v = self.eval(init)?;
                store(&cells, v);
            } else {
                cells.borrow_mut().iter_mut().for_each(|c| *c = Some(0));
            }
        }
        Ok(())
    }

    fn call_function(&mut self, index: usize, args: Vec<(DeclId, Result<i64, Cells>)>) -> IResult<Val> {
        let f = self.prog.function(index);
        for (p, a) in args {
            match a {
                Ok(v) => {
                    let c = self.fresh(p);
                    c.borrow_mut()[0] = Some(v);
                }
                Err(cells) => {
                    self.vars.insert(p, cells);
                }
            }
        }
        for s in &f.body.stmts {
            match &s.kind {
                StmtKind::Return(Some(e)) => return self.eval(e),
                StmtKind::Return(None) => return Ok(Val::Void),
                _ => self.exec(s)?,
            }
        }
        Ok(Val::Void)
    }

    fn exec(&mut self, s: &Stmt) -> IResult<()> {
        match &s.kind {
            StmtKind::Block(b) => b.stmts.iter().try_for_each(|s| self.exec(s)),
            StmtKind::Decl(decls) => {
                for d in decls {
                    let v = match &d.init {
                        Some(e) => Some(self.eval(e)?),
                        None => None,
                    };
                    let cells = self.fresh(d.id);
                    if let Some(v) = v {
                        store(&cells, v);
                    }
                }
                Ok(())
            }
            StmtKind::Expr(e) => self.eval(e).map(|_| ()),
            StmtKind::Assign(a) => self.assign(a),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                if self.eval(cond)?.scalar() != 0 {
                    self.exec(then_branch)
                } else if let Some(e) = else_branch {
                    self.exec(e)
                } else {
                    Ok(())
                }
            }
            StmtKind::For { init, cond, step, body } => {
                self.assign(init)?;
                let mut trips = 0;
                while self.eval(cond)?.scalar() != 0 {
                    self.iterations += 1;
                    if self.iterations > self.max_iterations {
                        return Err(InterpError::Budget {
                            limit: self.max_iterations,
                            loc: s.loc,
                        });
                    }
                    trips += 1;
                    self.exec(body)?;
                    self.assign(step)?;
                }
                self.loop_trips.push((cond.id, trips));
                Ok(())
            }
            StmtKind::Return(_) => unreachable!("only as the last statement"),
        }
    }

    fn element(&mut self, cells: &Cells, idx: &Expr, name: &str) -> IResult<usize> {
        let i = self.eval(idx)?.scalar();
        let len = cells.borrow().len();
        if i < 0 || i as usize >= len {
            return fail(
                idx.loc,
                format!("index {i} is out of bounds for `{name}` of length {len}"),
            );
        }
        Ok(i as usize)
    }

    fn read(&self, cells: &Cells, i: usize, name: &str, loc: Loc) -> IResult<i64> {
        match cells.borrow()[i] {
            Some(v) => Ok(v),
            None => fail(loc, format!("`{name}` is read before it is assigned")),
        }
    }

    fn assign(&mut self, a: &Assign) -> IResult<()> {
        let value = self.eval(&a.value)?;
        let cells = self.cells(a.target.id);
        let is_bit = self.prog.var(self.prog.scopes.var(a.target.id).unwrap()).elem == Type::Bit;
        let combine = |cur: i64, rhs: i64| -> IResult<i64> {
            match a.op.binop() {
                None => Ok(rhs),
                Some(op) if is_bit => Ok(bit_op(op, cur, rhs)),
                Some(op) => {
                    int_binop(op, cur, rhs).map_err(|e| InterpError::Program(Diagnostic::error(a.loc, e.to_string())))
                }
            }
        };
        match (&a.target.index, value) {
            (Some(idx), Val::Scalar(rhs)) => {
                let i = self.element(&cells, idx, &a.target.name)?;
                let cur = if a.op == AssignOp::Set {
                    0
                } else {
                    self.read(&cells, i, &a.target.name, a.loc)?
                };
                let v = combine(cur, rhs)?;
                cells.borrow_mut()[i] = Some(v);
            }
            (None, Val::Scalar(rhs)) => {
                let cur = if a.op == AssignOp::Set {
                    0
                } else {
                    self.read(&cells, 0, &a.target.name, a.loc)?
                };
                let v = combine(cur, rhs)?;
                cells.borrow_mut()[0] = Some(v);
            }
            (None, Val::Array(rhs)) => {
                let mut out = Vec::with_capacity(rhs.len());
                for (i, r) in rhs.into_iter().enumerate() {
                    let cur = if a.op == AssignOp::Set {
                        0
                    } else {
                        self.read(&cells, i, &a.target.name, a.loc)?
                    };
                    out.push(combine(cur, r)?);
                }
                store(&cells, Val::Array(out));
            }
            _ => unreachable!("checked by semantics"),
        }
        Ok(())
    }

    fn eval(&mut self, e: &Expr) -> IResult<Val> {
        let ty = self.prog.ty(e.id);
        Ok(match &e.kind {
            ExprKind::Int(v) => Val::Scalar(*v as i64),
            ExprKind::Name(name) => {
                let cells = self.cells(e.id);
                match ty {
                    Ty::Bit | Ty::Int => Val::Scalar(self.read(&cells, 0, name, e.loc)?),
                    _ => {
                        let n = cells.borrow().len();
                        Val::Array(
                            (0..n)
                                .map(|i| self.read(&cells, i, name, e.loc))
                                .collect::<IResult<_>>()?,
                        )
                    }
                }
            }
            ExprKind::Index(name, idx) => {
                let cells = self.cells(e.id);
                let i = self.element(&cells, idx, name)?;
                Val::Scalar(self.read(&cells, i, name, e.loc)?)
            }
            ExprKind::Call(_, args) => {
                let Some(Symbol::Function(index)) = self.prog.scopes.symbol(e.id) else {
                    unreachable!()
                };
                let f = self.prog.function(index);
                let mut bound = Vec::new();
                for (p, a) in f.params.iter().zip(args) {
                    let arg = match self.prog.var(p.id).ty() {
                        Ty::BitArray(_) | Ty::IntArray(_) => Err(self.cells(a.id)),
                        _ => Ok(self.eval(a)?.scalar()),
                    };
                    bound.push((p.id, arg));
                }
                self.call_function(index, bound)?
            }
            ExprKind::Unary(op, x) => {
                let v = self.eval(x)?;
                match (ty, v) {
                    (Ty::Bit, Val::Scalar(b)) => Val::Scalar(1 - b),
                    (Ty::BitArray(_), Val::Array(bs)) => Val::Array(bs.into_iter().map(|b| 1 - b).collect()),
                    (_, Val::Scalar(a)) => Val::Scalar(int_unop(*op, a)),
                    _ => unreachable!(),
                }
            }
            ExprKind::Binary(op, l, r) => {
                let lt = self.prog.ty(l.id);
                let lv = self.eval(l)?;
                if matches!(op, BinOp::LogAnd | BinOp::LogOr) {
                    let a = lv.scalar() != 0;
                    if (*op == BinOp::LogAnd && !a) || (*op == BinOp::LogOr && a) {
                        return Ok(Val::Scalar(a as i64));
                    }
                    let b = self.eval(r)?.scalar() != 0;
                    return Ok(Val::Scalar(b as i64));
                }
                let rv = self.eval(r)?;
                match (lt, lv, rv) {
                    (Ty::Int, Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(
                        int_binop(*op, a, b)
                            .map_err(|er| InterpError::Program(Diagnostic::error(e.loc, er.to_string())))?,
                    ),
                    (Ty::Bit, Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(bit_op(*op, a, b)),
                    (_, Val::Array(a), Val::Array(b)) => {
                        Val::Array(a.into_iter().zip(b).map(|(x, y)| bit_op(*op, x, y)).collect())
                    }
                    (_, Val::Array(a), Val::Scalar(n)) => {
                        if n < 0 {
                            return fail(e.loc, format!("shift amount {n} is negative"));
                        }
                        let len = a.len() as i64;
                        Val::Array(
                            (0..len)
                                .map(|i| {
                                    let j = if *op == BinOp::Shl { i - n } else { i.saturating_add(n) };
                                    if (0..len).contains(&j) {
                                        a[j as usize]
                                    } else {
                                        0
                                    }
                                })
                                .collect(),
                        )
                    }
                    _ => unreachable!(),
                }
            }
            ExprKind::Ternary(c, t, f) => {
                if self.eval(c)?.scalar() != 0 {
                    self.eval(t)?
                } else {
                    self.eval(f)?
                }
            }
        })
    }
}

fn bit_op(op: BinOp, a: i64, b: i64) -> i64 {
    let (a, b) = (a != 0, b != 0);
    (match op {
        BinOp::Xor | BinOp::Ne => a != b,
        BinOp::And | BinOp::LogAnd => a && b,
        BinOp::Or | BinOp::LogOr => a || b,
        BinOp::Eq => a == b,
        BinOp::Lt => !a && b,
        BinOp::Le => !a || b,
        BinOp::Gt => a && !b,
        BinOp::Ge => a || !b,
        _ => unreachable!("not a bit operator"),
    }) as i64
}

fn store(cells: &Cells, v: Val) {
    let mut c = cells.borrow_mut();
    match v {
        Val::Scalar(x) => c[0] = Some(x),
        Val::Array(xs) => {
            for (slot, x) in c.iter_mut().zip(xs) {
                *slot = Some(x);
            }
        }
        Val::Void => unreachable!("void is not stored"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semantics::check_source;

    fn run_src(src: &str, overrides: &[(String, i64)], inputs: &[bool]) -> Vec<bool> {
        let p = check_source(src, overrides).unwrap();
        run(&p, inputs).unwrap().outputs
    }

    /// Plain bit-twiddling model of the corpus LFSR.
    fn lfsr_model(mut reg: [bool; 19], len: usize) -> Vec<bool> {
        let mut out = Vec::new();
        for _ in 0..len {
            out.push(reg[0]);
            let fb = reg[0] ^ reg[1] ^ reg[2] ^ reg[5];
            reg.rotate_left(1);
            reg[18] = fb;
        }
        out
    }

    #[test]
    fn identity_program() {
        assert_eq!(
            run_src("__in bit a; __out bit b; void main() { b = a; }", &[], &[true]),
            vec![true]
        );
    }

    #[test]
    fn zero_key_gives_zero_stream() {
        let out = run_src(corpus::LFSR, &[], &[false; 19]);
        assert_eq!(out, vec![false; 128]);
    }

    #[test]
    fn lfsr_matches_model() {
        let mut key = [false; 19];
        key[0] = true;
        let len = 40;
        let out = run_src(corpus::LFSR, &[("len".into(), len as i64)], &key);
        assert_eq!(out, lfsr_model(key, len));
        // first bit is reg[0]; feedback from reg[0] reaches the output after
        // 19 steps
        assert!(out[0]);
        assert!(out[1..19].iter().all(|b| !b));
        assert!(out[19]);
    }

    #[test]
    fn short_circuit_skips_side_effects() {
        let src = "__in bit a; __out bit z, w;
                   bit touch() { w = 1; return 1; }
                   void main() { z = a && touch(); }";
        assert_eq!(run_src(src, &[], &[false]), vec![false, false]);
        assert_eq!(run_src(src, &[], &[true]), vec![true, true]);
    }

    #[test]
    fn array_shifts_follow_integer_order() {
        let src = "__in bit a[4]; __out bit l[4], r[4]; void main() { l = a << 1; r = a >> 1; }";
        // a = 0b0110 -> element 1 and 2 set
        let out = run_src(src, &[], &[false, true, true, false]);
        assert_eq!(&out[..4], &[false, false, true, true]);
        assert_eq!(&out[4..], &[true, true, false, false]);
    }

    #[test]
    fn width_is_checked() {
        let p = check_source(corpus::LFSR, &[]).unwrap();
        assert!(matches!(
            run(&p, &[true; 3]),
            Err(InterpError::InputWidth { expected: 19, got: 3 })
        ));
    }

    #[test]
    fn uninitialized_local_is_reported() {
        let p = check_source("__out bit z; void main() { bit t; z = t; }", &[]).unwrap();
        assert!(run(&p, &[]).is_err());
    }
}
