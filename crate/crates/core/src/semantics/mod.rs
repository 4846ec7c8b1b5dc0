//! Type checking and translation-time validation.
//!
//! `bit` is the only data type that reaches the encoding. `int` values are
//! service variables (counters, indices, lengths) and must be computable at
//! translation time, which holds by construction because no `bit` value can
//! be converted to `int`. The checker enforces that separation, the attribute
//! rules, return placement and the absence of recursion.

pub mod consteval;

use std::collections::{BTreeMap, HashMap};

use crate::diag::{Diagnostic, Loc};
use crate::frontend::ast::*;
use crate::frontend::scope::{ScopeTree, Symbol};
pub use consteval::{const_eval, int_binop, int_unop, EvalError};

/// Static type of an expression or lvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ty {
    Bit,
    Int,
    BitArray(usize),
    IntArray(usize),
    Void,
}

impl Ty {
    fn describe(self) -> String {
        match self {
            Ty::Bit => "bit".into(),
            Ty::Int => "int".into(),
            Ty::BitArray(n) => format!("bit[{n}]"),
            Ty::IntArray(n) => format!("int[{n}]"),
            Ty::Void => "void".into(),
        }
    }
}

/// Resolved facts about one variable declaration.
#[derive(Debug, Clone)]
pub struct VarInfo {
    pub name: String,
    pub elem: Type,
    pub len: Option<usize>,
    pub attr: Attr,
    pub global: bool,
    pub param: bool,
    pub loc: Loc,
}

impl VarInfo {
    pub fn ty(&self) -> Ty {
        match (self.elem, self.len) {
            (Type::Bit, None) => Ty::Bit,
            (Type::Int, None) => Ty::Int,
            (Type::Bit, Some(n)) => Ty::BitArray(n),
            (Type::Int, Some(n)) => Ty::IntArray(n),
            (Type::Void, _) => Ty::Void,
        }
    }

    pub fn width(&self) -> usize {
        self.len.unwrap_or(1)
    }
}

/// A checked program: the syntax tree plus every side table later phases
/// need. Expression types are indexed by [`ExprId`].
#[derive(Debug, Clone)]
pub struct Program {
    pub ast: Ast,
    pub scopes: ScopeTree,
    pub types: Vec<Option<Ty>>,
    pub vars: HashMap<DeclId, VarInfo>,
    /// Global declarations in source order.
    pub globals: Vec<DeclId>,
    /// Values of global `int` scalars after overrides.
    pub const_env: BTreeMap<String, i64>,
    /// Statically known iteration counts of canonical `for` loops, keyed by
    /// the loop condition's expression id.
    pub trip_counts: HashMap<ExprId, u64>,
    /// Index of `main` in `ast.functions()` order.
    pub main: usize,
    pub warnings: Vec<Diagnostic>,
}

impl Program {
    pub fn ty(&self, id: ExprId) -> Ty {
        self.types[id.0 as usize].expect("every expression is typed after checking")
    }

    pub fn var(&self, id: DeclId) -> &VarInfo {
        &self.vars[&id]
    }

    pub fn function(&self, index: usize) -> &FunctionDecl {
        self.ast.functions().nth(index).expect("function index in range")
    }

    /// Declarations of `__in` globals in declaration order.
    pub fn inputs(&self) -> impl Iterator<Item = DeclId> + '_ {
        self.globals.iter().copied().filter(|d| self.vars[d].attr == Attr::In)
    }

    pub fn outputs(&self) -> impl Iterator<Item = DeclId> + '_ {
        self.globals.iter().copied().filter(|d| self.vars[d].attr == Attr::Out)
    }

    pub fn input_width(&self) -> usize {
        self.inputs().map(|d| self.vars[&d].width()).sum()
    }

    pub fn output_width(&self) -> usize {
        self.outputs().map(|d| self.vars[&d].width()).sum()
    }
}

/// Parse, resolve and check `source`, applying `overrides` to global `int`
/// initializers (e.g. a keystream length).
pub fn check_source(source: &str, overrides: &[(String, i64)]) -> Result<Program, Diagnostic> {
    let ast = crate::frontend::parse_source(source)?;
    let scopes = crate::frontend::build_scope_tree(&ast)?;
    typecheck(ast, scopes, overrides)
}

pub fn typecheck(ast: Ast, scopes: ScopeTree, overrides: &[(String, i64)]) -> Result<Program, Diagnostic> {
    let mut c = Checker {
        scopes: &scopes,
        types: vec![None; ast.expr_count as usize],
        vars: HashMap::new(),
        const_env: BTreeMap::new(),
        const_by_decl: HashMap::new(),
        trip_counts: HashMap::new(),
        current_fn: None,
        fn_sigs: ast
            .functions()
            .map(|f| (f.ret, f.params.iter().map(|p| p.id).collect()))
            .collect(),
        calls: vec![Vec::new(); ast.functions().count()],
    };

    for (name, _) in overrides {
        let found = ast
            .globals()
            .any(|g| &g.name == name && g.ty == Type::Int && g.len.is_none());
        if !found {
            return Err(Diagnostic::error(
                Loc::new(1, 1),
                format!("cannot override `{name}`: no global int scalar with that name"),
            ));
        }
    }

    let mut globals = Vec::new();
    for g in ast.globals() {
        c.var_decl(g, true, false)?;
        globals.push(g.id);
        if g.ty == Type::Int && g.len.is_none() {
            let value = match overrides.iter().rev().find(|(n, _)| n == &g.name) {
                Some((_, v)) => Some(*v),
                None => match &g.init {
                    Some(init) => Some(c.const_value(init)?),
                    None => Some(0),
                },
            };
            if let Some(v) = value {
                c.const_env.insert(g.name.clone(), v);
                c.const_by_decl.insert(g.id, v);
            }
        }
    }

    let mut main = None;
    for (index, f) in ast.functions().enumerate() {
        if f.name == "main" {
            if !f.params.is_empty() {
                return Err(Diagnostic::error(f.loc, "`main` must not take parameters"));
            }
            main = Some(index);
        }
        for p in &f.params {
            c.var_decl(p, false, true)?;
        }
    }
    for (index, f) in ast.functions().enumerate() {
        c.current_fn = Some(index);
        c.function_body(f)?;
    }
    let main = main.expect("parser guarantees a main function");
    c.check_recursion(&ast)?;

    let mut warnings = Vec::new();
    if !ast.globals().any(|g| g.attr == Attr::In) {
        warnings.push(Diagnostic::warning(
            Loc::new(1, 1),
            "program declares no `__in` variables; it computes a constant function",
        ));
    }

    let Checker {
        types,
        vars,
        const_env,
        trip_counts,
        ..
    } = c;
    Ok(Program {
        ast,
        scopes,
        types,
        vars,
        globals,
        const_env,
        trip_counts,
        main,
        warnings,
    })
}

struct Checker<'a> {
    scopes: &'a ScopeTree,
    types: Vec<Option<Ty>>,
    vars: HashMap<DeclId, VarInfo>,
    const_env: BTreeMap<String, i64>,
    const_by_decl: HashMap<DeclId, i64>,
    trip_counts: HashMap<ExprId, u64>,
    current_fn: Option<usize>,
    fn_sigs: Vec<(Type, Vec<DeclId>)>,
    /// Call graph edges with the location of each call.
    calls: Vec<Vec<(usize, Loc)>>,
}

type CResult<T> = Result<T, Diagnostic>;

fn err<T>(loc: Loc, msg: impl Into<String>) -> CResult<T> {
    Err(Diagnostic::error(loc, msg))
}

fn is_bit_literal(e: &Expr) -> bool {
    matches!(e.kind, ExprKind::Int(0 | 1))
}

impl<'a> Checker<'a> {
    /// Evaluate an expression that must be constant (array lengths, global
    /// int initializers). Only literals and global int scalars qualify.
    fn const_value(&self, e: &Expr) -> CResult<i64> {
        let env = |x: &Expr, _: &str| -> Option<i64> {
            let d = self.scopes.var(x.id)?;
            self.const_by_decl.get(&d).copied()
        };
        const_eval(e, &env).map_err(|er| Diagnostic::error(e.loc, er.to_string()))
    }

    fn try_const(&self, e: &Expr) -> Option<i64> {
        let env = |x: &Expr, _: &str| -> Option<i64> {
            let d = self.scopes.var(x.id)?;
            self.const_by_decl.get(&d).copied()
        };
        const_eval(e, &env).ok()
    }

    fn set(&mut self, id: ExprId, ty: Ty) -> Ty {
        self.types[id.0 as usize] = Some(ty);
        ty
    }

    fn var_decl(&mut self, d: &VarDecl, global: bool, param: bool) -> CResult<()> {
        if d.ty == Type::Void {
            return err(d.loc, format!("variable `{}` declared void", d.name));
        }
        if d.attr != Attr::None {
            if !global {
                return err(
                    d.loc,
                    format!(
                        "`{}` is local; `__in`/`__out` attributes are only allowed on global bit declarations",
                        d.name
                    ),
                );
            }
            if d.ty != Type::Bit {
                return err(
                    d.loc,
                    format!("`__in`/`__out` attribute on non-bit variable `{}`", d.name),
                );
            }
        }
        if d.attr == Attr::In && d.init.is_some() {
            return err(d.loc, format!("input `{}` cannot have an initializer", d.name));
        }
        let len = match &d.len {
            Some(e) => {
                self.set(e.id, Ty::Int);
                self.int_expr_types(e)?;
                let n = self.const_value(e)?;
                if n < 1 {
                    return err(e.loc, format!("array `{}` must have length >= 1, got {n}", d.name));
                }
                Some(n as usize)
            }
            None => None,
        };
        let info = VarInfo {
            name: d.name.clone(),
            elem: d.ty,
            len,
            attr: d.attr,
            global,
            param,
            loc: d.loc,
        };
        let ty = info.ty();
        self.vars.insert(d.id, info);
        if let Some(init) = &d.init {
            if global && contains_call(init) {
                return err(init.loc, "function calls are not allowed in global initializers");
            }
            self.expect(init, ty, "initializer")?;
        }
        Ok(())
    }

    /// Type an expression that is known to be evaluated as a constant int
    /// (array lengths) and record its sub-expression types.
    fn int_expr_types(&mut self, e: &Expr) -> CResult<()> {
        let t = self.expr(e, Some(Ty::Int))?;
        if t != Ty::Int {
            return err(e.loc, format!("expected int, found {}", t.describe()));
        }
        Ok(())
    }

    fn function_body(&mut self, f: &FunctionDecl) -> CResult<()> {
        let n = f.body.stmts.len();
        for (i, s) in f.body.stmts.iter().enumerate() {
            if let StmtKind::Return(value) = &s.kind {
                if i + 1 != n {
                    return err(s.loc, "`return` must be the last statement of the function body");
                }
                match (f.ret, value) {
                    (Type::Void, None) => {}
                    (Type::Void, Some(v)) => return err(v.loc, format!("void function `{}` returns a value", f.name)),
                    (ret, Some(v)) => {
                        let ty = if ret == Type::Bit { Ty::Bit } else { Ty::Int };
                        self.expect(v, ty, "return value")?;
                    }
                    (_, None) => return err(s.loc, format!("function `{}` must return a value", f.name)),
                }
            } else {
                self.stmt(s)?;
            }
        }
        if f.ret != Type::Void && !matches!(f.body.stmts.last().map(|s| &s.kind), Some(StmtKind::Return(Some(_)))) {
            return err(
                f.loc,
                format!(
                    "function `{}` returns {} but does not end with `return`",
                    f.name,
                    f.ret.as_str()
                ),
            );
        }
        Ok(())
    }

    fn stmt(&mut self, s: &Stmt) -> CResult<()> {
        match &s.kind {
            StmtKind::Block(b) => b.stmts.iter().try_for_each(|s| self.stmt(s)),
            StmtKind::Decl(decls) => decls.iter().try_for_each(|d| self.var_decl(d, false, false)),
            StmtKind::Expr(e) => {
                self.expr(e, None)?;
                Ok(())
            }
            StmtKind::Assign(a) => self.assign(a),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                self.condition(cond)?;
                self.stmt(then_branch)?;
                if let Some(e) = else_branch {
                    self.stmt(e)?;
                }
                Ok(())
            }
            StmtKind::For { init, cond, step, body } => {
                self.assign(init)?;
                let t = self.expr(cond, Some(Ty::Int))?;
                if t != Ty::Int {
                    return err(
                        cond.loc,
                        format!(
                            "loop condition has type {}; loop bounds must be int expressions known at translation time",
                            t.describe()
                        ),
                    );
                }
                self.assign(step)?;
                self.stmt(body)?;
                if let Some(n) = self.static_trip_count(init, cond, step, body) {
                    self.trip_counts.insert(cond.id, n);
                }
                Ok(())
            }
            StmtKind::Return(_) => err(
                s.loc,
                "`return` is only allowed as the last statement of a function body",
            ),
        }
    }

    fn condition(&mut self, cond: &Expr) -> CResult<()> {
        match self.expr(cond, None)? {
            Ty::Bit | Ty::Int => Ok(()),
            t => err(cond.loc, format!("condition has type {}", t.describe())),
        }
    }

    fn lvalue(&mut self, l: &LValue) -> CResult<Ty> {
        let decl = self.scopes.var(l.id).expect("resolved lvalue");
        let info = &self.vars[&decl];
        let base = info.ty();
        let ty = match (&l.index, base) {
            (None, t) => t,
            (Some(idx), Ty::BitArray(n) | Ty::IntArray(n)) => {
                let elem = if matches!(base, Ty::BitArray(_)) {
                    Ty::Bit
                } else {
                    Ty::Int
                };
                self.index(idx, n, &l.name)?;
                elem
            }
            (Some(_), t) => {
                return err(
                    l.loc,
                    format!("`{}` has type {} and cannot be indexed", l.name, t.describe()),
                )
            }
        };
        Ok(self.set(l.id, ty))
    }

    fn index(&mut self, idx: &Expr, len: usize, name: &str) -> CResult<()> {
        let t = self.expr(idx, Some(Ty::Int))?;
        if t != Ty::Int {
            return err(
                idx.loc,
                format!("index into `{name}` has type {}; indices must be int", t.describe()),
            );
        }
        if let Some(v) = self.try_const(idx) {
            if v < 0 || v as usize >= len {
                return err(
                    idx.loc,
                    format!("index {v} is out of bounds for `{name}` of length {len}"),
                );
            }
        }
        Ok(())
    }

    fn assign(&mut self, a: &Assign) -> CResult<()> {
        let target = self.lvalue(&a.target)?;
        match (a.op, target) {
            (AssignOp::Set, t) => {
                self.expect(&a.value, t, "assignment")?;
            }
            (AssignOp::Xor | AssignOp::And | AssignOp::Or, t @ (Ty::Bit | Ty::Int | Ty::BitArray(_))) => {
                self.expect(&a.value, t, "compound assignment")?;
            }
            (AssignOp::Add | AssignOp::Sub, Ty::Int) => {
                self.expect(&a.value, Ty::Int, "compound assignment")?;
            }
            (op, t) => {
                return err(
                    a.loc,
                    format!("operator `{}` is not defined for {}", op.as_str(), t.describe()),
                )
            }
        }
        Ok(())
    }

    fn expect(&mut self, e: &Expr, want: Ty, what: &str) -> CResult<()> {
        let got = self.expr(e, Some(want))?;
        if got != want {
            let hint = if want == Ty::Int && got == Ty::Bit {
                " (bit values cannot be converted to int)"
            } else {
                ""
            };
            return err(
                e.loc,
                format!(
                    "type mismatch in {what}: expected {}, found {}{hint}",
                    want.describe(),
                    got.describe()
                ),
            );
        }
        Ok(())
    }

    /// Infer the type of `e`. `hint` lets integer literals 0/1 become bits.
    fn expr(&mut self, e: &Expr, hint: Option<Ty>) -> CResult<Ty> {
        let ty = match &e.kind {
            ExprKind::Int(_) => {
                if hint == Some(Ty::Bit) && is_bit_literal(e) {
                    Ty::Bit
                } else {
                    Ty::Int
                }
            }
            ExprKind::Name(_) => {
                let d = self.scopes.var(e.id).expect("resolved name");
                self.vars[&d].ty()
            }
            ExprKind::Index(name, idx) => {
                let d = self.scopes.var(e.id).expect("resolved name");
                match self.vars[&d].ty() {
                    Ty::BitArray(n) => {
                        self.index(idx, n, name)?;
                        Ty::Bit
                    }
                    Ty::IntArray(n) => {
                        self.index(idx, n, name)?;
                        Ty::Int
                    }
                    t => {
                        return err(
                            e.loc,
                            format!("`{name}` has type {} and cannot be indexed", t.describe()),
                        )
                    }
                }
            }
            ExprKind::Call(name, args) => self.call(e, name, args)?,
            ExprKind::Unary(op, x) => {
                let t = self.expr(x, hint.filter(|h| *h == Ty::Bit))?;
                match (op, t) {
                    (UnOp::Not | UnOp::BitNot, Ty::Bit) => Ty::Bit,
                    (UnOp::BitNot, Ty::BitArray(n)) => Ty::BitArray(n),
                    (_, Ty::Int) => Ty::Int,
                    (op, t) => {
                        return err(
                            e.loc,
                            format!("operator `{}` is not defined for {}", op.as_str(), t.describe()),
                        )
                    }
                }
            }
            ExprKind::Binary(op, l, r) => self.binary(e, *op, l, r, hint)?,
            ExprKind::Ternary(c, t, f) => {
                self.condition(c)?;
                let cond_ty = self.types[c.id.0 as usize].unwrap();
                // Integer literals in either arm follow the other arm's type.
                let (tt, ft) = if is_bit_literal(t) && !is_bit_literal(f) {
                    let ft = self.expr(f, hint)?;
                    (self.expr(t, Some(ft))?, ft)
                } else {
                    let tt = self.expr(t, hint)?;
                    (tt, self.expr(f, Some(tt))?)
                };
                if tt != ft {
                    return err(
                        e.loc,
                        format!("conditional arms differ: {} vs {}", tt.describe(), ft.describe()),
                    );
                }
                if cond_ty == Ty::Bit && tt != Ty::Bit {
                    return err(
                        e.loc,
                        format!(
                            "a bit-valued condition can only select bit values, not {}",
                            tt.describe()
                        ),
                    );
                }
                tt
            }
        };
        Ok(self.set(e.id, ty))
    }

    fn binary(&mut self, e: &Expr, op: BinOp, l: &Expr, r: &Expr, hint: Option<Ty>) -> CResult<Ty> {
        let shift = matches!(op, BinOp::Shl | BinOp::Shr);
        // Infer the side that is not a bare literal first so 0/1 literals can
        // adopt the bit type of their sibling.
        let (lt, rt) = if shift {
            let lt = self.expr(l, hint)?;
            (lt, self.expr(r, Some(Ty::Int))?)
        } else if is_bit_literal(l) && !is_bit_literal(r) {
            let rt = self.expr(r, hint.filter(|_| !op.is_comparison()))?;
            (self.expr(l, Some(rt))?, rt)
        } else {
            let lt = self.expr(l, hint.filter(|_| !op.is_comparison()))?;
            (lt, self.expr(r, Some(lt))?)
        };
        let mismatch = || {
            err(
                e.loc,
                format!(
                    "operator `{}` is not defined for {} and {}",
                    op.as_str(),
                    lt.describe(),
                    rt.describe()
                ),
            )
        };
        Ok(match (lt, rt) {
            (Ty::Int, Ty::Int) => Ty::Int,
            (Ty::Bit, Ty::Bit) => match op {
                BinOp::Xor | BinOp::And | BinOp::Or | BinOp::LogAnd | BinOp::LogOr => Ty::Bit,
                op if op.is_comparison() => Ty::Bit,
                _ => return mismatch(),
            },
            (Ty::BitArray(n), Ty::BitArray(m)) if n == m => match op {
                BinOp::Xor | BinOp::And | BinOp::Or => Ty::BitArray(n),
                _ => return mismatch(),
            },
            (Ty::BitArray(n), Ty::Int) if shift => Ty::BitArray(n),
            _ => return mismatch(),
        })
    }

    fn call(&mut self, e: &Expr, name: &str, args: &[Expr]) -> CResult<Ty> {
        let Some(Symbol::Function(index)) = self.scopes.symbol(e.id) else {
            unreachable!("resolver guarantees calls name functions")
        };
        if let Some(caller) = self.current_fn {
            self.calls[caller].push((index, e.loc));
        }
        let (ret, params) = self.fn_sigs[index].clone();
        if params.len() != args.len() {
            return err(
                e.loc,
                format!("`{name}` takes {} argument(s), {} given", params.len(), args.len()),
            );
        }
        for (p, a) in params.iter().zip(args) {
            let pty = self.vars[p].ty();
            match pty {
                Ty::BitArray(_) | Ty::IntArray(_) => {
                    if !matches!(a.kind, ExprKind::Name(_)) {
                        return err(a.loc, "array arguments must be array variables (passed by reference)");
                    }
                    self.expect(a, pty, "argument")?;
                }
                t => self.expect(a, t, "argument")?,
            }
        }
        Ok(match ret {
            Type::Bit => Ty::Bit,
            Type::Int => Ty::Int,
            Type::Void => Ty::Void,
        })
    }

    fn check_recursion(&self, ast: &Ast) -> CResult<()> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let names: Vec<&str> = ast.functions().map(|f| f.name.as_str()).collect();
        let mut marks = vec![Mark::New; names.len()];
        let mut stack: Vec<usize> = Vec::new();

        fn visit(
            f: usize,
            calls: &[Vec<(usize, Loc)>],
            marks: &mut [Mark],
            stack: &mut Vec<usize>,
            names: &[&str],
        ) -> CResult<()> {
            marks[f] = Mark::Active;
            stack.push(f);
            for &(g, loc) in &calls[f] {
                match marks[g] {
                    Mark::Active => {
                        let start = stack.iter().position(|&x| x == g).unwrap();
                        let mut cycle: Vec<&str> = stack[start..].iter().map(|&i| names[i]).collect();
                        cycle.push(names[g]);
                        return err(loc, format!("recursion is not supported: {}", cycle.join(" -> ")));
                    }
                    Mark::New => visit(g, calls, marks, stack, names)?,
                    Mark::Done => {}
                }
            }
            stack.pop();
            marks[f] = Mark::Done;
            Ok(())
        }

        for f in 0..names.len() {
            if marks[f] == Mark::New {
                visit(f, &self.calls, &mut marks, &mut stack, &names)?;
            }
        }
        Ok(())
    }

    /// Iteration count of `for (v = a; v OP b; v = v +/- c)` when the bounds
    /// are constants and the body never assigns `v`.
    fn static_trip_count(&self, init: &Assign, cond: &Expr, step: &Assign, body: &Stmt) -> Option<u64> {
        const LIMIT: u64 = 1 << 24;
        let var = self.scopes.var(init.target.id)?;
        let info = &self.vars[&var];
        if init.op != AssignOp::Set || init.target.index.is_some() || info.ty() != Ty::Int || info.global {
            return None;
        }
        if self.scopes.var(step.target.id) != Some(var) || step.target.index.is_some() {
            return None;
        }
        let mut assigned = false;
        let block = Block {
            id: BlockId(u32::MAX),
            stmts: vec![body.clone()],
            loc: body.loc,
        };
        walk_stmts(&block, &mut |s| match &s.kind {
            StmtKind::Assign(a) if self.scopes.var(a.target.id) == Some(var) => assigned = true,
            StmtKind::For { init, step, .. }
                if self.scopes.var(init.target.id) == Some(var) || self.scopes.var(step.target.id) == Some(var) =>
            {
                assigned = true
            }
            _ => {}
        });
        if assigned || contains_call(cond) || contains_call(&step.value) {
            return None;
        }
        let consts = |x: &Expr, _: &str| -> Option<i64> {
            let d = self.scopes.var(x.id)?;
            self.const_by_decl.get(&d).copied()
        };
        let mut v = const_eval(&init.value, &consts).ok()?;
        let mut n = 0u64;
        loop {
            let env = |x: &Expr, s: &str| -> Option<i64> {
                if self.scopes.var(x.id) == Some(var) {
                    Some(v)
                } else {
                    consts(x, s)
                }
            };
            if const_eval(cond, &env).ok()? == 0 {
                return Some(n);
            }
            n += 1;
            if n > LIMIT {
                return None;
            }
            let next = const_eval(&step.value, &env).ok()?;
            let prev = v;
            v = match step.op {
                AssignOp::Set => next,
                AssignOp::Add => v.wrapping_add(next),
                AssignOp::Sub => v.wrapping_sub(next),
                _ => return None,
            };
            if v == prev {
                return None;
            }
        }
    }
}

fn contains_call(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Call(..) => true,
        ExprKind::Int(_) | ExprKind::Name(_) => false,
        ExprKind::Index(_, i) => contains_call(i),
        ExprKind::Unary(_, x) => contains_call(x),
        ExprKind::Binary(_, l, r) => contains_call(l) || contains_call(r),
        ExprKind::Ternary(c, t, f) => contains_call(c) || contains_call(t) || contains_call(f),
    }
}
