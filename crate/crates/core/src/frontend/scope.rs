//! Lexical scopes and name resolution.
//!
//! All functions and global variables live in the root scope and are visible
//! everywhere. A function's parameters share the scope of its body block;
//! every nested block opens a child scope. Locals are visible from their
//! declaration to the end of the enclosing block and may shadow outer names.

use std::collections::HashMap;

use super::ast::*;
use crate::diag::{Diagnostic, Loc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScopeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Var(DeclId),
    /// Index into `Ast::functions()` order.
    Function(usize),
}

#[derive(Debug, Clone)]
pub struct Scope {
    pub parent: Option<ScopeId>,
    pub block: Option<BlockId>,
    pub symbols: HashMap<String, Symbol>,
}

#[derive(Debug, Clone)]
pub struct DeclMeta {
    pub name: String,
    pub scope: ScopeId,
    pub global: bool,
    pub param: bool,
    pub loc: Loc,
}

#[derive(Debug, Clone)]
pub struct ScopeTree {
    pub scopes: Vec<Scope>,
    /// Every `Name`, `Index`, `Call` expression and every lvalue, by id.
    pub resolved: HashMap<ExprId, Symbol>,
    pub decls: HashMap<DeclId, DeclMeta>,
}

impl ScopeTree {
    pub const ROOT: ScopeId = ScopeId(0);

    pub fn symbol(&self, id: ExprId) -> Option<Symbol> {
        self.resolved.get(&id).copied()
    }

    pub fn var(&self, id: ExprId) -> Option<DeclId> {
        match self.resolved.get(&id) {
            Some(Symbol::Var(d)) => Some(*d),
            _ => None,
        }
    }

    pub fn lookup(&self, mut scope: ScopeId, name: &str) -> Option<Symbol> {
        loop {
            let s = &self.scopes[scope.0 as usize];
            if let Some(sym) = s.symbols.get(name) {
                return Some(*sym);
            }
            scope = s.parent?;
        }
    }

    /// Depth of a scope below the root (root = 0).
    pub fn depth(&self, mut scope: ScopeId) -> usize {
        let mut d = 0;
        while let Some(p) = self.scopes[scope.0 as usize].parent {
            d += 1;
            scope = p;
        }
        d
    }
}

pub fn build_scope_tree(ast: &Ast) -> Result<ScopeTree, Diagnostic> {
    let mut b = Builder {
        tree: ScopeTree {
            scopes: vec![Scope {
                parent: None,
                block: None,
                symbols: HashMap::new(),
            }],
            resolved: HashMap::new(),
            decls: HashMap::new(),
        },
    };

    // Root scope first so globals and functions are visible in any order.
    let mut fn_index = 0;
    for item in &ast.items {
        match item {
            Item::Globals(decls) => {
                for d in decls {
                    b.declare(ScopeTree::ROOT, d, true, false)?;
                }
            }
            Item::Function(f) => {
                b.insert(ScopeTree::ROOT, &f.name, Symbol::Function(fn_index), f.loc)?;
                fn_index += 1;
            }
        }
    }
    for d in ast.globals() {
        if let Some(len) = &d.len {
            b.expr(ScopeTree::ROOT, len)?;
        }
        if let Some(init) = &d.init {
            b.expr(ScopeTree::ROOT, init)?;
        }
    }
    for f in ast.functions() {
        let scope = b.open(ScopeTree::ROOT, Some(f.body.id));
        for p in &f.params {
            if let Some(len) = &p.len {
                b.expr(scope, len)?;
            }
            b.declare(scope, p, false, true)?;
        }
        b.stmts(scope, &f.body.stmts)?;
    }
    Ok(b.tree)
}

struct Builder {
    tree: ScopeTree,
}

impl Builder {
    fn open(&mut self, parent: ScopeId, block: Option<BlockId>) -> ScopeId {
        let id = ScopeId(self.tree.scopes.len() as u32);
        self.tree.scopes.push(Scope {
            parent: Some(parent),
            block,
            symbols: HashMap::new(),
        });
        id
    }

    fn insert(&mut self, scope: ScopeId, name: &str, sym: Symbol, loc: Loc) -> Result<(), Diagnostic> {
        let symbols = &mut self.tree.scopes[scope.0 as usize].symbols;
        if symbols.contains_key(name) {
            return Err(Diagnostic::error(
                loc,
                format!("redeclaration of `{name}` in the same scope"),
            ));
        }
        symbols.insert(name.to_string(), sym);
        Ok(())
    }

    fn declare(&mut self, scope: ScopeId, d: &VarDecl, global: bool, param: bool) -> Result<(), Diagnostic> {
        self.insert(scope, &d.name, Symbol::Var(d.id), d.loc)?;
        self.tree.decls.insert(
            d.id,
            DeclMeta {
                name: d.name.clone(),
                scope,
                global,
                param,
                loc: d.loc,
            },
        );
        Ok(())
    }

    fn resolve(&mut self, scope: ScopeId, id: ExprId, name: &str, loc: Loc, want_fn: bool) -> Result<(), Diagnostic> {
        match self.tree.lookup(scope, name) {
            None => Err(Diagnostic::error(loc, format!("use of undeclared identifier `{name}`"))),
            Some(Symbol::Function(_)) if !want_fn => {
                Err(Diagnostic::error(loc, format!("function `{name}` used as a variable")))
            }
            Some(Symbol::Var(_)) if want_fn => Err(Diagnostic::error(loc, format!("`{name}` is not a function"))),
            Some(sym) => {
                self.tree.resolved.insert(id, sym);
                Ok(())
            }
        }
    }

    fn expr(&mut self, scope: ScopeId, e: &Expr) -> Result<(), Diagnostic> {
        match &e.kind {
            ExprKind::Int(_) => Ok(()),
            ExprKind::Name(n) => self.resolve(scope, e.id, n, e.loc, false),
            ExprKind::Index(n, i) => {
                self.resolve(scope, e.id, n, e.loc, false)?;
                self.expr(scope, i)
            }
            ExprKind::Call(n, args) => {
                self.resolve(scope, e.id, n, e.loc, true)?;
                args.iter().try_for_each(|a| self.expr(scope, a))
            }
            ExprKind::Unary(_, x) => self.expr(scope, x),
            ExprKind::Binary(_, l, r) => {
                self.expr(scope, l)?;
                self.expr(scope, r)
            }
            ExprKind::Ternary(c, t, f) => {
                self.expr(scope, c)?;
                self.expr(scope, t)?;
                self.expr(scope, f)
            }
        }
    }

    fn assign(&mut self, scope: ScopeId, a: &Assign) -> Result<(), Diagnostic> {
        self.expr(scope, &a.value)?;
        if let Some(i) = &a.target.index {
            self.expr(scope, i)?;
        }
        self.resolve(scope, a.target.id, &a.target.name, a.target.loc, false)
    }

    fn stmts(&mut self, scope: ScopeId, stmts: &[Stmt]) -> Result<(), Diagnostic> {
        stmts.iter().try_for_each(|s| self.stmt(scope, s))
    }

    fn branch(&mut self, scope: ScopeId, s: &Stmt) -> Result<(), Diagnostic> {
        if let StmtKind::Decl(_) = s.kind {
            return Err(Diagnostic::error(
                s.loc,
                "a declaration cannot be the body of `if`/`for` without braces",
            ));
        }
        self.stmt(scope, s)
    }

    fn stmt(&mut self, scope: ScopeId, s: &Stmt) -> Result<(), Diagnostic> {
        match &s.kind {
            StmtKind::Block(b) => {
                let inner = self.open(scope, Some(b.id));
                self.stmts(inner, &b.stmts)
            }
            StmtKind::Decl(decls) => {
                for d in decls {
                    if let Some(len) = &d.len {
                        self.expr(scope, len)?;
                    }
                    if let Some(init) = &d.init {
                        self.expr(scope, init)?;
                    }
                    self.declare(scope, d, false, false)?;
                }
                Ok(())
            }
            StmtKind::Expr(e) => self.expr(scope, e),
            StmtKind::Assign(a) => self.assign(scope, a),
            StmtKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                self.expr(scope, cond)?;
                self.branch(scope, then_branch)?;
                if let Some(e) = else_branch {
                    self.branch(scope, e)?;
                }
                Ok(())
            }
            StmtKind::For { init, cond, step, body } => {
                self.assign(scope, init)?;
                self.expr(scope, cond)?;
                self.assign(scope, step)?;
                self.branch(scope, body)
            }
            StmtKind::Return(Some(e)) => self.expr(scope, e),
            StmtKind::Return(None) => Ok(()),
        }
    }
}
