//! Source pretty-printer and a location-free S-expression dump.
//!
//! `parse(tokenize(print(ast)))` reproduces `ast` up to locations and ids;
//! [`sexpr`] is the structural fingerprint used to compare the two.

use super::ast::*;
use std::fmt::Write;

pub fn print(ast: &Ast) -> String {
    let mut out = String::new();
    for item in &ast.items {
        match item {
            Item::Globals(decls) => {
                print_decls(&mut out, decls);
                out.push_str(";\n");
            }
            Item::Function(f) => {
                let params: Vec<String> = f
                    .params
                    .iter()
                    .map(|p| match &p.len {
                        Some(len) => format!("{} {}[{}]", p.ty.as_str(), p.name, expr_str(len)),
                        None => format!("{} {}", p.ty.as_str(), p.name),
                    })
                    .collect();
                let _ = write!(out, "{} {}({}) ", f.ret.as_str(), f.name, params.join(", "));
                print_block(&mut out, &f.body, 0);
                out.push('\n');
            }
        }
    }
    out
}

fn print_decls(out: &mut String, decls: &[VarDecl]) {
    let first = &decls[0];
    match first.attr {
        Attr::In => out.push_str("__in "),
        Attr::Out => out.push_str("__out "),
        Attr::None => {}
    }
    out.push_str(first.ty.as_str());
    for (i, d) in decls.iter().enumerate() {
        out.push_str(if i == 0 { " " } else { ", " });
        out.push_str(&d.name);
        if let Some(len) = &d.len {
            let _ = write!(out, "[{}]", expr_str(len));
        }
        if let Some(init) = &d.init {
            let _ = write!(out, " = {}", expr_str(init));
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("    ");
    }
}

fn print_block(out: &mut String, b: &Block, depth: usize) {
    out.push_str("{\n");
    for s in &b.stmts {
        indent(out, depth + 1);
        print_stmt(out, s, depth + 1);
        out.push('\n');
    }
    indent(out, depth);
    out.push('}');
}

fn assign_str(a: &Assign) -> String {
    format!("{} {} {}", lvalue_str(&a.target), a.op.as_str(), expr_str(&a.value))
}

fn lvalue_str(l: &LValue) -> String {
    match &l.index {
        Some(i) => format!("{}[{}]", l.name, expr_str(i)),
        None => l.name.clone(),
    }
}

fn print_stmt(out: &mut String, s: &Stmt, depth: usize) {
    match &s.kind {
        StmtKind::Block(b) => print_block(out, b, depth),
        StmtKind::Decl(decls) => {
            print_decls(out, decls);
            out.push(';');
        }
        StmtKind::Expr(e) => {
            let _ = write!(out, "{};", expr_str(e));
        }
        StmtKind::Assign(a) => {
            let _ = write!(out, "{};", assign_str(a));
        }
        StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            let _ = write!(out, "if ({}) ", expr_str(cond));
            // A bare `if` without else as the then-branch of an if/else would
            // capture our else on re-parse; brace it.
            let needs_brace = else_branch.is_some() && ends_in_open_if(then_branch);
            if needs_brace {
                out.push_str("{ ");
                print_stmt(out, then_branch, depth);
                out.push_str(" }");
            } else {
                print_stmt(out, then_branch, depth);
            }
            if let Some(e) = else_branch {
                out.push_str(" else ");
                print_stmt(out, e, depth);
            }
        }
        StmtKind::For { init, cond, step, body } => {
            let _ = write!(
                out,
                "for ({}; {}; {}) ",
                assign_str(init),
                expr_str(cond),
                assign_str(step)
            );
            print_stmt(out, body, depth);
        }
        StmtKind::Return(None) => out.push_str("return;"),
        StmtKind::Return(Some(e)) => {
            let _ = write!(out, "return {};", expr_str(e));
        }
    }
}

fn ends_in_open_if(s: &Stmt) -> bool {
    match &s.kind {
        StmtKind::If { else_branch: None, .. } => true,
        StmtKind::If {
            else_branch: Some(e), ..
        } => ends_in_open_if(e),
        StmtKind::For { body, .. } => ends_in_open_if(body),
        _ => false,
    }
}

/// Render an expression with the minimum parentheses C precedence needs.
pub fn expr_str(e: &Expr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e, 0);
    s
}

// Binding levels: 0 = ternary, 1..=10 binary, 11 = unary, 12 = primary.
fn expr_level(e: &Expr) -> u8 {
    match &e.kind {
        ExprKind::Ternary(..) => 0,
        ExprKind::Binary(op, ..) => op.precedence(),
        ExprKind::Unary(..) => 11,
        _ => 12,
    }
}

fn write_expr(out: &mut String, e: &Expr, min_level: u8) {
    let level = expr_level(e);
    let paren = level < min_level;
    if paren {
        out.push('(');
    }
    match &e.kind {
        ExprKind::Int(v) => {
            let _ = write!(out, "{v}");
        }
        ExprKind::Name(n) => out.push_str(n),
        ExprKind::Index(n, i) => {
            let _ = write!(out, "{n}[");
            write_expr(out, i, 0);
            out.push(']');
        }
        ExprKind::Call(n, args) => {
            let _ = write!(out, "{n}(");
            for (k, a) in args.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_expr(out, a, 0);
            }
            out.push(')');
        }
        ExprKind::Unary(op, x) => {
            out.push_str(op.as_str());
            write_expr(out, x, 11);
        }
        ExprKind::Binary(op, l, r) => {
            let p = op.precedence();
            write_expr(out, l, p);
            let _ = write!(out, " {} ", op.as_str());
            write_expr(out, r, p + 1);
        }
        ExprKind::Ternary(c, t, f) => {
            write_expr(out, c, 1);
            out.push_str(" ? ");
            write_expr(out, t, 0);
            out.push_str(" : ");
            write_expr(out, f, 0);
        }
    }
    if paren {
        out.push(')');
    }
}

/// Location- and id-free structural dump of a whole program.
pub fn sexpr(ast: &Ast) -> String {
    let mut out = String::new();
    for item in &ast.items {
        match item {
            Item::Globals(decls) => {
                out.push_str(&sexpr_decls(decls));
            }
            Item::Function(f) => {
                let params: Vec<String> = f.params.iter().map(sexpr_decl).collect();
                let _ = write!(
                    out,
                    "(fn {} {} ({}) {})",
                    f.ret.as_str(),
                    f.name,
                    params.join(" "),
                    sexpr_block(&f.body)
                );
            }
        }
        out.push('\n');
    }
    out
}

fn sexpr_decl(d: &VarDecl) -> String {
    let attr = match d.attr {
        Attr::None => "",
        Attr::In => "__in ",
        Attr::Out => "__out ",
    };
    let len = d
        .len
        .as_ref()
        .map(|l| format!(" [{}]", sexpr_of_expr(l)))
        .unwrap_or_default();
    let init = d
        .init
        .as_ref()
        .map(|i| format!(" = {}", sexpr_of_expr(i)))
        .unwrap_or_default();
    format!("({attr}{} {}{len}{init})", d.ty.as_str(), d.name)
}

fn sexpr_decls(decls: &[VarDecl]) -> String {
    let parts: Vec<String> = decls.iter().map(sexpr_decl).collect();
    format!("(decl {})", parts.join(" "))
}

fn sexpr_block(b: &Block) -> String {
    let parts: Vec<String> = b.stmts.iter().map(sexpr_stmt).collect();
    format!("(block {})", parts.join(" "))
}

fn sexpr_assign(a: &Assign) -> String {
    let target = match &a.target.index {
        Some(i) => format!("({} {})", a.target.name, sexpr_of_expr(i)),
        None => a.target.name.clone(),
    };
    format!("({} {} {})", a.op.as_str(), target, sexpr_of_expr(&a.value))
}

fn sexpr_stmt(s: &Stmt) -> String {
    match &s.kind {
        StmtKind::Block(b) => sexpr_block(b),
        StmtKind::Decl(d) => sexpr_decls(d),
        StmtKind::Expr(e) => format!("(expr {})", sexpr_of_expr(e)),
        StmtKind::Assign(a) => sexpr_assign(a),
        StmtKind::If {
            cond,
            then_branch,
            else_branch,
        } => match else_branch {
            Some(e) => format!(
                "(if {} {} {})",
                sexpr_of_expr(cond),
                sexpr_stmt(then_branch),
                sexpr_stmt(e)
            ),
            None => format!("(if {} {})", sexpr_of_expr(cond), sexpr_stmt(then_branch)),
        },
        StmtKind::For { init, cond, step, body } => format!(
            "(for {} {} {} {})",
            sexpr_assign(init),
            sexpr_of_expr(cond),
            sexpr_assign(step),
            sexpr_stmt(body)
        ),
        StmtKind::Return(None) => "(return)".to_string(),
        StmtKind::Return(Some(e)) => format!("(return {})", sexpr_of_expr(e)),
    }
}

pub fn sexpr_of_expr(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Int(v) => v.to_string(),
        ExprKind::Name(n) => n.clone(),
        ExprKind::Index(n, i) => format!("({n} {})", sexpr_of_expr(i)),
        ExprKind::Call(n, args) => {
            let a: Vec<String> = args.iter().map(sexpr_of_expr).collect();
            format!("(call {n} {})", a.join(" "))
        }
        ExprKind::Unary(op, x) => format!("({} {})", op.as_str(), sexpr_of_expr(x)),
        ExprKind::Binary(op, l, r) => format!("({} {} {})", op.as_str(), sexpr_of_expr(l), sexpr_of_expr(r)),
        ExprKind::Ternary(c, t, f) => format!("(? {} {} {})", sexpr_of_expr(c), sexpr_of_expr(t), sexpr_of_expr(f)),
    }
}
