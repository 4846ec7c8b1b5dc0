//! Lexing, parsing and scope analysis.
//!
//! Grammar (EBNF):
//!
//! ```text
//! program      := { global_decl | function } ;
//! global_decl  := ["__in"|"__out"] type declarator {"," declarator} ";" ;
//! type         := "bit" | "int" | "void" ;
//! declarator   := ident ["[" const_expr "]"] ["=" expr] ;
//! function     := type ident "(" [param {"," param}] ")" block ;
//! param        := type ident ["[" const_expr "]"] ;
//! block        := "{" { statement } "}" ;
//! statement    := block | var_decl ";" | expr ";" | assignment ";"
//!               | "if" "(" expr ")" statement ["else" statement]
//!               | "for" "(" assignment ";" expr ";" assignment ")" statement
//!               | "return" [expr] ";" ;
//! assignment   := lvalue ("=" | "^=" | "&=" | "|=" | "+=" | "-=") expr ;
//! lvalue       := ident ["[" expr "]"] ;
//! ```
//!
//! Expressions use C precedence over `?: || && | ^ & == != < <= > >= << >>
//! + - * / % ! ~` and unary `-`.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod scope;

pub use ast::Ast;
pub use lexer::{tokenize, Token};
pub use parser::parse;
pub use scope::{build_scope_tree, ScopeTree};

use crate::diag::Diagnostic;

/// Tokenize and parse in one step.
pub fn parse_source(source: &str) -> Result<Ast, Diagnostic> {
    parse(&tokenize(source)?)
}
