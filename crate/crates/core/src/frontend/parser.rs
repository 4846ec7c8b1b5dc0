//! Recursive-descent parser producing an [`Ast`].
//!
//! Binary operators are parsed by precedence climbing over C precedence;
//! the conditional operator `?:` is right-associative and binds loosest.
//! A dangling `else` attaches to the nearest `if`.

use super::ast::*;
use super::lexer::{Keyword, Op, Punct, Token, TokenKind};
use crate::diag::{Diagnostic, Loc};

pub fn parse(tokens: &[Token]) -> Result<Ast, Diagnostic> {
    let mut p = Parser {
        toks: tokens,
        pos: 0,
        next_expr: 0,
        next_decl: 0,
        next_block: 0,
    };
    let mut items = Vec::new();
    while !p.at_end() {
        items.push(p.item()?);
    }
    let has_main = items.iter().any(|i| matches!(i, Item::Function(f) if f.name == "main"));
    if !has_main {
        return Err(Diagnostic::error(Loc::new(1, 1), "program has no `main` function"));
    }
    Ok(Ast {
        items,
        expr_count: p.next_expr,
        decl_count: p.next_decl,
        block_count: p.next_block,
    })
}

struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
    next_expr: u32,
    next_decl: u32,
    next_block: u32,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'t> Parser<'t> {
    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&'t TokenKind> {
        self.toks.get(self.pos).map(|t| &t.kind)
    }

    fn peek_at(&self, n: usize) -> Option<&'t TokenKind> {
        self.toks.get(self.pos + n).map(|t| &t.kind)
    }

    fn loc(&self) -> Loc {
        match self.toks.get(self.pos) {
            Some(t) => t.loc,
            None => self.end_loc(),
        }
    }

    fn end_loc(&self) -> Loc {
        match self.toks.last() {
            Some(t) => Loc::new(t.loc.line, t.loc.col + t.lexeme.chars().count() as u32),
            None => Loc::new(1, 1),
        }
    }

    fn found(&self) -> String {
        match self.toks.get(self.pos) {
            Some(t) => format!("`{}`", t.lexeme),
            None => "end of input".to_string(),
        }
    }

    fn expected(&self, what: &str) -> Diagnostic {
        Diagnostic::error(
            self.loc(),
            format!("syntax error: expected {what}, found {}", self.found()),
        )
    }

    fn eat_punct(&mut self, p: Punct) -> bool {
        if self.peek() == Some(&TokenKind::Punct(p)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_op(&mut self, o: Op) -> bool {
        if self.peek() == Some(&TokenKind::Op(o)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, k: Keyword) -> bool {
        if self.peek() == Some(&TokenKind::Keyword(k)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: Punct, what: &str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            Err(self.expected(what))
        }
    }

    fn ident(&mut self) -> PResult<(String, Loc)> {
        match self.peek() {
            Some(TokenKind::Ident(name)) => {
                let loc = self.loc();
                self.pos += 1;
                Ok((name.clone(), loc))
            }
            _ => Err(self.expected("identifier")),
        }
    }

    fn ty(&mut self) -> PResult<Type> {
        let t = match self.peek() {
            Some(TokenKind::Keyword(Keyword::Bit)) => Type::Bit,
            Some(TokenKind::Keyword(Keyword::Int)) => Type::Int,
            Some(TokenKind::Keyword(Keyword::Void)) => Type::Void,
            _ => return Err(self.expected("type (`bit`, `int` or `void`)")),
        };
        self.pos += 1;
        Ok(t)
    }

    fn is_type_start(&self) -> bool {
        matches!(
            self.peek(),
            Some(TokenKind::Keyword(
                Keyword::Bit | Keyword::Int | Keyword::Void | Keyword::In | Keyword::Out
            ))
        )
    }

    fn expr_id(&mut self) -> ExprId {
        let id = ExprId(self.next_expr);
        self.next_expr += 1;
        id
    }

    fn decl_id(&mut self) -> DeclId {
        let id = DeclId(self.next_decl);
        self.next_decl += 1;
        id
    }

    fn attr(&mut self) -> Attr {
        if self.eat_kw(Keyword::In) {
            Attr::In
        } else if self.eat_kw(Keyword::Out) {
            Attr::Out
        } else {
            Attr::None
        }
    }

    fn item(&mut self) -> PResult<Item> {
        let start = self.loc();
        let attr = self.attr();
        let ty = self.ty()?;
        if matches!(self.peek(), Some(TokenKind::Ident(_))) && self.peek_at(1) == Some(&TokenKind::Punct(Punct::LParen))
        {
            if attr != Attr::None {
                return Err(Diagnostic::error(
                    start,
                    "`__in`/`__out` attributes cannot be applied to functions",
                ));
            }
            return self.function(ty, start).map(Item::Function);
        }
        let decls = self.declarators(attr, ty, start)?;
        Ok(Item::Globals(decls))
    }

    fn declarators(&mut self, attr: Attr, ty: Type, start: Loc) -> PResult<Vec<VarDecl>> {
        let mut decls = Vec::new();
        loop {
            let (name, loc) = self.ident()?;
            let len = if self.eat_punct(Punct::LBracket) {
                let e = self.expr()?;
                self.expect_punct(Punct::RBracket, "`]`")?;
                Some(e)
            } else {
                None
            };
            let init = if self.eat_op(Op::Assign) {
                Some(self.expr()?)
            } else {
                None
            };
            let id = self.decl_id();
            decls.push(VarDecl {
                id,
                name,
                ty,
                len,
                attr,
                init,
                loc: if decls.is_empty() { start } else { loc },
            });
            if !self.eat_punct(Punct::Comma) {
                break;
            }
        }
        self.expect_punct(Punct::Semi, "`;` after declaration")?;
        Ok(decls)
    }

    fn function(&mut self, ret: Type, start: Loc) -> PResult<FunctionDecl> {
        let (name, _) = self.ident()?;
        let id = self.decl_id();
        self.expect_punct(Punct::LParen, "`(`")?;
        let mut params = Vec::new();
        if !self.eat_punct(Punct::RParen) {
            loop {
                let ploc = self.loc();
                if matches!(self.peek(), Some(TokenKind::Keyword(Keyword::In | Keyword::Out))) {
                    return Err(Diagnostic::error(
                        ploc,
                        "function parameters cannot carry `__in`/`__out` attributes",
                    ));
                }
                let ty = self.ty()?;
                let (pname, _) = self.ident()?;
                let len = if self.eat_punct(Punct::LBracket) {
                    let e = self.expr()?;
                    self.expect_punct(Punct::RBracket, "`]`")?;
                    Some(e)
                } else {
                    None
                };
                let pid = self.decl_id();
                params.push(VarDecl {
                    id: pid,
                    name: pname,
                    ty,
                    len,
                    attr: Attr::None,
                    init: None,
                    loc: ploc,
                });
                if self.eat_punct(Punct::RParen) {
                    break;
                }
                self.expect_punct(Punct::Comma, "`,` or `)` in parameter list")?;
            }
        }
        let body = self.block()?;
        Ok(FunctionDecl {
            id,
            ret,
            name,
            params,
            body,
            loc: start,
        })
    }

    fn block(&mut self) -> PResult<Block> {
        let loc = self.loc();
        self.expect_punct(Punct::LBrace, "`{`")?;
        let id = BlockId(self.next_block);
        self.next_block += 1;
        let mut stmts = Vec::new();
        while !self.eat_punct(Punct::RBrace) {
            if self.at_end() {
                return Err(self.expected("`}`"));
            }
            stmts.push(self.stmt()?);
        }
        Ok(Block { id, stmts, loc })
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let loc = self.loc();
        let kind = match self.peek() {
            Some(TokenKind::Punct(Punct::LBrace)) => StmtKind::Block(self.block()?),
            Some(TokenKind::Keyword(Keyword::If)) => {
                self.pos += 1;
                self.expect_punct(Punct::LParen, "`(` after `if`")?;
                let cond = self.expr()?;
                self.expect_punct(Punct::RParen, "`)` after condition")?;
                let then_branch = Box::new(self.stmt()?);
                let else_branch = if self.eat_kw(Keyword::Else) {
                    Some(Box::new(self.stmt()?))
                } else {
                    None
                };
                StmtKind::If {
                    cond,
                    then_branch,
                    else_branch,
                }
            }
            Some(TokenKind::Keyword(Keyword::For)) => {
                self.pos += 1;
                self.expect_punct(Punct::LParen, "`(` after `for`")?;
                let init = self.assignment()?;
                self.expect_punct(Punct::Semi, "`;` after loop initializer")?;
                let cond = self.expr()?;
                self.expect_punct(Punct::Semi, "`;` after loop condition")?;
                let step = self.assignment()?;
                self.expect_punct(Punct::RParen, "`)` after loop step")?;
                let body = Box::new(self.stmt()?);
                StmtKind::For { init, cond, step, body }
            }
            Some(TokenKind::Keyword(Keyword::Return)) => {
                self.pos += 1;
                let value = if self.eat_punct(Punct::Semi) {
                    None
                } else {
                    let e = self.expr()?;
                    self.expect_punct(Punct::Semi, "`;` after return value")?;
                    Some(e)
                };
                StmtKind::Return(value)
            }
            _ if self.is_type_start() => {
                let attr = self.attr();
                let ty = self.ty()?;
                StmtKind::Decl(self.declarators(attr, ty, loc)?)
            }
            _ => {
                let e = self.expr()?;
                let kind = match self.assign_op() {
                    Some(op) => {
                        let target = self.to_lvalue(e)?;
                        let value = self.expr()?;
                        StmtKind::Assign(Assign { target, op, value, loc })
                    }
                    None => StmtKind::Expr(e),
                };
                self.expect_punct(Punct::Semi, "`;` after statement")?;
                kind
            }
        };
        Ok(Stmt { kind, loc })
    }

    fn assign_op(&mut self) -> Option<AssignOp> {
        let op = match self.peek()? {
            TokenKind::Op(Op::Assign) => AssignOp::Set,
            TokenKind::Op(Op::CaretAssign) => AssignOp::Xor,
            TokenKind::Op(Op::AmpAssign) => AssignOp::And,
            TokenKind::Op(Op::PipeAssign) => AssignOp::Or,
            TokenKind::Op(Op::PlusAssign) => AssignOp::Add,
            TokenKind::Op(Op::MinusAssign) => AssignOp::Sub,
            _ => return None,
        };
        self.pos += 1;
        Some(op)
    }

    fn to_lvalue(&self, e: Expr) -> PResult<LValue> {
        match e.kind {
            ExprKind::Name(name) => Ok(LValue {
                id: e.id,
                name,
                index: None,
                loc: e.loc,
            }),
            ExprKind::Index(name, idx) => Ok(LValue {
                id: e.id,
                name,
                index: Some(idx),
                loc: e.loc,
            }),
            _ => Err(Diagnostic::error(
                e.loc,
                "syntax error: left side of assignment must be a variable or array element",
            )),
        }
    }

    fn assignment(&mut self) -> PResult<Assign> {
        let loc = self.loc();
        let target = self.expr()?;
        let op = self.assign_op().ok_or_else(|| self.expected("assignment operator"))?;
        let target = self.to_lvalue(target)?;
        let value = self.expr()?;
        Ok(Assign { target, op, value, loc })
    }

    pub(crate) fn expr(&mut self) -> PResult<Expr> {
        let cond = self.binary(1)?;
        if self.eat_op(Op::Question) {
            let then_e = self.expr()?;
            if !self.eat_op(Op::Colon) {
                return Err(self.expected("`:` in conditional expression"));
            }
            let else_e = self.expr()?;
            let loc = cond.loc;
            return Ok(Expr {
                id: self.expr_id(),
                kind: ExprKind::Ternary(Box::new(cond), Box::new(then_e), Box::new(else_e)),
                loc,
            });
        }
        Ok(cond)
    }

    fn peek_binop(&self) -> Option<BinOp> {
        Some(match self.peek()? {
            TokenKind::Op(op) => match op {
                Op::OrOr => BinOp::LogOr,
                Op::AndAnd => BinOp::LogAnd,
                Op::Pipe => BinOp::Or,
                Op::Caret => BinOp::Xor,
                Op::Amp => BinOp::And,
                Op::EqEq => BinOp::Eq,
                Op::NotEq => BinOp::Ne,
                Op::Lt => BinOp::Lt,
                Op::Le => BinOp::Le,
                Op::Gt => BinOp::Gt,
                Op::Ge => BinOp::Ge,
                Op::Shl => BinOp::Shl,
                Op::Shr => BinOp::Shr,
                Op::Plus => BinOp::Add,
                Op::Minus => BinOp::Sub,
                Op::Star => BinOp::Mul,
                Op::Slash => BinOp::Div,
                Op::Percent => BinOp::Rem,
                _ => return None,
            },
            _ => return None,
        })
    }

    fn binary(&mut self, min_prec: u8) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.peek_binop() {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.pos += 1;
            let rhs = self.binary(prec + 1)?;
            let loc = lhs.loc;
            lhs = Expr {
                id: self.expr_id(),
                kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)),
                loc,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let loc = self.loc();
        let op = match self.peek() {
            Some(TokenKind::Op(Op::Bang)) => UnOp::Not,
            Some(TokenKind::Op(Op::Tilde)) => UnOp::BitNot,
            Some(TokenKind::Op(Op::Minus)) => UnOp::Neg,
            _ => return self.primary(),
        };
        self.pos += 1;
        let operand = self.unary()?;
        Ok(Expr {
            id: self.expr_id(),
            kind: ExprKind::Unary(op, Box::new(operand)),
            loc,
        })
    }

    fn primary(&mut self) -> PResult<Expr> {
        let loc = self.loc();
        let kind = match self.peek() {
            Some(TokenKind::Int(v)) => {
                let v = *v;
                self.pos += 1;
                ExprKind::Int(v)
            }
            Some(TokenKind::Punct(Punct::LParen)) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_punct(Punct::RParen, "`)`")?;
                return Ok(e);
            }
            Some(TokenKind::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                if self.eat_punct(Punct::LBracket) {
                    let idx = self.expr()?;
                    self.expect_punct(Punct::RBracket, "`]`")?;
                    ExprKind::Index(name, Box::new(idx))
                } else if self.eat_punct(Punct::LParen) {
                    let mut args = Vec::new();
                    if !self.eat_punct(Punct::RParen) {
                        loop {
                            args.push(self.expr()?);
                            if self.eat_punct(Punct::RParen) {
                                break;
                            }
                            self.expect_punct(Punct::Comma, "`,` or `)` in argument list")?;
                        }
                    }
                    ExprKind::Call(name, args)
                } else {
                    ExprKind::Name(name)
                }
            }
            _ => return Err(self.expected("expression")),
        };
        Ok(Expr {
            id: self.expr_id(),
            kind,
            loc,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::lexer::tokenize;
    use crate::frontend::printer::sexpr;

    fn p(src: &str) -> Result<Ast, Diagnostic> {
        parse(&tokenize(src)?)
    }

    #[test]
    fn empty_main() {
        let ast = p("void main() {}").unwrap();
        assert_eq!(ast.functions().count(), 1);
        let main = ast.function("main").unwrap();
        assert!(main.body.stmts.is_empty());
        assert_eq!(main.ret, Type::Void);
    }

    #[test]
    fn if_else_both_branches() {
        let ast = p("bit x, y, z, a; void main() { if (a) x = y; else x = z; }").unwrap();
        let main = ast.function("main").unwrap();
        match &main.body.stmts[0].kind {
            StmtKind::If {
                then_branch,
                else_branch,
                ..
            } => {
                assert!(matches!(then_branch.kind, StmtKind::Assign(_)));
                assert!(matches!(
                    else_branch.as_deref().map(|s| &s.kind),
                    Some(StmtKind::Assign(_))
                ));
            }
            other => panic!("expected if, got {other:?}"),
        }
    }

    #[test]
    fn dangling_else_binds_nearest_if() {
        let ast = p("bit a, b, x; void main() { if (a) if (b) x = 1; else x = 0; }").unwrap();
        let main = ast.function("main").unwrap();
        let StmtKind::If {
            then_branch,
            else_branch,
            ..
        } = &main.body.stmts[0].kind
        else {
            panic!()
        };
        assert!(else_branch.is_none());
        assert!(matches!(
            &then_branch.kind,
            StmtKind::If {
                else_branch: Some(_),
                ..
            }
        ));
    }

    #[test]
    fn c_precedence() {
        let ast = p("int r; void main() { r = 1 + 2 * 3 << 1 == 14 | 0 && 1 || 0; }").unwrap();
        let main = ast.function("main").unwrap();
        let StmtKind::Assign(a) = &main.body.stmts[0].kind else {
            panic!()
        };
        assert_eq!(sexpr_expr(&a.value), "(|| (&& (| (== (<< (+ 1 (* 2 3)) 1) 14) 0) 1) 0)");
    }

    #[test]
    fn ternary_is_right_associative() {
        let ast = p("bit a, b, c, d, e, x; void main() { x = a ? b : c ? d : e; }").unwrap();
        let main = ast.function("main").unwrap();
        let StmtKind::Assign(a) = &main.body.stmts[0].kind else {
            panic!()
        };
        assert_eq!(sexpr_expr(&a.value), "(? a b (? c d e))");
    }

    fn sexpr_expr(e: &Expr) -> String {
        crate::frontend::printer::sexpr_of_expr(e)
    }

    #[test]
    fn missing_main_is_an_error() {
        let err = p("void f() {}").unwrap_err();
        assert!(err.message.contains("main"));
    }

    #[test]
    fn expected_token_diagnostic() {
        let err = p("void main() { bit x }").unwrap_err();
        assert_eq!(err.loc, Loc::new(1, 21));
        assert!(err.message.contains("expected `;`"), "{}", err.message);
    }

    #[test]
    fn for_loop_shape() {
        let ast = p("int i; bit r[4]; void main() { for (i = 0; i < 4; i = i + 1) r[i] = 0; }").unwrap();
        assert!(sexpr(&ast).contains("(for (= i 0) (< i 4) (= i (+ i 1)) (= (r i) 0))"));
    }
}
