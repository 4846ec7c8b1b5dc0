//! Syntax tree for source programs.
//!
//! Every expression and lvalue carries an [`ExprId`] and every declaration a
//! [`DeclId`]; both are dense indices assigned by the parser so later phases
//! can attach side tables (name resolution, types) without mutating the tree.

use crate::diag::Loc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExprId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeclId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Type {
    Bit,
    Int,
    Void,
}

impl Type {
    pub fn as_str(self) -> &'static str {
        match self {
            Type::Bit => "bit",
            Type::Int => "int",
            Type::Void => "void",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attr {
    None,
    In,
    Out,
}

#[derive(Debug, Clone)]
pub struct Ast {
    pub items: Vec<Item>,
    /// Number of expression ids handed out (ids are `0..expr_count`).
    pub expr_count: u32,
    pub decl_count: u32,
    pub block_count: u32,
}

#[derive(Debug, Clone)]
pub enum Item {
    Globals(Vec<VarDecl>),
    Function(FunctionDecl),
}

impl Ast {
    pub fn functions(&self) -> impl Iterator<Item = &FunctionDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Function(f) => Some(f),
            Item::Globals(_) => None,
        })
    }

    pub fn globals(&self) -> impl Iterator<Item = &VarDecl> {
        self.items.iter().flat_map(|i| match i {
            Item::Globals(g) => g.as_slice(),
            Item::Function(_) => &[],
        })
    }

    pub fn function(&self, name: &str) -> Option<&FunctionDecl> {
        self.functions().find(|f| f.name == name)
    }
}

#[derive(Debug, Clone)]
pub struct VarDecl {
    pub id: DeclId,
    pub name: String,
    pub ty: Type,
    /// Array length expression; `None` for scalars.
    pub len: Option<Expr>,
    pub attr: Attr,
    pub init: Option<Expr>,
    pub loc: Loc,
}

#[derive(Debug, Clone)]
pub struct FunctionDecl {
    pub id: DeclId,
    pub ret: Type,
    pub name: String,
    pub params: Vec<VarDecl>,
    pub body: Block,
    pub loc: Loc,
}

#[derive(Debug, Clone)]
pub struct Block {
    pub id: BlockId,
    pub stmts: Vec<Stmt>,
    pub loc: Loc,
}

#[derive(Debug, Clone)]
pub struct Stmt {
    pub kind: StmtKind,
    pub loc: Loc,
}

#[derive(Debug, Clone)]
pub enum StmtKind {
    Block(Block),
    Decl(Vec<VarDecl>),
    Expr(Expr),
    Assign(Assign),
    If {
        cond: Expr,
        then_branch: Box<Stmt>,
        else_branch: Option<Box<Stmt>>,
    },
    For {
        init: Assign,
        cond: Expr,
        step: Assign,
        body: Box<Stmt>,
    },
    Return(Option<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssignOp {
    Set,
    Xor,
    And,
    Or,
    Add,
    Sub,
}

impl AssignOp {
    pub fn as_str(self) -> &'static str {
        match self {
            AssignOp::Set => "=",
            AssignOp::Xor => "^=",
            AssignOp::And => "&=",
            AssignOp::Or => "|=",
            AssignOp::Add => "+=",
            AssignOp::Sub => "-=",
        }
    }

    /// The binary operator a compound assignment applies, if any.
    pub fn binop(self) -> Option<BinOp> {
        match self {
            AssignOp::Set => None,
            AssignOp::Xor => Some(BinOp::Xor),
            AssignOp::And => Some(BinOp::And),
            AssignOp::Or => Some(BinOp::Or),
            AssignOp::Add => Some(BinOp::Add),
            AssignOp::Sub => Some(BinOp::Sub),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Assign {
    pub target: LValue,
    pub op: AssignOp,
    pub value: Expr,
    pub loc: Loc,
}

#[derive(Debug, Clone)]
pub struct LValue {
    pub id: ExprId,
    pub name: String,
    pub index: Option<Box<Expr>>,
    pub loc: Loc,
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub id: ExprId,
    pub kind: ExprKind,
    pub loc: Loc,
}

#[derive(Debug, Clone)]
pub enum ExprKind {
    Int(u64),
    Name(String),
    Index(String, Box<Expr>),
    Call(String, Vec<Expr>),
    Unary(UnOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Ternary(Box<Expr>, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnOp {
    Not,
    BitNot,
    Neg,
}

impl UnOp {
    pub fn as_str(self) -> &'static str {
        match self {
            UnOp::Not => "!",
            UnOp::BitNot => "~",
            UnOp::Neg => "-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    LogOr,
    LogAnd,
    Or,
    Xor,
    And,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Shl,
    Shr,
    Add,
    Sub,
    Mul,
    Div,
    Rem,
}

impl BinOp {
    /// C binding strength; larger binds tighter. All binary operators are
    /// left-associative.
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::LogOr => 1,
            BinOp::LogAnd => 2,
            BinOp::Or => 3,
            BinOp::Xor => 4,
            BinOp::And => 5,
            BinOp::Eq | BinOp::Ne => 6,
            BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 7,
            BinOp::Shl | BinOp::Shr => 8,
            BinOp::Add | BinOp::Sub => 9,
            BinOp::Mul | BinOp::Div | BinOp::Rem => 10,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BinOp::LogOr => "||",
            BinOp::LogAnd => "&&",
            BinOp::Or => "|",
            BinOp::Xor => "^",
            BinOp::And => "&",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Shl => "<<",
            BinOp::Shr => ">>",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Rem => "%",
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge
        )
    }
}

/// Call `f` on every statement in `block`, recursing into nested statements.
pub fn walk_stmts<'a>(block: &'a Block, f: &mut dyn FnMut(&'a Stmt)) {
    fn go<'a>(s: &'a Stmt, f: &mut dyn FnMut(&'a Stmt)) {
        f(s);
        match &s.kind {
            StmtKind::Block(b) => b.stmts.iter().for_each(|s| go(s, f)),
            StmtKind::If {
                then_branch,
                else_branch,
                ..
            } => {
                go(then_branch, f);
                if let Some(e) = else_branch {
                    go(e, f);
                }
            }
            StmtKind::For { body, .. } => go(body, f),
            _ => {}
        }
    }
    block.stmts.iter().for_each(|s| go(s, f));
}
