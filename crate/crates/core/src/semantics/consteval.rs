//! Translation-time evaluation of `int` expressions.
//!
//! `int` is 64-bit two's complement with wrapping arithmetic. Division or
//! remainder by zero and shifts by a negative amount or by 64 or more are
//! errors; overflow is not.

use thiserror::Error;

use crate::frontend::ast::{BinOp, Expr, ExprKind, UnOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("remainder by zero")]
    RemainderByZero,
    #[error("shift amount {0} is outside 0..64")]
    OversizedShift(i64),
    #[error("`{0}` is not a compile-time constant")]
    NotConstant(String),
    #[error("expression is not an int expression")]
    NotInt,
}

pub fn int_binop(op: BinOp, a: i64, b: i64) -> Result<i64, EvalError> {
    let shift = |b: i64| -> Result<u32, EvalError> {
        if (0..64).contains(&b) {
            Ok(b as u32)
        } else {
            Err(EvalError::OversizedShift(b))
        }
    };
    Ok(match op {
        BinOp::Add => a.wrapping_add(b),
        BinOp::Sub => a.wrapping_sub(b),
        BinOp::Mul => a.wrapping_mul(b),
        BinOp::Div => {
            if b == 0 {
                return Err(EvalError::DivisionByZero);
            }
            a.wrapping_div(b)
        }
        BinOp::Rem => {
            if b == 0 {
                return Err(EvalError::RemainderByZero);
            }
            a.wrapping_rem(b)
        }
        BinOp::Shl => a.wrapping_shl(shift(b)?),
        BinOp::Shr => a.wrapping_shr(shift(b)?),
        BinOp::And => a & b,
        BinOp::Or => a | b,
        BinOp::Xor => a ^ b,
        BinOp::LogAnd => ((a != 0) && (b != 0)) as i64,
        BinOp::LogOr => ((a != 0) || (b != 0)) as i64,
        BinOp::Eq => (a == b) as i64,
        BinOp::Ne => (a != b) as i64,
        BinOp::Lt => (a < b) as i64,
        BinOp::Le => (a <= b) as i64,
        BinOp::Gt => (a > b) as i64,
        BinOp::Ge => (a >= b) as i64,
    })
}

pub fn int_unop(op: UnOp, a: i64) -> i64 {
    match op {
        UnOp::Not => (a == 0) as i64,
        UnOp::BitNot => !a,
        UnOp::Neg => a.wrapping_neg(),
    }
}

/// Evaluate `expr`, looking names up through `env`.
///
/// `env` returns `None` for names that have no known constant value. Array
/// element reads and calls are never constant.
pub fn const_eval(expr: &Expr, env: &dyn Fn(&Expr, &str) -> Option<i64>) -> Result<i64, EvalError> {
    match &expr.kind {
        ExprKind::Int(v) => Ok(*v as i64),
        ExprKind::Name(n) => env(expr, n).ok_or_else(|| EvalError::NotConstant(n.clone())),
        ExprKind::Index(n, _) | ExprKind::Call(n, _) => Err(EvalError::NotConstant(n.clone())),
        ExprKind::Unary(op, x) => Ok(int_unop(*op, const_eval(x, env)?)),
        ExprKind::Binary(op, l, r) => {
            let a = const_eval(l, env)?;
            match op {
                BinOp::LogAnd if a == 0 => return Ok(0),
                BinOp::LogOr if a != 0 => return Ok(1),
                _ => {}
            }
            let b = const_eval(r, env)?;
            int_binop(*op, a, b)
        }
        ExprKind::Ternary(c, t, f) => {
            if const_eval(c, env)? != 0 {
                const_eval(t, env)
            } else {
                const_eval(f, env)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::ast::StmtKind;
    use crate::frontend::parser::parse;
    use crate::frontend::tokenize;

    fn eval(src: &str) -> Result<i64, EvalError> {
        let prog = format!("int r; void main() {{ r = {src}; }}");
        let ast = parse(&tokenize(&prog).unwrap()).unwrap();
        let main = ast.function("main").unwrap();
        let StmtKind::Assign(a) = &main.body.stmts[0].kind else {
            panic!()
        };
        const_eval(&a.value, &|_, n| (n == "len").then_some(19))
    }

    #[test]
    fn examples() {
        assert_eq!(eval("19 - 1"), Ok(18));
        assert_eq!(eval("1 << 4"), Ok(16));
        assert_eq!(eval("7 % 0"), Err(EvalError::RemainderByZero));
        assert_eq!(eval("7 / 0"), Err(EvalError::DivisionByZero));
    }

    #[test]
    fn names_and_precedence() {
        assert_eq!(eval("len * 2 + 1"), Ok(39));
        assert_eq!(eval("len > 18 && len < 20"), Ok(1));
        assert_eq!(eval("len == 3 ? 1 : 2"), Ok(2));
        assert_eq!(eval("x + 1"), Err(EvalError::NotConstant("x".into())));
    }

    #[test]
    fn wrapping_and_shift_limits() {
        assert_eq!(eval("0x7FFFFFFFFFFFFFFF + 1"), Ok(i64::MIN));
        assert_eq!(eval("1 << 64"), Err(EvalError::OversizedShift(64)));
        assert_eq!(eval("1 << -1"), Err(EvalError::OversizedShift(-1)));
        assert_eq!(eval("-8 >> 1"), Ok(-4));
        assert_eq!(eval("~0"), Ok(-1));
        assert_eq!(eval("!5"), Ok(0));
    }
}
