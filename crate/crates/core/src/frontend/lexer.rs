//! Tokenizer for the bit-level source language.
//!
//! Comments follow C: `//` to end of line and non-nesting `/* ... */`.
//! Integer literals are decimal or `0x`-prefixed hexadecimal and must fit in
//! 64 bits.

use crate::diag::{Diagnostic, Loc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    Bit,
    Int,
    Void,
    If,
    Else,
    For,
    Return,
    In,
    Out,
}

impl Keyword {
    fn from_ident(s: &str) -> Option<Keyword> {
        Some(match s {
            "bit" => Keyword::Bit,
            "int" => Keyword::Int,
            "void" => Keyword::Void,
            "if" => Keyword::If,
            "else" => Keyword::Else,
            "for" => Keyword::For,
            "return" => Keyword::Return,
            "__in" => Keyword::In,
            "__out" => Keyword::Out,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Bit => "bit",
            Keyword::Int => "int",
            Keyword::Void => "void",
            Keyword::If => "if",
            Keyword::Else => "else",
            Keyword::For => "for",
            Keyword::Return => "return",
            Keyword::In => "__in",
            Keyword::Out => "__out",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Punct {
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    OrOr,
    AndAnd,
    Pipe,
    Caret,
    Amp,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    Shl,
    Shr,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Bang,
    Tilde,
    Assign,
    CaretAssign,
    AmpAssign,
    PipeAssign,
    PlusAssign,
    MinusAssign,
    Question,
    Colon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Keyword(Keyword),
    Ident(String),
    Int(u64),
    Punct(Punct),
    Op(Op),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub loc: Loc,
    /// Byte range of the lexeme in the source.
    pub span: (usize, usize),
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.src[self.pos..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn loc(&self) -> Loc {
        Loc::new(self.line, self.col)
    }
}

pub fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut cur = Cursor {
        src: source,
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '/' && cur.peek2() == Some('/') {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        if c == '/' && cur.peek2() == Some('*') {
            let start = cur.loc();
            cur.bump();
            cur.bump();
            loop {
                match cur.peek() {
                    None => {
                        return Err(Diagnostic::error(start, "unterminated block comment"));
                    }
                    Some('*') if cur.peek2() == Some('/') => {
                        cur.bump();
                        cur.bump();
                        break;
                    }
                    Some(_) => {
                        cur.bump();
                    }
                }
            }
            continue;
        }

        let loc = cur.loc();
        let start = cur.pos;
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            while matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                cur.bump();
            }
            let word = &source[start..cur.pos];
            match Keyword::from_ident(word) {
                Some(kw) => TokenKind::Keyword(kw),
                None => TokenKind::Ident(word.to_string()),
            }
        } else if c.is_ascii_digit() {
            lex_int(&mut cur, loc)?
        } else {
            lex_symbol(&mut cur, loc)?
        };
        tokens.push(Token {
            kind,
            lexeme: source[start..cur.pos].to_string(),
            loc,
            span: (start, cur.pos),
        });
    }
    Ok(tokens)
}

fn lex_int(cur: &mut Cursor<'_>, loc: Loc) -> Result<TokenKind, Diagnostic> {
    let start = cur.pos;
    let hex = cur.peek() == Some('0') && matches!(cur.peek2(), Some('x') | Some('X'));
    if hex {
        cur.bump();
        cur.bump();
    }
    let digits_start = cur.pos;
    while matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
        cur.bump();
    }
    let text = &cur.src[digits_start..cur.pos];
    let radix = if hex { 16 } else { 10 };
    if text.is_empty() {
        return Err(Diagnostic::error(loc, "hexadecimal literal has no digits"));
    }
    u64::from_str_radix(text, radix).map(TokenKind::Int).map_err(|e| {
        let lit = &cur.src[start..cur.pos];
        match e.kind() {
            std::num::IntErrorKind::PosOverflow => {
                Diagnostic::error(loc, format!("integer literal `{lit}` does not fit in 64 bits"))
            }
            _ => Diagnostic::error(loc, format!("malformed integer literal `{lit}`")),
        }
    })
}

fn lex_symbol(cur: &mut Cursor<'_>, loc: Loc) -> Result<TokenKind, Diagnostic> {
    let c = cur.bump().expect("caller checked peek");
    let next = cur.peek();
    let two = |cur: &mut Cursor<'_>, k: Op| {
        cur.bump();
        TokenKind::Op(k)
    };
    Ok(match (c, next) {
        ('(', _) => TokenKind::Punct(Punct::LParen),
        (')', _) => TokenKind::Punct(Punct::RParen),
        ('{', _) => TokenKind::Punct(Punct::LBrace),
        ('}', _) => TokenKind::Punct(Punct::RBrace),
        ('[', _) => TokenKind::Punct(Punct::LBracket),
        (']', _) => TokenKind::Punct(Punct::RBracket),
        (';', _) => TokenKind::Punct(Punct::Semi),
        (',', _) => TokenKind::Punct(Punct::Comma),
        ('|', Some('|')) => two(cur, Op::OrOr),
        ('|', Some('=')) => two(cur, Op::PipeAssign),
        ('|', _) => TokenKind::Op(Op::Pipe),
        ('&', Some('&')) => two(cur, Op::AndAnd),
        ('&', Some('=')) => two(cur, Op::AmpAssign),
        ('&', _) => TokenKind::Op(Op::Amp),
        ('^', Some('=')) => two(cur, Op::CaretAssign),
        ('^', _) => TokenKind::Op(Op::Caret),
        ('=', Some('=')) => two(cur, Op::EqEq),
        ('=', _) => TokenKind::Op(Op::Assign),
        ('!', Some('=')) => two(cur, Op::NotEq),
        ('!', _) => TokenKind::Op(Op::Bang),
        ('<', Some('<')) => two(cur, Op::Shl),
        ('<', Some('=')) => two(cur, Op::Le),
        ('<', _) => TokenKind::Op(Op::Lt),
        ('>', Some('>')) => two(cur, Op::Shr),
        ('>', Some('=')) => two(cur, Op::Ge),
        ('>', _) => TokenKind::Op(Op::Gt),
        ('+', Some('=')) => two(cur, Op::PlusAssign),
        ('+', _) => TokenKind::Op(Op::Plus),
        ('-', Some('=')) => two(cur, Op::MinusAssign),
        ('-', _) => TokenKind::Op(Op::Minus),
        ('*', _) => TokenKind::Op(Op::Star),
        ('/', _) => TokenKind::Op(Op::Slash),
        ('%', _) => TokenKind::Op(Op::Percent),
        ('~', _) => TokenKind::Op(Op::Tilde),
        ('?', _) => TokenKind::Op(Op::Question),
        (':', _) => TokenKind::Op(Op::Colon),
        (other, _) => {
            return Err(Diagnostic::error(
                loc,
                format!("illegal character `{}`", other.escape_default()),
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn smallest_declaration() {
        assert_eq!(
            kinds("bit x;"),
            vec![
                TokenKind::Keyword(Keyword::Bit),
                TokenKind::Ident("x".into()),
                TokenKind::Punct(Punct::Semi)
            ]
        );
    }

    #[test]
    fn indexed_register_cell() {
        assert_eq!(
            kinds("reg[0]"),
            vec![
                TokenKind::Ident("reg".into()),
                TokenKind::Punct(Punct::LBracket),
                TokenKind::Int(0),
                TokenKind::Punct(Punct::RBracket)
            ]
        );
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").unwrap().is_empty());
        assert!(tokenize("  // only a comment\n/* and\nanother */ ").unwrap().is_empty());
    }

    #[test]
    fn hex_and_decimal_literals() {
        assert_eq!(kinds("0x1F 31"), vec![TokenKind::Int(31), TokenKind::Int(31)]);
        assert_eq!(kinds("0xFFFFFFFFFFFFFFFF"), vec![TokenKind::Int(u64::MAX)]);
        let err = tokenize("0x1FFFFFFFFFFFFFFFF").unwrap_err();
        assert!(err.message.contains("64 bits"));
    }

    #[test]
    fn two_char_operators() {
        assert_eq!(
            kinds("a <<= b"),
            vec![
                TokenKind::Ident("a".into()),
                TokenKind::Op(Op::Shl),
                TokenKind::Op(Op::Assign),
                TokenKind::Ident("b".into()),
            ]
        );
        assert_eq!(
            kinds("x ^= y != z"),
            vec![
                TokenKind::Ident("x".into()),
                TokenKind::Op(Op::CaretAssign),
                TokenKind::Ident("y".into()),
                TokenKind::Op(Op::NotEq),
                TokenKind::Ident("z".into()),
            ]
        );
    }

    #[test]
    fn unterminated_comment_is_located() {
        let err = tokenize("bit x;\n  /* never closed").unwrap_err();
        assert_eq!(err.loc, Loc::new(2, 3));
        assert!(err.message.contains("unterminated"));
    }

    #[test]
    fn illegal_character_is_located() {
        let err = tokenize("bit x = $;").unwrap_err();
        assert_eq!(err.loc, Loc::new(1, 9));
        assert!(err.message.contains("illegal character"));
    }

    #[test]
    fn lexemes_are_source_slices() {
        let src = "__in bit reg[19]; /* c */ void main() { reg[0] ^= 0x1; } // t";
        let toks = tokenize(src).unwrap();
        let mut last = 0;
        for t in &toks {
            assert!(!t.lexeme.is_empty());
            assert_eq!(&src[t.span.0..t.span.1], t.lexeme);
            let gap = &src[last..t.span.0];
            assert!(gap.trim().is_empty() || gap.contains("/*") || gap.contains("//"));
            last = t.span.1;
        }
    }
}
