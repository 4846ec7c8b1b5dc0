//! Text form of named bit vectors: `reg=0x5A3F7:19`, `k=0b1011`.
//!
//! Element `i` of an array is bit `i` of the written number, so the highest
//! index is the leftmost digit. Hex values carry an explicit width after a
//! colon; binary values take their width from the digit count unless one is
//! given.

use std::fmt::Write as _;

use thiserror::Error;

use crate::semantics::Program;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitsError {
    #[error("expected `name=value`, found `{0}`")]
    MissingName(String),
    #[error("bad value `{0}`: use 0x<hex>:<width> or 0b<binary>")]
    BadValue(String),
    #[error("value `{value}` does not fit in {width} bits")]
    TooWide { value: String, width: usize },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{name}` has {expected} bits, got {got}")]
    WidthMismatch { name: String, expected: usize, got: usize },
    #[error("`{0}` is given more than once")]
    Duplicate(String),
    #[error("no value given for `{0}`")]
    Missing(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedBits {
    pub name: String,
    pub bits: Vec<bool>,
}

/// A named group of consecutive bits, e.g. one `__in` declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    pub name: String,
    pub width: usize,
}

pub fn input_ports(p: &Program) -> Vec<Port> {
    p.inputs()
        .map(|d| Port {
            name: p.var(d).name.clone(),
            width: p.var(d).width(),
        })
        .collect()
}

pub fn output_ports(p: &Program) -> Vec<Port> {
    p.outputs()
        .map(|d| Port {
            name: p.var(d).name.clone(),
            width: p.var(d).width(),
        })
        .collect()
}

/// Parse a value such as `0x1F:5` or `0b101`.
pub fn parse_value(text: &str) -> Result<Vec<bool>, BitsError> {
    let bad = || BitsError::BadValue(text.to_string());
    let (digits, width) = match text.split_once(':') {
        Some((d, w)) => (d, Some(w.parse::<usize>().map_err(|_| bad())?)),
        None => (text, None),
    };
    let (radix_bits, body) = if let Some(h) = digits.strip_prefix("0x").or_else(|| digits.strip_prefix("0X")) {
        (4, h)
    } else if let Some(b) = digits.strip_prefix("0b").or_else(|| digits.strip_prefix("0B")) {
        (1, b)
    } else {
        return Err(bad());
    };
    let body: String = body.chars().filter(|&c| c != '_').collect();
    if body.is_empty() || (radix_bits == 4 && width.is_none()) {
        return Err(bad());
    }
    // least significant bit first
    let mut bits = Vec::with_capacity(body.len() * radix_bits);
    for c in body.chars().rev() {
        let d = c.to_digit(1 << radix_bits).ok_or_else(bad)?;
        for k in 0..radix_bits {
            bits.push(d >> k & 1 == 1);
        }
    }
    let width = width.unwrap_or(bits.len());
    if bits[width.min(bits.len())..].iter().any(|&b| b) {
        return Err(BitsError::TooWide {
            value: text.to_string(),
            width,
        });
    }
    bits.resize(width, false);
    Ok(bits)
}

/// Parse `name=value`.
pub fn parse_assignment(text: &str) -> Result<NamedBits, BitsError> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| BitsError::MissingName(text.to_string()))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(BitsError::MissingName(text.to_string()));
    }
    Ok(NamedBits {
        name: name.to_string(),
        bits: parse_value(value.trim())?,
    })
}

/// Parse assignments separated by commas, semicolons or whitespace.
pub fn parse_list(text: &str) -> Result<Vec<NamedBits>, BitsError> {
    text.split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(parse_assignment)
        .collect()
}

/// `0x…:width`, highest element first.
pub fn format_hex(bits: &[bool]) -> String {
    let mut s = String::from("0x");
    let digits = bits.len().div_ceil(4).max(1);
    for d in (0..digits).rev() {
        let v = (0..4).fold(0u32, |acc, k| {
            let i = d * 4 + k;
            acc | ((i < bits.len() && bits[i]) as u32) << k
        });
        s.push(char::from_digit(v, 16).unwrap().to_ascii_uppercase());
    }
    let _ = write!(s, ":{}", bits.len());
    s
}

pub fn format_assignment(name: &str, bits: &[bool]) -> String {
    format!("{name}={}", format_hex(bits))
}

/// Concatenate the values for `ports` in port order. Every port must be
/// given exactly once with the right width.
pub fn assemble(ports: &[Port], given: &[NamedBits]) -> Result<Vec<bool>, BitsError> {
    for (i, g) in given.iter().enumerate() {
        if given[..i].iter().any(|h| h.name == g.name) {
            return Err(BitsError::Duplicate(g.name.clone()));
        }
        if !ports.iter().any(|p| p.name == g.name) {
            return Err(BitsError::UnknownName(g.name.clone()));
        }
    }
    let mut out = Vec::new();
    for p in ports {
        let g = given
            .iter()
            .find(|g| g.name == p.name)
            .ok_or_else(|| BitsError::Missing(p.name.clone()))?;
        if g.bits.len() != p.width {
            return Err(BitsError::WidthMismatch {
                name: p.name.clone(),
                expected: p.width,
                got: g.bits.len(),
            });
        }
        out.extend_from_slice(&g.bits);
    }
    Ok(out)
}

/// Inverse of [`assemble`].
pub fn split(ports: &[Port], bits: &[bool]) -> Vec<NamedBits> {
    let mut at = 0;
    ports
        .iter()
        .map(|p| {
            let nb = NamedBits {
                name: p.name.clone(),
                bits: bits[at..at + p.width].to_vec(),
            };
            at += p.width;
            nb
        })
        .collect()
}

/// `name=0x…:w` for every port, space separated.
pub fn format_ports(ports: &[Port], bits: &[bool]) -> String {
    split(ports, bits)
        .iter()
        .map(|nb| format_assignment(&nb.name, &nb.bits))
        .collect::<Vec<_>>()
        .join(" ")
}
