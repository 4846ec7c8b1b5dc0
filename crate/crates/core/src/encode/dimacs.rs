//! DIMACS CNF text, with the input/output variable map carried in
//! `c in name[i] = v` and `c out name[i] = v` comment lines.

use std::fmt::Write as _;

use thiserror::Error;

use super::clauses::{ClauseSet, MapEntry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed header, expected `p cnf <vars> <clauses>`")]
    Header { line: usize },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: bad token `{token}`")]
    Token { line: usize, token: String },
    #[error("line {line}: literal {lit} is out of range for {vars} variables")]
    OutOfRange { line: usize, lit: i64, vars: u32 },
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
    #[error("last clause is not terminated by 0")]
    Unterminated,
    #[error("line {line}: malformed map comment")]
    Map { line: usize },
}

/// The `c in` / `c out` lines.
pub fn map_text(cs: &ClauseSet) -> String {
    let mut s = String::new();
    for (kind, entries) in [("in", &cs.inputs), ("out", &cs.outputs)] {
        for e in entries.iter() {
            let _ = writeln!(s, "c {kind} {}[{}] = {}", e.name, e.index, e.var);
        }
    }
    s
}

pub fn write_dimacs(cs: &ClauseSet) -> String {
    let mut s = map_text(cs);
    let _ = writeln!(s, "p cnf {} {}", cs.num_vars, cs.clauses.len());
    for c in &cs.clauses {
        for l in c {
            let _ = write!(s, "{l} ");
        }
        s.push_str("0\n");
    }
    s
}

/// Parse `name[index] = var` after the `c in` / `c out` prefix.
fn parse_map_entry(rest: &str) -> Option<MapEntry> {
    let (lhs, var) = rest.split_once('=')?;
    let (name, index) = lhs.trim().strip_suffix(']')?.split_once('[')?;
    Some(MapEntry {
        name: name.to_string(),
        index: index.parse().ok()?,
        var: var.trim().parse().ok()?,
    })
}

pub fn read_dimacs(text: &str) -> Result<ClauseSet, DimacsError> {
    let mut cs: Option<ClauseSet> = None;
    let mut declared = 0;
    let mut found = 0;
    let mut current: Vec<i32> = Vec::new();
    let (mut inputs, mut outputs) = (Vec::new(), Vec::new());
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t == "%" {
            continue;
        }
        if let Some(c) = t.strip_prefix('c') {
            let c = c.trim_start();
            for (prefix, list) in [("in ", &mut inputs), ("out ", &mut outputs)] {
                if let Some(rest) = c.strip_prefix(prefix) {
                    list.push(parse_map_entry(rest).ok_or(DimacsError::Map { line })?);
                }
            }
            continue;
        }
        if t.starts_with('p') {
            let f: Vec<&str> = t.split_whitespace().collect();
            if cs.is_some() || f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(DimacsError::Header { line });
            }
            let vars: u32 = f[2].parse().map_err(|_| DimacsError::Header { line })?;
            declared = f[3].parse().map_err(|_| DimacsError::Header { line })?;
            cs = Some(ClauseSet::new(vars));
            continue;
        }
        let set = cs.as_mut().ok_or(DimacsError::MissingHeader)?;
        for tok in t.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| DimacsError::Token {
                line,
                token: tok.to_string(),
            })?;
            if lit == 0 {
                found += 1;
                set.add(&current);
                current.clear();
            } else if lit.unsigned_abs() > set.num_vars as u64 {
                return Err(DimacsError::OutOfRange {
                    line,
                    lit,
                    vars: set.num_vars,
                });
            } else {
                current.push(lit as i32);
            }
        }
    }
    let mut cs = cs.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::Unterminated);
    }
    if found != declared {
        return Err(DimacsError::ClauseCount { declared, found });
    }
    for e in inputs.iter().chain(&outputs) {
        if e.var == 0 || e.var > cs.num_vars {
            return Err(DimacsError::OutOfRange {
                line: 0,
                lit: e.var as i64,
                vars: cs.num_vars,
            });
        }
    }
    cs.inputs = inputs;
    cs.outputs = outputs;
    Ok(cs)
}
