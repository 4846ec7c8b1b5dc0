//! Satisfiability checking: a small internal DPLL solver and an adapter
//! for external solvers that print SAT-competition output.

mod dpll;

use std::path::Path;
use std::process::Command;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::encode::{write_dimacs, ClauseSet};

pub use dpll::{Solver, DEFAULT_DECISION_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverResult {
    pub status: Status,
    /// `model[v - 1]` is the value of DIMACS variable `v`.
    pub model: Option<Vec<bool>>,
}

impl SolverResult {
    pub fn sat(model: Vec<bool>) -> Self {
        SolverResult {
            status: Status::Sat,
            model: Some(model),
        }
    }

    pub fn unsat() -> Self {
        SolverResult {
            status: Status::Unsat,
            model: None,
        }
    }

    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }

    pub fn value(&self, var: u32) -> Option<bool> {
        self.model.as_ref().map(|m| m[var as usize - 1])
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("solver gave up after {decisions} decisions (result unknown)")]
    Unknown { decisions: u64 },
    #[error("literal {0} is out of range")]
    LiteralOutOfRange(i32),
    #[error("model assigns {got} variables, expected {expected}")]
    PartialModel { expected: usize, got: usize },
    #[error("solver returned a model that violates a clause")]
    InvalidModel,
    #[error("external solver reported UNKNOWN")]
    ExternalUnknown,
    #[error("cannot parse solver output: {0}")]
    Output(String),
    #[error("cannot run external solver: {0}")]
    Io(#[from] std::io::Error),
}

/// True iff every clause has a satisfied literal.
pub fn check_model(cs: &ClauseSet, model: &[bool]) -> Result<bool, SolveError> {
    if model.len() != cs.num_vars as usize {
        return Err(SolveError::PartialModel {
            expected: cs.num_vars as usize,
            got: model.len(),
        });
    }
    Ok(cs
        .clauses
        .iter()
        .all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == (l > 0))))
}

/// One-shot solve with the internal solver.
pub fn solve(cs: &ClauseSet, assumptions: &[i32]) -> Result<SolverResult, SolveError> {
    Solver::new(cs).solve(assumptions)
}

/// Parse `s …` / `v …` lines. Variables the solver leaves out of the model
/// are set to false; the caller should check the model.
pub fn parse_competition_output(text: &str, num_vars: u32) -> Result<SolverResult, SolveError> {
    let mut status = None;
    let mut model = vec![false; num_vars as usize];
    for line in text.lines() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = Some(match s.trim() {
                "SATISFIABLE" => Status::Sat,
                "UNSATISFIABLE" => Status::Unsat,
                "UNKNOWN" => return Err(SolveError::ExternalUnknown),
                other => return Err(SolveError::Output(format!("unknown verdict `{other}`"))),
            });
        } else if let Some(v) = line.strip_prefix("v ") {
            for tok in v.split_whitespace() {
                let lit: i64 = tok
                    .parse()
                    .map_err(|_| SolveError::Output(format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    continue;
                }
                let var = lit.unsigned_abs();
                if var > num_vars as u64 {
                    return Err(SolveError::Output(format!("literal {lit} out of range")));
                }
                model[var as usize - 1] = lit > 0;
            }
        }
    }
    match status {
        Some(Status::Sat) => Ok(SolverResult::sat(model)),
        Some(Status::Unsat) => Ok(SolverResult::unsat()),
        None => Err(SolveError::Output("no `s` line".into())),
    }
}

/// Run `solver <file>` on the clause set plus assumption units and parse
/// its standard output. A returned model is checked against the clauses.
pub fn solve_external(solver: &Path, cs: &ClauseSet, assumptions: &[i32]) -> Result<SolverResult, SolveError> {
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    let mut full = cs.clone();
    for &a in assumptions {
        if a == 0 || a.unsigned_abs() > cs.num_vars {
            return Err(SolveError::LiteralOutOfRange(a));
        }
        full.clauses.push(vec![a]);
    }
    let path = std::env::temp_dir().join(format!(
        "procsat-{}-{}.cnf",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::write(&path, write_dimacs(&full))?;
    let out = Command::new(solver).arg(&path).output();
    let _ = std::fs::remove_file(&path);
    let out = out?;
    let result = parse_competition_output(&String::from_utf8_lossy(&out.stdout), cs.num_vars)?;
    if let Some(m) = &result.model {
        if !check_model(&full, m)? {
            return Err(SolveError::InvalidModel);
        }
    }
    Ok(result)
}
