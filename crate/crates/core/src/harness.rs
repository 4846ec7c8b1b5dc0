//! End-to-end pipeline and the checks built on it: `verify` compares the
//! CNF against the reference interpreter on random inputs, `invert` asks
//! the solver for a preimage of a given output.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bits::{format_ports, input_ports, output_ports, BitsError};
use crate::boolir::{Encoding, EncodingError};
use crate::diag::Diagnostic;
use crate::encode::{minimize, tseitin, ClauseSet, MinimizeStats};
use crate::interp::{self, InterpError};
use crate::semantics::{check_source, Program};
use crate::solve::{solve_external, SolveError, Solver, SolverResult, DEFAULT_DECISION_LIMIT};
use crate::symbex::{execute, SymbexConfig, SymbexError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Diagnostic(Diagnostic),
    #[error(transparent)]
    Symbex(SymbexError),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Bits(#[from] BitsError),
    #[error("invalid encoding: {0}")]
    Encoding(#[from] EncodingError),
    #[error("solver returned input {inputs} which does not regenerate the requested output")]
    BadPreimage { inputs: String },
}

impl HarnessError {
    /// The failure is a resource limit rather than a wrong program or
    /// result.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            HarnessError::Symbex(SymbexError::Budget { .. })
                | HarnessError::Interp(InterpError::Budget { .. })
                | HarnessError::Solve(SolveError::Unknown { .. } | SolveError::ExternalUnknown)
        )
    }
}

impl From<SymbexError> for HarnessError {
    fn from(e: SymbexError) -> Self {
        match e {
            SymbexError::Program(d) => HarnessError::Diagnostic(d),
            e => HarnessError::Symbex(e),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    /// Replacement values for global `int` constants.
    pub overrides: Vec<(String, i64)>,
    /// Minimize definitions with at most this many support variables.
    pub minimize: Option<usize>,
    pub symbex: SymbexConfig,
}

#[derive(Debug, Clone)]
pub enum SolverChoice {
    Internal {
        decision_limit: u64,
    },
    /// Executable printing SAT-competition output for a DIMACS file.
    External(PathBuf),
}

impl Default for SolverChoice {
    fn default() -> Self {
        SolverChoice::Internal {
            decision_limit: DEFAULT_DECISION_LIMIT,
        }
    }
}

/// A checked program with its encoding and CNF.
#[derive(Debug, Clone)]
pub struct Compiled {
    pub program: Program,
    pub encoding: Encoding,
    pub cnf: ClauseSet,
    pub minimize: Option<MinimizeStats>,
}

pub fn compile(source: &str, opts: &Options) -> Result<Compiled, HarnessError> {
    let program = check_source(source, &opts.overrides).map_err(HarnessError::Diagnostic)?;
    let mut encoding = execute(&program, &opts.symbex)?.encoding;
    encoding.validate()?;
    let mut stats = None;
    if let Some(limit) = opts.minimize {
        let (m, s) = minimize(&encoding, limit);
        encoding = m;
        stats = Some(s);
    }
    let cnf = tseitin(&encoding);
    Ok(Compiled {
        program,
        encoding,
        cnf,
        minimize: stats,
    })
}

/// Per-trial input bits: trial `i` draws from stream `i` of the seeded
/// generator, so results do not depend on scheduling.
pub fn trial_inputs(seed: u64, trial: u64, width: usize) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..width).map(|_| rng.gen()).collect()
}

fn unit(var: u32, value: bool) -> i32 {
    if value {
        var as i32
    } else {
        -(var as i32)
    }
}

fn run_solver(
    choice: &SolverChoice,
    solver: &mut Option<Solver>,
    cnf: &ClauseSet,
    assumptions: &[i32],
) -> Result<SolverResult, SolveError> {
    match choice {
        SolverChoice::Internal { decision_limit } => solver
            .get_or_insert_with(|| Solver::new(cnf).with_decision_limit(*decision_limit))
            .solve(assumptions),
        SolverChoice::External(path) => solve_external(path, cnf, assumptions),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub trial: u64,
    pub inputs: Vec<bool>,
    pub expected: Vec<bool>,
    /// Output read from the model, `None` if the CNF was unsatisfiable.
    pub got: Option<Vec<bool>>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub trials: u64,
    pub failures: u64,
    pub seed: u64,
    pub elapsed: Duration,
    /// Lowest-numbered failing trial.
    pub first_failure: Option<Failure>,
}

impl VerifyReport {
    /// `key=value` lines; failing inputs are printed so they can be replayed
    /// with `run`.
    pub fn render(&self, program: &Program) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "trials={}", self.trials);
        let _ = writeln!(s, "failures={}", self.failures);
        let _ = writeln!(s, "seed={}", self.seed);
        let _ = writeln!(s, "time_ms={}", self.elapsed.as_millis());
        if let Some(f) = &self.first_failure {
            let _ = writeln!(s, "failed_trial={}", f.trial);
            let _ = writeln!(s, "failed_input={}", format_ports(&input_ports(program), &f.inputs));
            let _ = writeln!(s, "expected={}", format_ports(&output_ports(program), &f.expected));
            match &f.got {
                Some(g) => {
                    let _ = writeln!(s, "got={}", format_ports(&output_ports(program), g));
                }
                None => s.push_str("got=UNSAT\n"),
            }
        }
        s
    }
}

/// Check `cnf` against the interpreter on `trials` random inputs: fixing
/// the input variables must give a satisfiable CNF whose output variables
/// equal the interpreter's output.
pub fn verify_cnf(
    program: &Program,
    cnf: &ClauseSet,
    trials: u64,
    seed: u64,
    choice: &SolverChoice,
) -> Result<VerifyReport, HarnessError> {
    let start = Instant::now();
    let width = program.input_width();
    let in_vars = cnf.input_vars();
    let out_vars = cnf.output_vars();
    let outcomes: Vec<Option<Failure>> = (0..trials)
        .into_par_iter()
        .map_init(
            || None,
            |solver, trial| -> Result<Option<Failure>, HarnessError> {
                let inputs = trial_inputs(seed, trial, width);
                let expected = interp::run(program, &inputs)?.outputs;
                let assumptions: Vec<i32> = in_vars.iter().zip(&inputs).map(|(&v, &b)| unit(v, b)).collect();
                let result = run_solver(choice, solver, cnf, &assumptions)?;
                let got = result
                    .model
                    .as_ref()
                    .map(|m| out_vars.iter().map(|&v| m[v as usize - 1]).collect::<Vec<bool>>());
                Ok((got.as_ref() != Some(&expected)).then_some(Failure {
                    trial,
                    inputs,
                    expected,
                    got,
                }))
            },
        )
        .collect::<Result<_, _>>()?;
    let failures = outcomes.iter().filter(|f| f.is_some()).count() as u64;
    Ok(VerifyReport {
        trials,
        failures,
        seed,
        elapsed: start.elapsed(),
        first_failure: outcomes.into_iter().flatten().next(),
    })
}

pub fn verify(
    compiled: &Compiled,
    trials: u64,
    seed: u64,
    choice: &SolverChoice,
) -> Result<VerifyReport, HarnessError> {
    verify_cnf(&compiled.program, &compiled.cnf, trials, seed, choice)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inversion {
    /// An input that the interpreter maps to the requested output.
    Found(Vec<bool>),
    NoPreimage,
}

/// Find an input producing `outputs`. A solver answer is accepted only
/// after the interpreter reproduces the output from it.
pub fn invert(compiled: &Compiled, outputs: &[bool], choice: &SolverChoice) -> Result<Inversion, HarnessError> {
    let program = &compiled.program;
    if outputs.len() != program.output_width() {
        return Err(HarnessError::Encoding(EncodingError::InputWidth {
            expected: program.output_width(),
            got: outputs.len(),
        }));
    }
    let assumptions: Vec<i32> = compiled
        .cnf
        .output_vars()
        .iter()
        .zip(outputs)
        .map(|(&v, &b)| unit(v, b))
        .collect();
    let result = run_solver(choice, &mut None, &compiled.cnf, &assumptions)?;
    let Some(model) = result.model else {
        return Ok(Inversion::NoPreimage);
    };
    let inputs: Vec<bool> = compiled
        .cnf
        .input_vars()
        .iter()
        .map(|&v| model[v as usize - 1])
        .collect();
    if interp::run(program, &inputs)?.outputs != outputs {
        return Err(HarnessError::BadPreimage {
            inputs: format_ports(&input_ports(program), &inputs),
        });
    }
    Ok(Inversion::Found(inputs))
}
