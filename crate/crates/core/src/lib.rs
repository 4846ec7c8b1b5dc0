//! Translation of bit-level imperative programs into propositional
//! encodings (CNF, ANF, DNF) by symbolic execution.
//!
//! Pipeline: [`frontend`] parses, [`semantics`] type-checks and folds
//! constants, [`symbex`] builds an [`Encoding`], [`encode`] emits clauses
//! or other normal forms, [`solve`] decides satisfiability, and
//! [`harness`] ties them together with the reference interpreter
//! ([`interp`]).

pub mod bits;
pub mod boolir;
pub mod corpus;
pub mod diag;
pub mod encode;
pub mod frontend;
pub mod harness;
pub mod interp;
pub mod semantics;
pub mod solve;
pub mod symbex;

pub use boolir::{Arena, Definition, Encoding, Formula, Label, Node, Origin, VarId};
pub use diag::{Diagnostic, Loc, Severity};
pub use encode::{ClauseSet, MapEntry};
pub use harness::{compile, Compiled, HarnessError, Options, SolverChoice};
pub use semantics::{check_source, Program};
pub use solve::{SolverResult, Status};
