//! Encodings of a definition list: CNF by Tseitin clausification (with
//! optional two-level minimization), ANF and DNF.

pub mod anf;
pub mod clauses;
pub mod dimacs;
pub mod dnf;
pub mod minimize;
pub mod truth;
pub mod tseitin;

pub use anf::{emit_anf, AnfEquation, AnfSystem};
pub use clauses::{ClauseSet, MapEntry};
pub use dimacs::{map_text, read_dimacs, write_dimacs, DimacsError};
pub use dnf::{emit_dnf, DnfDefinition, DnfError, DnfSystem};
pub use minimize::{minimize, split_large, MinimizeStats};
pub use tseitin::{gate_cost, tseitin};
