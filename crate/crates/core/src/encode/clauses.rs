//! Clause sets with DIMACS variable numbering.

use std::collections::HashSet;

/// A named DIMACS variable, e.g. `reg[3] = 4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MapEntry {
    pub name: String,
    pub index: usize,
    pub var: u32,
}

/// CNF over variables `1..=num_vars`.
///
/// Clauses are stored with literals sorted by variable. Adding a clause drops
/// duplicate literals, skips tautologies and skips clauses already present.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClauseSet {
    pub num_vars: u32,
    pub clauses: Vec<Vec<i32>>,
    pub inputs: Vec<MapEntry>,
    pub outputs: Vec<MapEntry>,
    seen: HashSet<Vec<i32>>,
}

impl ClauseSet {
    pub fn new(num_vars: u32) -> Self {
        ClauseSet {
            num_vars,
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn new_var(&mut self) -> u32 {
        self.num_vars += 1;
        self.num_vars
    }

    /// Add a clause; returns false if it was a tautology or a duplicate.
    pub fn add(&mut self, lits: &[i32]) -> bool {
        let mut c: Vec<i32> = lits.to_vec();
        c.sort_unstable_by_key(|l| (l.unsigned_abs(), *l > 0));
        c.dedup();
        if c.windows(2).any(|w| w[0] == -w[1]) {
            return false;
        }
        debug_assert!(c.iter().all(|l| *l != 0 && l.unsigned_abs() <= self.num_vars));
        if !self.seen.insert(c.clone()) {
            return false;
        }
        self.clauses.push(c);
        true
    }

    pub fn input_vars(&self) -> Vec<u32> {
        self.inputs.iter().map(|e| e.var).collect()
    }

    pub fn output_vars(&self) -> Vec<u32> {
        self.outputs.iter().map(|e| e.var).collect()
    }

    /// Clauses as a plain list, for structural comparison.
    pub fn same_clauses(&self, other: &ClauseSet) -> bool {
        self.num_vars == other.num_vars && self.clauses == other.clauses
    }
}
