//! DPLL with two watched literals and chronological backtracking.
//!
//! Branching picks the lowest-numbered unassigned variable and tries the
//! positive phase first, so runs are reproducible.

use super::{check_model, SolveError, SolverResult};
use crate::encode::ClauseSet;

pub const DEFAULT_DECISION_LIMIT: u64 = 100_000_000;

const UNDEF: i8 = 0;

fn code(lit: i32) -> usize {
    2 * (lit.unsigned_abs() as usize - 1) + (lit < 0) as usize
}

struct Level {
    /// Trail length before the decision literal was pushed.
    pos: usize,
    lit: i32,
    flipped: bool,
}

/// Solver instance over a fixed clause set. Each call to [`Solver::solve`]
/// starts from the root assignment, so one instance can serve many
/// assumption sets.
pub struct Solver {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
    watches: Vec<Vec<usize>>,
    /// Per variable: 1 true, -1 false, 0 unassigned.
    assign: Vec<i8>,
    trail: Vec<i32>,
    qhead: usize,
    levels: Vec<Level>,
    /// Lowest variable that may be unassigned.
    cursor: usize,
    /// The clause set is unsatisfiable regardless of assumptions.
    root_conflict: bool,
    decision_limit: u64,
    pub decisions: u64,
    source: ClauseSet,
}

impl Solver {
    pub fn new(cs: &ClauseSet) -> Self {
        let n = cs.num_vars as usize;
        let mut s = Solver {
            num_vars: n,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            assign: vec![UNDEF; n + 1],
            trail: Vec::new(),
            qhead: 0,
            levels: Vec::new(),
            cursor: 1,
            root_conflict: false,
            decision_limit: DEFAULT_DECISION_LIMIT,
            decisions: 0,
            source: cs.clone(),
        };
        let mut units = Vec::new();
        for c in &cs.clauses {
            match c.len() {
                0 => s.root_conflict = true,
                1 => units.push(c[0]),
                _ => {
                    let i = s.clauses.len();
                    s.watches[code(c[0])].push(i);
                    s.watches[code(c[1])].push(i);
                    s.clauses.push(c.clone());
                }
            }
        }
        for u in units {
            if !s.enqueue(u) {
                s.root_conflict = true;
            }
        }
        if !s.root_conflict && !s.propagate() {
            s.root_conflict = true;
        }
        s
    }

    pub fn with_decision_limit(mut self, limit: u64) -> Self {
        self.decision_limit = limit;
        self
    }

    fn value(&self, lit: i32) -> i8 {
        let a = self.assign[lit.unsigned_abs() as usize];
        if lit > 0 {
            a
        } else {
            -a
        }
    }

    /// Assign `lit` true; false if it is already false.
    fn enqueue(&mut self, lit: i32) -> bool {
        match self.value(lit) {
            1 => true,
            -1 => false,
            _ => {
                self.assign[lit.unsigned_abs() as usize] = if lit > 0 { 1 } else { -1 };
                self.trail.push(lit);
                true
            }
        }
    }

    /// Unit propagation; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = -p;
            let mut ws = std::mem::take(&mut self.watches[code(false_lit)]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i];
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                let val = |l: i32| {
                    let a = self.assign[l.unsigned_abs() as usize];
                    if l > 0 {
                        a
                    } else {
                        -a
                    }
                };
                if val(first) == 1 {
                    i += 1;
                    continue;
                }
                if let Some(k) = (2..clause.len()).find(|&k| val(clause[k]) != -1) {
                    clause.swap(1, k);
                    let w = clause[1];
                    self.watches[code(w)].push(ci);
                    ws.swap_remove(i);
                    continue;
                }
                i += 1;
                if !self.enqueue(first) {
                    ok = false;
                    break;
                }
            }
            self.watches[code(false_lit)] = ws;
            if !ok {
                self.qhead = self.trail.len();
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, pos: usize) {
        for &l in &self.trail[pos..] {
            let v = l.unsigned_abs() as usize;
            self.assign[v] = UNDEF;
            self.cursor = self.cursor.min(v);
        }
        self.trail.truncate(pos);
        self.qhead = pos;
    }

    fn next_unassigned(&mut self) -> Option<usize> {
        while self.cursor <= self.num_vars && self.assign[self.cursor] != UNDEF {
            self.cursor += 1;
        }
        (self.cursor <= self.num_vars).then_some(self.cursor)
    }

    /// Decide satisfiability under `assumptions`.
    pub fn solve(&mut self, assumptions: &[i32]) -> Result<SolverResult, SolveError> {
        for &a in assumptions {
            if a == 0 || a.unsigned_abs() as usize > self.num_vars {
                return Err(SolveError::LiteralOutOfRange(a));
            }
        }
        if self.root_conflict {
            return Ok(SolverResult::unsat());
        }
        let base = self.trail.len();
        let result = self.search(base, assumptions);
        self.levels.clear();
        self.undo_to(base);
        result
    }

    fn search(&mut self, base: usize, assumptions: &[i32]) -> Result<SolverResult, SolveError> {
        for &a in assumptions {
            if !self.enqueue(a) {
                return Ok(SolverResult::unsat());
            }
        }
        let start = self.decisions;
        loop {
            if !self.propagate() {
                loop {
                    let Some(level) = self.levels.pop() else {
                        return Ok(SolverResult::unsat());
                    };
                    self.undo_to(level.pos);
                    if !level.flipped {
                        self.levels.push(Level {
                            pos: level.pos,
                            lit: -level.lit,
                            flipped: true,
                        });
                        self.enqueue(-level.lit);
                        break;
                    }
                }
                continue;
            }
            let Some(v) = self.next_unassigned() else {
                let model: Vec<bool> = self.assign[1..].iter().map(|&a| a == 1).collect();
                if !check_model(&self.source, &model)? {
                    return Err(SolveError::InvalidModel);
                }
                debug_assert!(self.trail.len() >= base);
                return Ok(SolverResult::sat(model));
            };
            if self.decisions - start >= self.decision_limit {
                return Err(SolveError::Unknown {
                    decisions: self.decision_limit,
                });
            }
            self.decisions += 1;
            let lit = v as i32;
            self.levels.push(Level {
                pos: self.trail.len(),
                lit,
                flipped: false,
            });
            self.enqueue(lit);
        }
    }
}
