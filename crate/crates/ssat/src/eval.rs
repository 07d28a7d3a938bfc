//! Instance evaluation and completion decisions.
//!
//! Two equivalent total-assignment strategies are provided: the whole-circuit
//! evaluation [`eval_circuit`] (counted as a single evaluation no matter how
//! many clauses there are) and the literal digit-by-digit matcher
//! [`eval_matching`] which spends one comparison per row digit.
//! [`exists_completion`] is the decision query behind the oracle solvers: it
//! answers whether a partial assignment extends to a satisfying one.

use thiserror::Error;

use crate::model::{low_mask, Assignment, Counters, Instance, TernaryClause, MAX_VARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("operation requires a Simple (full-width) instance")]
    NotSimple,
}

/// An assignment of some subset of the `n` variables.
///
/// `fixed` marks assigned variables; where fixed, the matching bit of
/// `values` holds the assigned value. Value bits outside the fixed mask stay
/// zero. Free positions stand for variables still open to either value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    n: u32,
    fixed: u64,
    values: u64,
}

impl PartialAssignment {
    /// All `n` variables free.
    pub fn all_free(n: u32) -> Self {
        assert!(n >= 1 && n <= MAX_VARS, "variable count {} out of range", n);
        PartialAssignment {
            n,
            fixed: 0,
            values: 0,
        }
    }

    /// Copy of `self` with variable `var` fixed to `value`.
    pub fn with(self, var: u32, value: bool) -> Self {
        assert!(var < self.n, "variable x{} out of range", var);
        let bit = 1u64 << var;
        PartialAssignment {
            n: self.n,
            fixed: self.fixed | bit,
            values: if value {
                self.values | bit
            } else {
                self.values & !bit
            },
        }
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn fixed_mask(self) -> u64 {
        self.fixed
    }

    pub fn values(self) -> u64 {
        self.values
    }

    pub fn is_free(self, var: u32) -> bool {
        assert!(var < self.n);
        self.fixed >> var & 1 == 0
    }

    pub fn free_count(self) -> u32 {
        self.n - self.fixed.count_ones()
    }

    pub fn is_total(self) -> bool {
        self.fixed == low_mask(self.n)
    }

    pub fn to_assignment(self) -> Option<Assignment> {
        self.is_total()
            .then(|| Assignment::new(self.n, self.values).expect("values fit width"))
    }

    /// Does the total assignment `word` agree with every fixed position?
    pub fn agrees_with(self, word: u64) -> bool {
        word & self.fixed == self.values
    }
}

/// Whether a single clause holds under a total assignment: true iff some
/// present variable carries its sign value.
pub fn eval_clause(clause: TernaryClause, y: Assignment) -> bool {
    debug_assert!(clause.present() & !low_mask(y.n()) == 0);
    !(y.word() ^ clause.sign()) & clause.present() != 0
}

/// Whole-instance evaluation, one counter tick per call.
///
/// General instances are conjunctions of [`eval_clause`]. Simple instances
/// use the identity that a full-width row falsifies exactly the complement
/// of its own word: `y` satisfies the instance iff `y` is not among the
/// blocked words, an O(1) probe against the index built at construction.
pub fn eval_circuit(instance: &Instance, y: Assignment, counters: &mut Counters) -> bool {
    debug_assert_eq!(y.n(), instance.n());
    counters.evaluations += 1;
    match instance.blocked_words() {
        Some(blocked) => !blocked.contains(&y.word()),
        None => instance.clauses().iter().all(|&c| eval_clause(c, y)),
    }
}

/// Digit-by-digit matching over a Simple instance: for every row, scan all
/// `n` digits and require at least one agreement. Spends exactly `m * n`
/// comparisons, the cost the circuit view avoids.
pub fn eval_matching(instance: &Instance, y: Assignment) -> Result<bool, EvalError> {
    if !instance.is_simple() {
        return Err(EvalError::NotSimple);
    }
    let n = instance.n();
    let mut all_rows_matched = true;
    for row in instance.row_words() {
        let mut row_matched = false;
        for i in 0..n {
            if (y.word() >> i) & 1 == (row >> i) & 1 {
                row_matched = true;
            }
        }
        all_rows_matched &= row_matched;
    }
    Ok(all_rows_matched)
}

/// Does some total assignment extending `p` satisfy the instance? One oracle
/// call per invocation.
///
/// Simple instances are decided by counting: the extensions of `p` are
/// `2^free` and each blocked word agreeing with `p` on its fixed positions
/// kills exactly one of them, so a completion exists iff the agreeing
/// blocked words do not cover them all. General instances fall back to a
/// branch-and-prune search over the free variables.
pub fn exists_completion(instance: &Instance, p: &PartialAssignment, counters: &mut Counters) -> bool {
    debug_assert_eq!(p.n(), instance.n());
    counters.oracle_calls += 1;
    match instance.blocked_words() {
        Some(_) => exists_by_blocked_count(instance, p),
        None => exists_by_search(instance.clauses(), *p),
    }
}

fn exists_by_blocked_count(instance: &Instance, p: &PartialAssignment) -> bool {
    let blocked = instance
        .blocked_words()
        .expect("counting backend requires a Simple instance");
    let agreeing = blocked.iter().filter(|&&w| p.agrees_with(w)).count() as u64;
    agreeing < 1u64 << p.free_count()
}

fn exists_by_search(clauses: &[TernaryClause], p: PartialAssignment) -> bool {
    let mut all_satisfied = true;
    for c in clauses {
        // A fixed literal with the right value settles the clause.
        if c.present() & p.fixed_mask() & !(p.values() ^ c.sign()) != 0 {
            continue;
        }
        all_satisfied = false;
        // No free variable left to rescue it.
        if c.present() & !p.fixed_mask() == 0 {
            return false;
        }
    }
    if all_satisfied {
        return true;
    }
    let var = (0..p.n())
        .rev()
        .find(|&v| p.is_free(v))
        .expect("an unsettled clause implies a free variable");
    exists_by_search(clauses, p.with(var, false)) || exists_by_search(clauses, p.with(var, true))
}
