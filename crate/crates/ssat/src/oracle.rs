//! A simulated completion-decision oracle and the two procedures built on
//! it: witness extraction by bit fixing and consistency verification of an
//! unsat answer.
//!
//! The oracle is an interface so tests can swap in deliberately faulty
//! backends; the honest backend answers through
//! [`exists_completion`](crate::eval::exists_completion).

use crate::eval::{exists_completion, eval_circuit, PartialAssignment};
use crate::model::{Counters, Instance, SolveResult, UnsatEvidence, Verdict, WitnessSource};

/// Decides whether a partial assignment extends to a satisfying one.
///
/// Implementations account for themselves: each query bumps
/// `counters.oracle_calls` exactly once.
pub trait DecisionOracle {
    fn var_count(&self) -> u32;
    fn query(&self, p: &PartialAssignment, counters: &mut Counters) -> bool;
}

/// The honest oracle over an instance.
pub struct InstanceOracle<'a>(pub &'a Instance);

impl DecisionOracle for InstanceOracle<'_> {
    fn var_count(&self) -> u32 {
        self.0.n()
    }

    fn query(&self, p: &PartialAssignment, counters: &mut Counters) -> bool {
        exists_completion(self.0, p, counters)
    }
}

/// Extracts a witness with at most `n + 1` oracle calls, or decides unsat
/// with one.
///
/// After the opening all-free query, bits are fixed from `x_{n-1}` down to
/// `x_0`, trying 0 first. When the 0-branch query fails, the bit is set to 1
/// without a second call: the parent prefix had a completion, so one of the
/// two branches must. The result is the smallest satisfying assignment.
pub fn extract_with_oracle<O: DecisionOracle>(oracle: &O) -> (Verdict, Counters) {
    let n = oracle.var_count();
    let mut counters = Counters::default();
    let mut p = PartialAssignment::all_free(n);
    if !oracle.query(&p, &mut counters) {
        return (Verdict::Unsat(UnsatEvidence::OracleDecision), counters);
    }
    for var in (0..n).rev() {
        p = p.with(var, false);
        if !oracle.query(&p, &mut counters) {
            p = p.with(var, true);
        }
    }
    let witness = p
        .to_assignment()
        .expect("every variable was fixed by the descent");
    (
        Verdict::Sat {
            witness,
            source: Some(WitnessSource::Oracle),
        },
        counters,
    )
}

/// [`extract_with_oracle`] over the honest oracle, with the extracted
/// witness re-verified against the instance before it is returned.
pub fn extract_solution(instance: &Instance) -> SolveResult {
    let (verdict, mut counters) = extract_with_oracle(&InstanceOracle(instance));
    if let Verdict::Sat { witness, .. } = verdict {
        assert!(
            eval_circuit(instance, witness, &mut counters),
            "extracted witness {} failed evaluation",
            witness
        );
    }
    SolveResult {
        verdict,
        counters,
        augmented: None,
    }
}

/// Outcome of checking an unsat answer for internal consistency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnsatConsistency {
    /// Every one-variable restriction is unsat too, as it must be.
    Consistent,
    /// Some restriction reported sat under a top-level unsat: the oracle
    /// backend contradicts itself at this variable and value.
    Inconsistent { var: u32, value: bool },
    /// The top-level query answered sat, so there is nothing to verify.
    NotApplicable,
}

/// Cross-examines an unsat answer with at most `2n + 1` oracle calls: under
/// a correct backend, fixing any single variable of an unsatisfiable
/// instance must leave it unsatisfiable.
pub fn verify_unsat_with_oracle<O: DecisionOracle>(oracle: &O) -> (UnsatConsistency, Counters) {
    let n = oracle.var_count();
    let mut counters = Counters::default();
    let free = PartialAssignment::all_free(n);
    if oracle.query(&free, &mut counters) {
        return (UnsatConsistency::NotApplicable, counters);
    }
    for var in (0..n).rev() {
        for value in [false, true] {
            if oracle.query(&free.with(var, value), &mut counters) {
                return (UnsatConsistency::Inconsistent { var, value }, counters);
            }
        }
    }
    (UnsatConsistency::Consistent, counters)
}

/// [`verify_unsat_with_oracle`] over the honest oracle.
pub fn verify_unsat(instance: &Instance) -> (UnsatConsistency, Counters) {
    verify_unsat_with_oracle(&InstanceOracle(instance))
}
