//! Rendering of run outcomes as text or a single JSON object per run:
//!
//! ```json
//! {"status": "sat", "witness": "101", "source": "row",
//!  "counters": {...}, "augmented_rows": 2}
//! ```
//!
//! `witness` is an MSB-first binary string or null; `source` is one of
//! `row`, `residual`, `oracle` or null. Enumeration runs add a `solutions`
//! array, oracle verification runs a `consistency` field.

use serde_json::{json, Value};
use ssat::oracle::UnsatConsistency;
use ssat::solvers::EnumerateResult;
use ssat::{Counters, SolveResult, Verdict, WitnessSource};

#[derive(Debug, Clone)]
pub struct RunReport {
    pub status: &'static str,
    pub witness: Option<String>,
    pub source: Option<&'static str>,
    pub counters: Counters,
    pub augmented_rows: usize,
    pub solutions: Option<Vec<String>>,
    pub consistency: Option<Value>,
    /// Process exit code the outcome maps to.
    pub exit_code: i32,
}

fn source_label(source: Option<WitnessSource>) -> Option<&'static str> {
    source.map(|s| match s {
        WitnessSource::Row => "row",
        WitnessSource::Residual => "residual",
        WitnessSource::Oracle => "oracle",
    })
}

impl RunReport {
    pub fn from_solve(result: &SolveResult, input_rows: usize) -> Self {
        let (witness, source) = match &result.verdict {
            Verdict::Sat { witness, source } => (Some(witness.to_string()), source_label(*source)),
            _ => (None, None),
        };
        let exit_code = match &result.verdict {
            Verdict::Sat { .. } | Verdict::SatExists => 0,
            Verdict::Unsat(_) => 1,
            Verdict::Exhausted { .. } => 2,
        };
        RunReport {
            status: result.verdict.status_label(),
            witness,
            source,
            counters: result.counters,
            augmented_rows: result
                .augmented
                .as_ref()
                .map_or(input_rows, |grown| grown.m()),
            solutions: None,
            consistency: None,
            exit_code,
        }
    }

    pub fn from_enumeration(result: &EnumerateResult, input_rows: usize) -> Self {
        RunReport {
            status: if result.solutions.is_empty() {
                "unsat"
            } else {
                "sat"
            },
            witness: None,
            source: None,
            counters: result.counters,
            augmented_rows: input_rows,
            solutions: Some(result.solutions.assignments().map(|a| a.to_string()).collect()),
            consistency: None,
            exit_code: if result.solutions.is_empty() { 1 } else { 0 },
        }
    }

    pub fn from_consistency(outcome: UnsatConsistency, counters: Counters, input_rows: usize) -> Self {
        let (status, consistency, exit_code) = match outcome {
            UnsatConsistency::NotApplicable => ("sat", json!("not-applicable"), 0),
            UnsatConsistency::Consistent => ("unsat", json!("consistent"), 1),
            UnsatConsistency::Inconsistent { var, value } => (
                "unsat",
                json!({"inconsistent": {"var": var, "value": value as u8}}),
                70,
            ),
        };
        RunReport {
            status,
            witness: None,
            source: None,
            counters,
            augmented_rows: input_rows,
            solutions: None,
            consistency: Some(consistency),
            exit_code,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut object = json!({
            "status": self.status,
            "witness": self.witness,
            "source": self.source,
            "counters": counters_json(&self.counters),
            "augmented_rows": self.augmented_rows,
        });
        if let Some(solutions) = &self.solutions {
            object["solutions"] = json!(solutions);
        }
        if let Some(consistency) = &self.consistency {
            object["consistency"] = consistency.clone();
        }
        object
    }

    pub fn to_text(&self, with_counters: bool) -> String {
        let mut out = format!("status: {}\n", self.status);
        if let Some(witness) = &self.witness {
            out.push_str(&format!("witness: {}\n", witness));
        }
        if let Some(source) = self.source {
            out.push_str(&format!("source: {}\n", source));
        }
        if let Some(consistency) = &self.consistency {
            out.push_str(&format!("consistency: {}\n", consistency));
        }
        if let Some(solutions) = &self.solutions {
            out.push_str(&format!("solutions: {}\n", solutions.len()));
            for s in solutions {
                out.push_str(s);
                out.push('\n');
            }
        }
        out.push_str(&format!("augmented_rows: {}\n", self.augmented_rows));
        if with_counters {
            let c = &self.counters;
            out.push_str(&format!(
                "rows_read: {}\nevaluations: {}\nremovals: {}\noracle_calls: {}\nrandom_draws: {}\n",
                c.rows_read, c.evaluations, c.removals, c.oracle_calls, c.random_draws
            ));
        }
        out
    }
}

pub fn counters_json(c: &Counters) -> Value {
    json!({
        "rows_read": c.rows_read,
        "evaluations": c.evaluations,
        "removals": c.removals,
        "oracle_calls": c.oracle_calls,
        "random_draws": c.random_draws,
    })
}
