//! Solvers, generators and file formats for CNF satisfiability built on
//! complement-pair semantics.
//!
//! The central object is the Simple instance: a CNF problem whose every
//! clause contains all `n` variables, so each clause is an n-bit row word
//! and is falsified by exactly one assignment, the complement of that word.
//! On top of this sit:
//!
//! - [`solvers`]: a direct-addressed board filler, a linked candidate-table
//!   solver, exact solution-set enumeration and a uniform random prober,
//!   each reporting [`model::Counters`] for cost audits;
//! - [`oracle`]: a simulated completion-decision oracle with bit-fixing
//!   witness extraction and unsat cross-examination, for general CNF too;
//! - [`gen`]: instance generators, including the construction that realizes
//!   any prescribed solution set exactly;
//! - [`encoding`] and [`fmt`]: the ternary digit view of clauses and the
//!   DIMACS / `tsat` / `ssat` file formats.

pub mod encoding;
pub mod eval;
pub mod fmt;
pub mod gen;
pub mod model;
pub mod oracle;
pub mod solvers;
pub mod table;

pub use model::{
    falsifying_assignment, Assignment, Counters, Instance, InstanceKind, ModelError, SolutionSet,
    SolveResult, TernaryClause, UnsatEvidence, Verdict, WitnessSource, MAX_VARS,
};
pub use table::DEFAULT_TABLE_CAP;
