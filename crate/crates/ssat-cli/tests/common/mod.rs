//! Brute-force reference oracle for the acceptance suite: satisfaction by
//! literal-by-literal reading, independent of the identities the solvers
//! use.

use ssat::Instance;

pub fn brute_satisfies(instance: &Instance, y: u64) -> bool {
    instance.clauses().iter().all(|clause| {
        clause
            .literals()
            .any(|(var, positive)| ((y >> var) & 1 == 1) == positive)
    })
}

pub fn brute_solutions(instance: &Instance) -> Vec<u64> {
    (0..(1u64 << instance.n()))
        .filter(|&y| brute_satisfies(instance, y))
        .collect()
}
