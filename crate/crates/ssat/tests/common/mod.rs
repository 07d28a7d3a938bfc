//! Reference oracle for the integration tests: satisfaction decided by
//! literal-by-literal reading of each clause, independent of the mask and
//! membership identities the library relies on.

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
