//! Instance generators, including the prescribed-solution-set construction
//! that makes ground truth for the test suites: any subset of the word space
//! is the exact solution set of a suitable Simple instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Instance, SolutionSet, TernaryClause};
use crate::solvers::address_row;
use crate::table::{check_cap, TableError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error(transparent)]
    Cap(#[from] TableError),
    #[error("distinct sampling needs m <= 2^n, got m={m} at n={n}")]
    TooManyDistinctRows { n: u32, m: usize },
    #[error("clause width bound must be in 1..={n}, got {max_width}")]
    BadWidthBound { n: u32, max_width: u32 },
}

/// Shape of a randomly generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Full-width rows drawn uniformly with replacement.
    Simple,
    /// Full-width rows drawn uniformly without replacement, so all rows are
    /// distinct; `m = 2^n` forces the blocked instance.
    SimpleDistinct,
    /// Clause widths drawn uniformly from `1..=max_width`, variables and
    /// signs uniform.
    General { max_width: u32 },
}

/// The Simple instance whose solution set is exactly `solutions`: one row
/// blocking each non-solution, namely its complement. Rows come out in
/// ascending order; `m + |solutions| = 2^n`.
///
/// An empty set yields the fully blocked instance, a full set the empty one.
pub fn from_solution_set(solutions: &SolutionSet, cap: u32) -> Result<Instance, GenError> {
    let n = solutions.n();
    check_cap(n, cap)?;
    let mask = (1u64 << n) - 1;
    // Walking the non-solutions downward emits their complements upward.
    let rows = (0..=mask)
        .rev()
        .filter(|z| !solutions.contains(*z))
        .map(|z| !z & mask);
    Ok(Instance::from_rows(n, rows).expect("rows fit width"))
}

/// [`from_solution_set`] with the rows shuffled by a seeded generator, for
/// exercising solvers on disordered input.
pub fn from_solution_set_shuffled(
    solutions: &SolutionSet,
    seed: u64,
    cap: u32,
) -> Result<Instance, GenError> {
    let ordered = from_solution_set(solutions, cap)?;
    let mut rows: Vec<u64> = ordered.row_words().collect();
    rows.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Ok(Instance::from_rows(ordered.n(), rows).expect("rows fit width"))
}

/// All `2^n` distinct rows, emitted in board-address order so each row is
/// immediately followed by its complement.
pub fn blocked_board(n: u32, cap: u32) -> Result<Instance, GenError> {
    check_cap(n, cap)?;
    let rows = (0..1u64 << n).map(|address| address_row(address, n));
    Ok(Instance::from_rows(n, rows).expect("rows fit width"))
}

/// Deterministic random instance: the same seed always reproduces the same
/// instance.
pub fn random_instance(
    n: u32,
    m: usize,
    seed: u64,
    profile: Profile,
    cap: u32,
) -> Result<Instance, GenError> {
    check_cap(n, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match profile {
        Profile::Simple => {
            let rows: Vec<u64> = (0..m).map(|_| rng.gen_range(0..1u64 << n)).collect();
            Ok(Instance::from_rows(n, rows).expect("rows fit width"))
        }
        Profile::SimpleDistinct => {
            let size = 1usize << n;
            if m > size {
                return Err(GenError::TooManyDistinctRows { n, m });
            }
            let rows = rand::seq::index::sample(&mut rng, size, m)
                .into_iter()
                .map(|k| k as u64);
            Ok(Instance::from_rows(n, rows).expect("rows fit width"))
        }
        Profile::General { max_width } => {
            if max_width == 0 || max_width > n {
                return Err(GenError::BadWidthBound { n, max_width });
            }
            let clauses: Vec<TernaryClause> = (0..m)
                .map(|_| {
                    let width = rng.gen_range(1..=max_width) as usize;
                    let mut present = 0u64;
                    for var in rand::seq::index::sample(&mut rng, n as usize, width) {
                        present |= 1 << var;
                    }
                    let sign = rng.gen_range(0..1u64 << n) & present;
                    TernaryClause::new(present, sign).expect("masks built canonical")
                })
                .collect();
            Ok(Instance::new(n, clauses).expect("clauses fit width"))
        }
    }
}
