//! Deterministic and probabilistic solvers for Simple instances, each
//! instrumented with [`Counters`] so its cost profile can be audited against
//! an exhaustive reference.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::encoding::augment_with_witness;
use crate::eval::eval_circuit;
use crate::model::{
    Assignment, Counters, Instance, SolutionSet, SolveResult, UnsatEvidence, Verdict,
    WitnessSource, MAX_VARS,
};
use crate::table::{CandidateTable, TableError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("solver requires a Simple (full-width) instance")]
    NotSimple,
    #[error(transparent)]
    Table(#[from] TableError),
}

fn require_simple(instance: &Instance) -> Result<(), SolveError> {
    if instance.is_simple() {
        Ok(())
    } else {
        Err(SolveError::NotSimple)
    }
}

/// Board slot of row word `k`: rows and their complements land on adjacent
/// addresses, the complement-pair with low half `l` occupying slots `2l`
/// (word with MSB 0) and `2l + 1` (its complement).
pub fn board_address(k: u64, n: u32) -> u64 {
    assert!(n >= 1 && n <= MAX_VARS, "variable count {} out of range", n);
    assert!(k < 1u64 << n, "row {} out of range", k);
    let half = 1u64 << (n - 1);
    let low = k & (half - 1);
    if k & half == 0 {
        2 * low
    } else {
        2 * (half - low) - 1
    }
}

/// Inverse of [`board_address`]: the row word stored at a board slot.
pub fn address_row(address: u64, n: u32) -> u64 {
    assert!(n >= 1 && n <= MAX_VARS);
    assert!(address < 1u64 << n, "address {} out of range", address);
    if address % 2 == 0 {
        address / 2
    } else {
        (1u64 << n) - (address + 1) / 2
    }
}

/// Fills a direct-addressed board with the distinct rows seen. If every slot
/// fills, the board itself witnesses that each word is paired with its
/// complement and nothing can satisfy the instance; if the input runs out
/// first, a satisfying assignment must exist, though none is named.
pub fn solve_board(instance: &Instance, cap: u32) -> Result<SolveResult, SolveError> {
    require_simple(instance)?;
    let n = instance.n();
    crate::table::check_cap(n, cap)?;
    let size = 1u64 << n;
    const EMPTY: u64 = u64::MAX;
    let mut board = vec![EMPTY; size as usize];
    let mut distinct = 0u64;
    let mut counters = Counters::default();
    for row in instance.row_words() {
        counters.rows_read += 1;
        let slot = board_address(row, n) as usize;
        if board[slot] == EMPTY {
            board[slot] = row;
            distinct += 1;
            if distinct == size {
                return Ok(SolveResult {
                    verdict: Verdict::Unsat(UnsatEvidence::Board(board)),
                    counters,
                    augmented: None,
                });
            }
        }
    }
    Ok(SolveResult {
        verdict: Verdict::SatExists,
        counters,
        augmented: None,
    })
}

/// Walks the input once over a linked candidate table. A row still present
/// either satisfies the instance (answer found in the input itself) or is
/// unlinked together with its complement. If the table empties, nothing
/// survives; if the input ends first, every remaining candidate is clear of
/// all removed pairs and the smallest one is a verified solution, reported
/// along with the instance grown by that witness.
pub fn solve_linked(instance: &Instance, cap: u32) -> Result<SolveResult, SolveError> {
    require_simple(instance)?;
    let n = instance.n();
    let mut table = CandidateTable::with_cap(n, cap)?;
    let size = 1u64 << n;
    let mut counters = Counters::default();
    for row in instance.row_words() {
        counters.rows_read += 1;
        if !table.contains(row) {
            continue;
        }
        let candidate = Assignment::new(n, row).expect("row fits width");
        if eval_circuit(instance, candidate, &mut counters) {
            return Ok(SolveResult {
                verdict: Verdict::Sat {
                    witness: candidate,
                    source: Some(WitnessSource::Row),
                },
                counters,
                augmented: None,
            });
        }
        // Pairs leave or stay together, so the complement is still present.
        table.remove(row);
        table.remove(candidate.complement().word());
        counters.removals += 1;
        if table.removed_count() == size {
            return Ok(SolveResult {
                verdict: Verdict::Unsat(UnsatEvidence::TableEmptied),
                counters,
                augmented: None,
            });
        }
    }
    let residual = table
        .first_remaining()
        .expect("pair removals empty the table only through the unsat exit");
    let witness = Assignment::new(n, residual).expect("candidate fits width");
    assert!(
        eval_circuit(instance, witness, &mut counters),
        "residual candidate {} must satisfy the instance",
        witness
    );
    let augmented = augment_with_witness(instance, witness);
    Ok(SolveResult {
        verdict: Verdict::Sat {
            witness,
            source: Some(WitnessSource::Residual),
        },
        counters,
        augmented: Some(augmented),
    })
}

/// What [`enumerate_solutions`] leaves behind: the exact solution set, the
/// table whose surviving chain is that set, and the run counters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerateResult {
    pub solutions: SolutionSet,
    pub table: CandidateTable,
    pub counters: Counters,
}

/// One pass that unlinks, for each row, the single candidate that row rules
/// out: the complement of its word. What survives is exactly the set of
/// satisfying assignments, possibly empty.
pub fn enumerate_solutions(instance: &Instance, cap: u32) -> Result<EnumerateResult, SolveError> {
    require_simple(instance)?;
    let n = instance.n();
    let mut table = CandidateTable::with_cap(n, cap)?;
    let size = 1u64 << n;
    let mut counters = Counters::default();
    for row in instance.row_words() {
        counters.rows_read += 1;
        let ruled_out = !row & ((1u64 << n) - 1);
        if table.contains(ruled_out) {
            table.remove(ruled_out);
            counters.removals += 1;
            if table.removed_count() == size {
                break;
            }
        }
    }
    let solutions = SolutionSet::new(n, table.iter()).expect("candidates fit width");
    Ok(EnumerateResult {
        solutions,
        table,
        counters,
    })
}

/// Draws candidates uniformly without replacement, evaluating each, until a
/// satisfying one turns up, every candidate has failed, or the draw budget
/// runs out. After `f` failures each survivor is selected with probability
/// `1/(2^n - f)`.
pub fn solve_probabilistic(
    instance: &Instance,
    seed: u64,
    budget: Option<u64>,
    cap: u32,
) -> Result<SolveResult, SolveError> {
    require_simple(instance)?;
    let n = instance.n();
    crate::table::check_cap(n, cap)?;
    let mut pool: Vec<u64> = (0..1u64 << n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counters = Counters::default();
    while !pool.is_empty() {
        if let Some(b) = budget {
            if counters.random_draws >= b {
                return Ok(SolveResult {
                    verdict: Verdict::Exhausted { budget: b },
                    counters,
                    augmented: None,
                });
            }
        }
        let drawn = pool.swap_remove(rng.gen_range(0..pool.len()));
        counters.random_draws += 1;
        let candidate = Assignment::new(n, drawn).expect("candidate fits width");
        if eval_circuit(instance, candidate, &mut counters) {
            return Ok(SolveResult {
                verdict: Verdict::Sat {
                    witness: candidate,
                    source: None,
                },
                counters,
                augmented: None,
            });
        }
    }
    Ok(SolveResult {
        verdict: Verdict::Unsat(UnsatEvidence::CandidatesExhausted),
        counters,
        augmented: None,
    })
}
