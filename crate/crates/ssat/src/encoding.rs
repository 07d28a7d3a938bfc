//! Translation between ternary digit strings, clauses, full-width row words
//! and the fixed-point augmentation that appends a witness as a new row.
//!
//! A clause over `x_0..x_{n-1}` is written as `n` digits, leftmost digit for
//! `x_{n-1}`: `0` a negative literal, `1` a positive literal, `2` the
//! variable is absent. A digit string without `2`s is simultaneously the
//! MSB-first binary rendering of the clause's row word.

use thiserror::Error;

use crate::model::{
    compute_kind, low_mask, Assignment, Instance, InstanceKind, ModelError, TernaryClause,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error("expected {expected} digits, got {got}")]
    WrongLength { expected: u32, got: usize },
    #[error("clause digits are all 2: no variable present")]
    AllAbsent,
    #[error("foreign character {0:?} in digit string")]
    ForeignDigit(char),
    #[error("clause is not full width for n={n}")]
    NotFullWidth { n: u32 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Parses an `n`-digit string over `{0,1,2}` into a clause.
pub fn parse_ternary(digits: &str, n: u32) -> Result<TernaryClause, EncodingError> {
    if n == 0 || n > crate::model::MAX_VARS {
        return Err(EncodingError::Model(ModelError::InvalidVarCount(n)));
    }
    if digits.len() != n as usize {
        return Err(EncodingError::WrongLength {
            expected: n,
            got: digits.len(),
        });
    }
    let mut present = 0u64;
    let mut sign = 0u64;
    for (j, ch) in digits.chars().enumerate() {
        let var = n - 1 - j as u32;
        match ch {
            '0' => present |= 1 << var,
            '1' => {
                present |= 1 << var;
                sign |= 1 << var;
            }
            '2' => {}
            other => return Err(EncodingError::ForeignDigit(other)),
        }
    }
    if present == 0 {
        return Err(EncodingError::AllAbsent);
    }
    Ok(TernaryClause::new(present, sign).expect("masks built canonical"))
}

/// Exact inverse of [`parse_ternary`].
pub fn render_ternary(clause: TernaryClause, n: u32) -> String {
    assert!(
        n >= 1 && n <= crate::model::MAX_VARS && clause.present() & !low_mask(n) == 0,
        "clause does not fit n={}",
        n
    );
    (0..n)
        .rev()
        .map(|var| {
            if clause.present() >> var & 1 == 0 {
                '2'
            } else if clause.sign() >> var & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// The row word of a full-width clause: its sign pattern read as a binary
/// number.
pub fn row_word(clause: TernaryClause, n: u32) -> Result<Assignment, EncodingError> {
    if !clause.is_full_width(n) {
        return Err(EncodingError::NotFullWidth { n });
    }
    Ok(Assignment::new(n, clause.sign()).expect("sign fits width"))
}

/// Recomputes the instance kind from the clause list.
pub fn classify(instance: &Instance) -> InstanceKind {
    compute_kind(instance.n(), instance.clauses())
}

/// Returns a new instance with the witness appended as one more clause. The
/// appended clause contains all variables, its sign pattern equal to the
/// witness, so the witness is a row of the grown instance.
pub fn augment_with_witness(instance: &Instance, witness: Assignment) -> Instance {
    assert_eq!(
        witness.n(),
        instance.n(),
        "witness width must match the instance"
    );
    let clause =
        TernaryClause::full_width(instance.n(), witness.word()).expect("witness fits width");
    augment_with_clause(instance, clause).expect("full-width clause fits the instance")
}

/// Returns a new instance with an arbitrary clause appended, as when a found
/// ternary string is adopted as one more row of the problem it solves.
pub fn augment_with_clause(
    instance: &Instance,
    clause: TernaryClause,
) -> Result<Instance, ModelError> {
    let mut clauses = instance.clauses().to_vec();
    clauses.push(clause);
    Instance::new(instance.n(), clauses)
}
