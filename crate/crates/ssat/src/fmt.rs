//! File formats: standard DIMACS CNF and the two line-oriented digit
//! formats, `tsat` (digits over `{0,1,2}`) and `ssat` (binary rows only).
//!
//! ```text
//! p cnf 5 3        tsat 5 3        ssat 3 2
//! 5 -4 1 0         10221           101
//! 4 3 0            21122           100
//! -5 4 -3 2 0      01012
//! ```
//!
//! Writers are canonical: reading what they emit reproduces the instance,
//! and writing what they parse reproduces canonical text byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::encoding::{parse_ternary, render_ternary, EncodingError};
use crate::model::{Instance, InstanceKind, ModelError, TernaryClause};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("missing or empty input")]
    Empty,
    #[error("unrecognized header {0:?}")]
    BadHeader(String),
    #[error("line {line}: {source}")]
    Digits { line: usize, source: EncodingError },
    #[error("line {line}: digit 2 not allowed in an ssat file")]
    TernaryDigitInSsat { line: usize },
    #[error("expected {expected} clause lines, found {found}")]
    LineCountMismatch { expected: usize, found: usize },
    #[error("bad literal token {0:?}")]
    BadLiteral(String),
    #[error("literal {literal} names a variable outside 1..={n}")]
    LiteralOutOfRange { literal: i64, n: u32 },
    #[error("clause {index} is empty")]
    EmptyClause { index: usize },
    #[error("clause {index} uses variable {var} with both signs")]
    ConflictingSigns { index: usize, var: u32 },
    #[error("clause {index} is not terminated by 0")]
    UnterminatedClause { index: usize },
    #[error("expected {expected} clauses, found {found}")]
    ClauseCountMismatch { expected: usize, found: usize },
    #[error("unexpected content after the last clause")]
    TrailingContent,
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn parse_header_counts(parts: &[&str], text: &str) -> Result<(u32, usize), FormatError> {
    let bad = || FormatError::BadHeader(text.trim_end().to_string());
    let n = parts.first().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    let m = parts.get(1).and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    if parts.len() != 2 {
        return Err(bad());
    }
    Ok((n, m))
}

/// Parses a `tsat` or `ssat` file.
pub fn read_text(text: &str) -> Result<Instance, FormatError> {
    let mut lines = text.lines();
    let header = loop {
        match lines.next() {
            Some(line) if line.trim().is_empty() => continue,
            Some(line) => break line,
            None => return Err(FormatError::Empty),
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let binary_only = match fields.first() {
        Some(&"tsat") => false,
        Some(&"ssat") => true,
        _ => return Err(FormatError::BadHeader(header.trim_end().to_string())),
    };
    let (n, m) = parse_header_counts(&fields[1..], header)?;

    let mut clauses = Vec::with_capacity(m);
    for (offset, line) in lines.by_ref().enumerate() {
        let line_no = offset + 2;
        let row = line.trim();
        if row.is_empty() {
            continue;
        }
        if clauses.len() == m {
            return Err(FormatError::LineCountMismatch {
                expected: m,
                found: m + 1,
            });
        }
        if binary_only && row.contains('2') {
            return Err(FormatError::TernaryDigitInSsat { line: line_no });
        }
        let clause = parse_ternary(row, n).map_err(|source| FormatError::Digits {
            line: line_no,
            source,
        })?;
        clauses.push(clause);
    }
    if clauses.len() != m {
        return Err(FormatError::LineCountMismatch {
            expected: m,
            found: clauses.len(),
        });
    }
    Ok(Instance::new(n, clauses)?)
}

/// Renders an instance in its canonical text format: `ssat` when every
/// clause is full width, `tsat` otherwise.
pub fn write_text(instance: &Instance) -> String {
    let keyword = match instance.kind() {
        InstanceKind::Simple => "ssat",
        InstanceKind::General => "tsat",
    };
    let mut out = String::new();
    writeln!(out, "{} {} {}", keyword, instance.n(), instance.m()).unwrap();
    for &clause in instance.clauses() {
        writeln!(out, "{}", render_ternary(clause, instance.n())).unwrap();
    }
    out
}

/// Parses DIMACS CNF. Comment lines are skipped; literal `v > 0` is the
/// positive literal of `x_{v-1}`. Empty clauses and clauses carrying a
/// variable with both signs are rejected.
pub fn read_dimacs(text: &str) -> Result<Instance, FormatError> {
    let mut lines = text.lines();
    let header = loop {
        match lines.next() {
            Some(line) => {
                let t = line.trim();
                if t.is_empty() || t.starts_with('c') {
                    continue;
                }
                break t.to_string();
            }
            None => return Err(FormatError::Empty),
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields[0] != "p" || fields[1] != "cnf" {
        return Err(FormatError::BadHeader(header));
    }
    let (n, m) = parse_header_counts(&fields[2..], &header)?;
    if n == 0 || n > crate::model::MAX_VARS {
        return Err(FormatError::Model(ModelError::InvalidVarCount(n)));
    }

    let mut clauses: Vec<TernaryClause> = Vec::with_capacity(m);
    let mut present = 0u64;
    let mut sign = 0u64;
    let mut open = false;
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('c') {
            continue;
        }
        for token in line.split_whitespace() {
            let literal: i64 = token
                .parse()
                .map_err(|_| FormatError::BadLiteral(token.to_string()))?;
            let index = clauses.len();
            if literal == 0 {
                if present == 0 {
                    return Err(FormatError::EmptyClause { index });
                }
                if clauses.len() == m {
                    return Err(FormatError::ClauseCountMismatch {
                        expected: m,
                        found: m + 1,
                    });
                }
                clauses.push(TernaryClause::new(present, sign).expect("masks built canonical"));
                present = 0;
                sign = 0;
                open = false;
                continue;
            }
            if clauses.len() == m {
                return Err(FormatError::TrailingContent);
            }
            open = true;
            let var = literal.unsigned_abs() - 1;
            if var >= n as u64 {
                return Err(FormatError::LiteralOutOfRange { literal, n });
            }
            let bit = 1u64 << var;
            let positive = literal > 0;
            if present & bit != 0 && (sign & bit != 0) != positive {
                return Err(FormatError::ConflictingSigns {
                    index,
                    var: var as u32,
                });
            }
            present |= bit;
            if positive {
                sign |= bit;
            }
        }
    }
    if open {
        return Err(FormatError::UnterminatedClause {
            index: clauses.len(),
        });
    }
    if clauses.len() != m {
        return Err(FormatError::ClauseCountMismatch {
            expected: m,
            found: clauses.len(),
        });
    }
    Ok(Instance::new(n, clauses)?)
}

/// Renders an instance as DIMACS CNF, literals in descending variable order.
pub fn write_dimacs(instance: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", instance.n(), instance.m()).unwrap();
    for clause in instance.clauses() {
        let mut literals: Vec<(u32, bool)> = clause.literals().collect();
        literals.reverse();
        for (var, positive) in literals {
            let v = var as i64 + 1;
            write!(out, "{} ", if positive { v } else { -v }).unwrap();
        }
        writeln!(out, "0").unwrap();
    }
    out
}

/// Parses either supported format, telling them apart by the first
/// non-comment token.
pub fn read_instance(text: &str) -> Result<Instance, FormatError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c'))
        .unwrap_or("");
    if first.starts_with("p ") || first.starts_with("p\t") {
        read_dimacs(text)
    } else {
        read_text(text)
    }
}
