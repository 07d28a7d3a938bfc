//! Value types shared by every solver: assignments, clauses, instances,
//! solution sets, run counters and verdicts.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Largest variable count a word-backed assignment can hold.
pub const MAX_VARS: u32 = 63;

/// Errors from constructing or combining the core value types.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("variable count {0} outside 1..={MAX_VARS}")]
    InvalidVarCount(u32),
    #[error("word {word:#b} has bits at or above position {n}")]
    WordOutOfRange { word: u64, n: u32 },
    #[error("clause has no present variable")]
    EmptyClause,
    #[error("sign mask {sign:#b} sets bits outside the present mask {present:#b}")]
    SignOutsidePresent { present: u64, sign: u64 },
    #[error("clause uses variables at or above {n}")]
    ClauseOutOfRange { n: u32 },
    #[error("invalid binary string {0:?}")]
    BadBinaryString(String),
}

/// Bit mask with the low `n` bits set; `n` must be in `1..=MAX_VARS`.
pub(crate) fn low_mask(n: u32) -> u64 {
    debug_assert!((1..=MAX_VARS).contains(&n));
    (1u64 << n) - 1
}

/// A total assignment of `n` Boolean variables packed into one word.
///
/// Bit `i` is the value of variable `x_i`, so the MSB-first rendering reads
/// `x_{n-1} … x_0` and the word equals the value of that binary string.
/// Bits at and above position `n` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    n: u32,
    word: u64,
}

impl Assignment {
    pub fn new(n: u32, word: u64) -> Result<Self, ModelError> {
        if n == 0 || n > MAX_VARS {
            return Err(ModelError::InvalidVarCount(n));
        }
        if word & !low_mask(n) != 0 {
            return Err(ModelError::WordOutOfRange { word, n });
        }
        Ok(Assignment { n, word })
    }

    /// Parses an MSB-first binary string such as `"101"`.
    pub fn parse_binary(text: &str) -> Result<Self, ModelError> {
        let n = text.len() as u32;
        if n == 0 || n > MAX_VARS || !text.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(ModelError::BadBinaryString(text.to_string()));
        }
        let word = u64::from_str_radix(text, 2).expect("validated binary digits");
        Ok(Assignment { n, word })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn word(self) -> u64 {
        self.word
    }

    /// Value of variable `x_i`.
    pub fn bit(self, i: u32) -> bool {
        assert!(i < self.n, "variable x{} out of range for n={}", i, self.n);
        self.word >> i & 1 == 1
    }

    /// Flips every bit below `n`; bits at and above `n` stay zero.
    pub fn complement(self) -> Self {
        Assignment {
            n: self.n,
            word: !self.word & low_mask(self.n),
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.word, width = self.n as usize)
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Assignment({})", self)
    }
}

/// The unique assignment that falsifies the full-width clause whose row word
/// is `row`: a full-width clause misses exactly the bitwise complement of its
/// own sign pattern.
pub fn falsifying_assignment(row: Assignment) -> Assignment {
    row.complement()
}

/// One CNF clause over `x_0..x_{n-1}` as a pair of bit masks.
///
/// `present` marks the variables that occur; where a variable is present,
/// `sign` bit 1 means a positive literal and 0 a negative one. Sign bits
/// outside the present mask are rejected so equal clauses compare equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TernaryClause {
    present: u64,
    sign: u64,
}

impl TernaryClause {
    pub fn new(present: u64, sign: u64) -> Result<Self, ModelError> {
        if present == 0 {
            return Err(ModelError::EmptyClause);
        }
        if sign & !present != 0 {
            return Err(ModelError::SignOutsidePresent { present, sign });
        }
        Ok(TernaryClause { present, sign })
    }

    /// Clause containing all `n` variables with sign pattern `row`.
    pub fn full_width(n: u32, row: u64) -> Result<Self, ModelError> {
        if n == 0 || n > MAX_VARS {
            return Err(ModelError::InvalidVarCount(n));
        }
        if row & !low_mask(n) != 0 {
            return Err(ModelError::WordOutOfRange { word: row, n });
        }
        Ok(TernaryClause {
            present: low_mask(n),
            sign: row,
        })
    }

    pub fn present(self) -> u64 {
        self.present
    }

    pub fn sign(self) -> u64 {
        self.sign
    }

    /// Number of literals.
    pub fn width(self) -> u32 {
        self.present.count_ones()
    }

    /// Highest variable index that occurs.
    pub fn max_var(self) -> u32 {
        63 - self.present.leading_zeros()
    }

    pub fn is_full_width(self, n: u32) -> bool {
        n >= 1 && n <= MAX_VARS && self.present == low_mask(n)
    }

    /// Literals as `(variable, positive)` pairs in ascending variable order.
    pub fn literals(self) -> impl Iterator<Item = (u32, bool)> {
        (0..64)
            .filter(move |i| self.present >> i & 1 == 1)
            .map(move |i| (i, self.sign >> i & 1 == 1))
    }
}

/// Whether every clause of an instance is full width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    /// Every clause contains all `n` variables; each clause is an n-bit row.
    Simple,
    /// At least one clause omits a variable.
    General,
}

pub(crate) fn compute_kind(n: u32, clauses: &[TernaryClause]) -> InstanceKind {
    if clauses.iter().all(|c| c.is_full_width(n)) {
        InstanceKind::Simple
    } else {
        InstanceKind::General
    }
}

/// A CNF problem: `n` variables and an ordered clause list.
///
/// Clause order is preserved exactly as given and duplicates are kept; the
/// algorithms are meant to face their input unsorted and undeduplicated.
/// An empty clause list is legal and classified [`InstanceKind::Simple`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: u32,
    clauses: Vec<TernaryClause>,
    kind: InstanceKind,
    /// Simple instances only: the distinct assignments falsified by some row,
    /// i.e. the complements of the distinct row words. Built once so that
    /// evaluation and completion queries cost O(1) per probe.
    blocked: Option<HashSet<u64>>,
}

impl Instance {
    pub fn new(n: u32, clauses: Vec<TernaryClause>) -> Result<Self, ModelError> {
        if n == 0 || n > MAX_VARS {
            return Err(ModelError::InvalidVarCount(n));
        }
        let mask = low_mask(n);
        if clauses.iter().any(|c| c.present() & !mask != 0) {
            return Err(ModelError::ClauseOutOfRange { n });
        }
        let kind = compute_kind(n, &clauses);
        let blocked = match kind {
            InstanceKind::Simple => Some(clauses.iter().map(|c| !c.sign() & mask).collect()),
            InstanceKind::General => None,
        };
        Ok(Instance {
            n,
            clauses,
            kind,
            blocked,
        })
    }

    /// Builds a Simple instance from full-width row words.
    pub fn from_rows(n: u32, rows: impl IntoIterator<Item = u64>) -> Result<Self, ModelError> {
        let clauses = rows
            .into_iter()
            .map(|row| TernaryClause::full_width(n, row))
            .collect::<Result<Vec<_>, _>>()?;
        Instance::new(n, clauses)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of clauses, duplicates included.
    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[TernaryClause] {
        &self.clauses
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn is_simple(&self) -> bool {
        self.kind == InstanceKind::Simple
    }

    /// Row words in clause order. Meaningful for Simple instances, where
    /// every clause's sign mask is its row.
    pub fn row_words(&self) -> impl Iterator<Item = u64> + '_ {
        debug_assert!(self.is_simple());
        self.clauses.iter().map(|c| c.sign())
    }

    /// Distinct falsified assignments of a Simple instance.
    pub fn blocked_words(&self) -> Option<&HashSet<u64>> {
        self.blocked.as_ref()
    }

    /// Number of distinct rows of a Simple instance.
    pub fn distinct_rows(&self) -> Option<usize> {
        self.blocked.as_ref().map(|b| b.len())
    }
}

/// A set of satisfying assignments, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    n: u32,
    members: std::collections::BTreeSet<u64>,
}

impl SolutionSet {
    pub fn new(n: u32, words: impl IntoIterator<Item = u64>) -> Result<Self, ModelError> {
        if n == 0 || n > MAX_VARS {
            return Err(ModelError::InvalidVarCount(n));
        }
        let mask = low_mask(n);
        let mut members = std::collections::BTreeSet::new();
        for word in words {
            if word & !mask != 0 {
                return Err(ModelError::WordOutOfRange { word, n });
            }
            members.insert(word);
        }
        Ok(SolutionSet { n, members })
    }

    pub fn empty(n: u32) -> Result<Self, ModelError> {
        SolutionSet::new(n, std::iter::empty())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, word: u64) -> bool {
        self.members.contains(&word)
    }

    /// Member words in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        let n = self.n;
        self.members
            .iter()
            .map(move |&word| Assignment { n, word })
    }
}

/// Work counters accumulated over one solver run. All zero at the start of a
/// run and only ever incremented.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Counters {
    /// Input rows consumed.
    pub rows_read: u64,
    /// Whole-instance evaluations. One evaluation per call no matter how
    /// many clauses the instance has.
    pub evaluations: u64,
    /// Removal events against the candidate table. One event may unlink a
    /// single candidate or a complement pair, depending on the solver.
    pub removals: u64,
    /// Completion-decision queries answered.
    pub oracle_calls: u64,
    /// Uniform draws taken by the probabilistic solver.
    pub random_draws: u64,
}

/// Where a satisfying witness came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    /// An input row evaluated satisfiable.
    Row,
    /// The smallest candidate left in the table after the input was exhausted.
    Residual,
    /// Built bit by bit from completion-decision queries.
    Oracle,
}

/// Evidence attached to an unsatisfiable verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnsatEvidence {
    /// Every board address was filled by a distinct row; the board lists the
    /// rows in address order.
    Board(Vec<u64>),
    /// Every candidate fell in a removed complement pair.
    TableEmptied,
    /// Every candidate in `[0, 2^n)` was drawn and falsified.
    CandidatesExhausted,
    /// The completion oracle rejected the all-free partial assignment.
    OracleDecision,
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Satisfiable, with a verified witness.
    Sat {
        witness: Assignment,
        source: Option<WitnessSource>,
    },
    /// Satisfiable; the solver certifies existence without naming a witness.
    SatExists,
    Unsat(UnsatEvidence),
    /// The draw budget ran out before an answer.
    Exhausted { budget: u64 },
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat { .. } | Verdict::SatExists)
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, Verdict::Unsat(_))
    }

    pub fn witness(&self) -> Option<Assignment> {
        match self {
            Verdict::Sat { witness, .. } => Some(*witness),
            _ => None,
        }
    }

    /// Status keyword used by reports: `sat`, `unsat` or `exhausted`.
    pub fn status_label(&self) -> &'static str {
        match self {
            Verdict::Sat { .. } | Verdict::SatExists => "sat",
            Verdict::Unsat(_) => "unsat",
            Verdict::Exhausted { .. } => "exhausted",
        }
    }
}

/// Verdict plus the counters of the run that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub counters: Counters,
    /// For the linked solver's residual answer: the input instance with the
    /// witness appended as one more row, making the witness a fixed point of
    /// the grown instance.
    pub augmented: Option<Instance>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: u32, word: u64) -> Assignment {
        Assignment::new(n, word).unwrap()
    }

    /// Independent falsification check: a full-width clause with sign
    /// pattern `row` holds under `y` unless every bit of `y` disagrees.
    fn clause_row_falsified_by(n: u32, row: u64, y: u64) -> bool {
        (0..n).all(|i| (y >> i) & 1 != (row >> i) & 1)
    }

    #[test]
    fn complement_flips_pair_rows() {
        assert_eq!(a(2, 0b01).complement(), a(2, 0b10));
    }

    #[test]
    fn complement_is_involution() {
        for n in 1..=10 {
            for word in 0..(1u64 << n) {
                let y = a(n, word);
                assert_eq!(y.complement().complement(), y);
            }
        }
    }

    #[test]
    fn complement_matches_arithmetic_flip_n6() {
        // For width 6 the complement of w is 63 - w.
        for word in 0..64 {
            assert_eq!(a(6, word).complement().word(), 63 - word);
        }
        assert_eq!(a(6, 0b011011).complement(), a(6, 0b100100));
    }

    #[test]
    fn complement_is_bijection() {
        for n in [1, 5, 10] {
            let mut seen = vec![false; 1 << n];
            for word in 0..(1u64 << n) {
                let c = a(n, word).complement().word() as usize;
                assert!(!seen[c]);
                seen[c] = true;
            }
        }
    }

    #[test]
    fn falsifying_assignment_examples() {
        // Brute force: the complement is the only falsifier of a row.
        for (n, row) in [(3u32, 0b101u64), (1, 0), (6, 0)] {
            let falsifiers: Vec<u64> = (0..(1u64 << n))
                .filter(|&y| clause_row_falsified_by(n, row, y))
                .collect();
            assert_eq!(falsifiers, vec![falsifying_assignment(a(n, row)).word()]);
        }
        assert_eq!(falsifying_assignment(a(3, 0b101)), a(3, 0b010));
        assert_eq!(falsifying_assignment(a(1, 0)), a(1, 1));
        assert_eq!(falsifying_assignment(a(6, 0)), a(6, 0b111111));
    }

    #[test]
    fn row_falsified_iff_complement() {
        for n in 1..=10u32 {
            for row in [0, 1, (1 << n) - 1, 0b101 & ((1 << n) - 1)] {
                let fals = a(n, row).complement().word();
                for y in 0..(1u64 << n) {
                    assert_eq!(clause_row_falsified_by(n, row, y), y == fals);
                }
            }
        }
    }

    #[test]
    fn assignment_bounds() {
        assert!(Assignment::new(0, 0).is_err());
        assert!(Assignment::new(64, 0).is_err());
        assert!(Assignment::new(3, 8).is_err());
        assert!(Assignment::new(63, (1 << 63) - 1).is_ok());
    }

    #[test]
    fn assignment_text_round_trip() {
        let y = Assignment::parse_binary("010").unwrap();
        assert_eq!(y.word(), 2);
        assert_eq!(y.to_string(), "010");
        assert!(Assignment::parse_binary("").is_err());
        assert!(Assignment::parse_binary("012").is_err());
    }

    #[test]
    fn clause_invariants() {
        assert_eq!(TernaryClause::new(0, 0), Err(ModelError::EmptyClause));
        assert!(matches!(
            TernaryClause::new(0b01, 0b10),
            Err(ModelError::SignOutsidePresent { .. })
        ));
        let c = TernaryClause::new(0b101, 0b100).unwrap();
        assert_eq!(c.width(), 2);
        assert_eq!(c.max_var(), 2);
        assert_eq!(c.literals().collect::<Vec<_>>(), vec![(0, false), (2, true)]);
    }

    #[test]
    fn instance_checks_clause_range() {
        let c = TernaryClause::new(0b1000, 0).unwrap();
        assert!(matches!(
            Instance::new(3, vec![c]),
            Err(ModelError::ClauseOutOfRange { n: 3 })
        ));
    }

    #[test]
    fn instance_keeps_duplicates_and_order() {
        let inst = Instance::from_rows(3, [5, 4, 5]).unwrap();
        assert_eq!(inst.m(), 3);
        assert_eq!(inst.row_words().collect::<Vec<_>>(), vec![5, 4, 5]);
        assert_eq!(inst.distinct_rows(), Some(2));
    }

    #[test]
    fn blocked_words_are_row_complements() {
        let inst = Instance::from_rows(3, [0b101, 0b100]).unwrap();
        let blocked = inst.blocked_words().unwrap();
        assert_eq!(blocked.len(), 2);
        assert!(blocked.contains(&0b010) && blocked.contains(&0b011));
    }

    #[test]
    fn solution_set_dedups_and_sorts() {
        let s = SolutionSet::new(3, [5, 1, 5, 0]).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1, 5]);
        assert!(SolutionSet::new(2, [4]).is_err());
    }
}
