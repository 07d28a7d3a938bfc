//! The candidate table: a doubly-linked chain threaded through an array over
//! all `2^n` candidate words, supporting constant-time removal and ascending
//! traversal of whatever remains.
//!
//! Membership is tracked by explicit flags rather than by a `next == NONE`
//! probe: the legitimate last element of the chain also has no successor, so
//! the link fields alone cannot distinguish "removed" from "endpoint".

use std::fmt::Write as _;

use thiserror::Error;

/// Default ceiling on `n` for anything that allocates `2^n` entries.
pub const DEFAULT_TABLE_CAP: u32 = 26;

/// Hard ceiling: indices are stored as `u32`.
const MAX_CAP: u32 = 31;

/// Absent-link sentinel, kept internal; the public API speaks `Option`.
const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("n={n} exceeds the table cap {cap}")]
    CapExceeded { n: u32, cap: u32 },
    #[error("n must be at least 1")]
    ZeroVars,
}

/// Guard shared by everything that allocates `2^n` entries.
pub(crate) fn check_cap(n: u32, cap: u32) -> Result<(), TableError> {
    if n == 0 {
        return Err(TableError::ZeroVars);
    }
    if n > cap.min(MAX_CAP) {
        return Err(TableError::CapExceeded {
            n,
            cap: cap.min(MAX_CAP),
        });
    }
    Ok(())
}

/// Doubly-linked chain over the candidates `0..2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateTable {
    n: u32,
    prev: Vec<u32>,
    next: Vec<u32>,
    member: Vec<u64>,
    first: u32,
    last: u32,
    removed: u64,
    link_writes: u64,
}

impl CandidateTable {
    /// Full chain `0 → 1 → … → 2^n - 1` under the default cap.
    pub fn new(n: u32) -> Result<Self, TableError> {
        CandidateTable::with_cap(n, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(n: u32, cap: u32) -> Result<Self, TableError> {
        check_cap(n, cap)?;
        let size = 1usize << n;
        let mut prev = Vec::with_capacity(size);
        let mut next = Vec::with_capacity(size);
        for k in 0..size as u32 {
            prev.push(if k == 0 { NONE } else { k - 1 });
            next.push(if k as usize == size - 1 { NONE } else { k + 1 });
        }
        Ok(CandidateTable {
            n,
            prev,
            next,
            member: vec![u64::MAX; size.div_ceil(64)],
            first: 0,
            last: size as u32 - 1,
            removed: 0,
            link_writes: 0,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Candidates removed so far.
    pub fn removed_count(&self) -> u64 {
        self.removed
    }

    /// Candidates still in the chain.
    pub fn remaining(&self) -> u64 {
        (1u64 << self.n) - self.removed
    }

    pub fn contains(&self, k: u64) -> bool {
        assert!(k < 1u64 << self.n, "candidate {} out of range", k);
        self.member[(k / 64) as usize] >> (k % 64) & 1 == 1
    }

    pub fn first_remaining(&self) -> Option<u64> {
        (self.first != NONE).then_some(self.first as u64)
    }

    pub fn last_remaining(&self) -> Option<u64> {
        (self.last != NONE).then_some(self.last as u64)
    }

    /// Links of a present candidate as `(previous, next)`.
    pub fn links(&self, k: u64) -> (Option<u64>, Option<u64>) {
        assert!(k < 1u64 << self.n);
        let opt = |x: u32| (x != NONE).then_some(x as u64);
        (opt(self.prev[k as usize]), opt(self.next[k as usize]))
    }

    /// Unlinks candidate `k` in a constant number of link writes.
    ///
    /// Panics if `k` was already removed; callers check [`contains`] first.
    ///
    /// [`contains`]: CandidateTable::contains
    pub fn remove(&mut self, k: u64) {
        assert!(self.contains(k), "candidate {} already removed", k);
        let k = k as usize;
        let (p, s) = (self.prev[k], self.next[k]);
        if p != NONE {
            self.next[p as usize] = s;
        } else {
            self.first = s;
        }
        if s != NONE {
            self.prev[s as usize] = p;
        } else {
            self.last = p;
        }
        self.prev[k] = NONE;
        self.next[k] = NONE;
        self.link_writes += 4;
        self.member[k / 64] &= !(1 << (k % 64));
        self.removed += 1;
    }

    /// Total link-field writes performed by removals, for cost audits.
    pub fn link_writes(&self) -> u64 {
        self.link_writes
    }

    /// Remaining candidates in ascending order, walked along the chain.
    pub fn iter(&self) -> TableIter<'_> {
        TableIter {
            table: self,
            cursor: self.first,
        }
    }

    /// Renders the whole table in two-column link form, candidates whose
    /// links were cleared showing `-1`:
    ///
    /// ```text
    /// first=0; last=7
    /// i previous next
    /// 0 -1 1
    /// ...
    /// ```
    pub fn dump(&self) -> String {
        let show = |x: u32| if x == NONE { -1 } else { x as i64 };
        let mut out = String::new();
        writeln!(out, "first={}; last={}", show(self.first), show(self.last)).unwrap();
        writeln!(out, "i previous next").unwrap();
        for k in 0..(1usize << self.n) {
            writeln!(out, "{} {} {}", k, show(self.prev[k]), show(self.next[k])).unwrap();
        }
        out
    }
}

pub struct TableIter<'a> {
    table: &'a CandidateTable,
    cursor: u32,
}

impl Iterator for TableIter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.cursor == NONE {
            return None;
        }
        let k = self.cursor;
        self.cursor = self.table.next[k as usize];
        Some(k as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fresh_table_matches_the_consecutive_chain() {
        let t = CandidateTable::new(3).unwrap();
        assert_eq!(t.first_remaining(), Some(0));
        assert_eq!(t.last_remaining(), Some(7));
        assert_eq!(t.removed_count(), 0);
        assert_eq!(
            t.dump(),
            "first=0; last=7\n\
             i previous next\n\
             0 -1 1\n1 0 2\n2 1 3\n3 2 4\n4 3 5\n5 4 6\n6 5 7\n7 6 -1\n"
        );
    }

    #[test]
    fn two_candidate_chain() {
        let t = CandidateTable::new(1).unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(t.links(0), (None, Some(1)));
        assert_eq!(t.links(1), (Some(0), None));
    }

    #[test]
    fn traversal_of_fresh_table_is_ascending() {
        let t = CandidateTable::new(4).unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn removing_interior_pair_relinks_around_it() {
        let mut t = CandidateTable::new(3).unwrap();
        t.remove(2);
        t.remove(3);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![0, 1, 4, 5, 6, 7]);
        assert_eq!(t.first_remaining(), Some(0));
        assert_eq!(t.last_remaining(), Some(7));
        assert!(!t.contains(2));
        assert!(t.contains(4));
        assert_eq!(t.links(1), (Some(0), Some(4)));
        assert_eq!(t.links(4), (Some(1), Some(5)));
        assert_eq!(t.removed_count(), 2);
        assert_eq!(
            t.dump(),
            "first=0; last=7\n\
             i previous next\n\
             0 -1 1\n1 0 4\n2 -1 -1\n3 -1 -1\n4 1 5\n5 4 6\n6 5 7\n7 6 -1\n"
        );
    }

    #[test]
    fn removing_an_endpoint_moves_the_cursor() {
        let mut t = CandidateTable::new(2).unwrap();
        t.remove(0);
        assert_eq!(t.first_remaining(), Some(1));
        t.remove(3);
        assert_eq!(t.last_remaining(), Some(2));
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn emptying_the_table() {
        let mut t = CandidateTable::new(3).unwrap();
        for k in 0..8 {
            t.remove(k);
        }
        assert_eq!(t.removed_count(), 8);
        assert_eq!(t.first_remaining(), None);
        assert_eq!(t.last_remaining(), None);
        assert_eq!(t.iter().count(), 0);
    }

    #[test]
    #[should_panic(expected = "already removed")]
    fn double_removal_panics() {
        let mut t = CandidateTable::new(2).unwrap();
        t.remove(1);
        t.remove(1);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            CandidateTable::with_cap(5, 4),
            Err(TableError::CapExceeded { n: 5, cap: 4 })
        );
        assert_eq!(
            CandidateTable::new(27),
            Err(TableError::CapExceeded { n: 27, cap: 26 })
        );
        assert_eq!(CandidateTable::with_cap(1, 0), Err(TableError::CapExceeded { n: 1, cap: 0 }));
        assert_eq!(CandidateTable::new(0), Err(TableError::ZeroVars));
    }

    #[test]
    fn traversal_equals_sorted_complement_of_any_removal_sequence() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=12u32);
            let size = 1u64 << n;
            let mut order: Vec<u64> = (0..size).collect();
            order.shuffle(&mut rng);
            let count = rng.gen_range(0..=size) as usize;
            let removed = &order[..count];

            let mut t = CandidateTable::new(n).unwrap();
            for &k in removed {
                assert!(t.contains(k));
                t.remove(k);
            }

            let mut expected: Vec<u64> = (0..size).filter(|k| !removed.contains(k)).collect();
            expected.sort_unstable();
            assert_eq!(t.iter().collect::<Vec<_>>(), expected);
            assert_eq!(t.removed_count() + t.remaining(), size);
            assert_eq!(t.first_remaining(), expected.first().copied());
            assert_eq!(t.last_remaining(), expected.last().copied());
            // O(1) removal: a bounded number of link writes per event.
            assert!(t.link_writes() <= 8 * count as u64);
        }
    }
}
