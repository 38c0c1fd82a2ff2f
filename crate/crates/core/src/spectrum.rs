//! Divisor-indexed counts of automorphisms by fixed-point cardinality.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::modarith::divisors;

/// `d -> number of automorphisms fixing exactly d elements`, for every divisor
/// `d` of the group order. Divisors with no automorphism are present with 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    group: String,
    order: u64,
    entries: BTreeMap<u64, u64>,
}

impl Spectrum {
    /// An all-zero spectrum for a group of the given order.
    pub fn empty(group: impl Into<String>, order: u64) -> Self {
        Spectrum {
            group: group.into(),
            order,
            entries: divisors(order).into_iter().map(|d| (d, 0)).collect(),
        }
    }

    /// Counts one automorphism with `fixed` fixed points.
    ///
    /// Panics if `fixed` does not divide the group order, which would mean the
    /// fixed set is not a subgroup.
    pub fn record(&mut self, fixed: u64) {
        match self.entries.get_mut(&fixed) {
            Some(c) => *c += 1,
            None => panic!(
                "fixed set of size {fixed} is not a divisor of |G| = {}",
                self.order
            ),
        }
    }

    /// Adds the counts of `other` into `self`. Both must describe the same order.
    pub fn merge(&mut self, other: &Spectrum) {
        assert_eq!(
            self.order, other.order,
            "merging spectra of different groups"
        );
        for (d, c) in &other.entries {
            *self.entries.get_mut(d).expect("same divisor set") += c;
        }
    }

    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Count at `d`, or `None` if `d` does not divide the order.
    pub fn get(&self, d: u64) -> Option<u64> {
        self.entries.get(&d).copied()
    }

    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    /// Iterates `(d, count)` with `d` ascending.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&d, &c)| (d, c))
    }

    /// Sum of all counts, i.e. the number of automorphisms recorded.
    pub fn mass(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Equality of the counts, ignoring the group label.
    pub fn same_counts(&self, other: &Spectrum) -> bool {
        self.order == other.order && self.entries == other.entries
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}: {c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_entries_are_materialized() {
        let s = Spectrum::empty("Z_2+Z_4", 8);
        assert_eq!(s.to_string(), "{1: 0, 2: 0, 4: 0, 8: 0}");
        assert_eq!(s.mass(), 0);
    }

    #[test]
    fn merge_is_additive() {
        let mut a = Spectrum::empty("g", 6);
        a.record(1);
        a.record(6);
        let mut b = Spectrum::empty("g", 6);
        b.record(2);
        b.record(6);
        let mut ab = a.clone();
        ab.merge(&b);
        let mut ba = b.clone();
        ba.merge(&a);
        assert_eq!(ab, ba);
        assert_eq!(ab.get(6), Some(2));
        assert_eq!(ab.mass(), 4);
    }

    #[test]
    #[should_panic(expected = "not a divisor")]
    fn non_divisor_panics() {
        Spectrum::empty("g", 8).record(3);
    }
}
