//! Integer intervals with infinite endpoints.
//!
//! Arithmetic is exact. An infinite endpoint absorbs any finite one (−∞ + x = −∞
//! on lower bounds, +∞ + x = +∞ on upper bounds). A finite sum that overflows
//! `i64` widens to the matching infinity, which can only lose precision.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Bound {
    pub fn finite(self) -> Option<i64> {
        match self {
            Bound::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Negation, widening to `overflow` when `-v` does not fit.
    fn neg(self, overflow: Bound) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(v) => v.checked_neg().map_or(overflow, Bound::Finite),
        }
    }

    /// Sum of two lower bounds.
    fn add_lower(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => {
                a.checked_add(b).map_or(Bound::NegInf, Bound::Finite)
            }
            _ => Bound::NegInf,
        }
    }

    /// Sum of two upper bounds.
    fn add_upper(self, other: Bound) -> Bound {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => {
                a.checked_add(b).map_or(Bound::PosInf, Bound::Finite)
            }
            _ => Bound::PosInf,
        }
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        use Bound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "inf"),
            Bound::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => s.serialize_i64(*v),
            Bound::NegInf => s.serialize_str("-inf"),
            Bound::PosInf => s.serialize_str("inf"),
        }
    }
}

/// A nonempty set of consecutive integers `lo..=hi`, either end possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
}

impl Interval {
    pub const TOP: Interval = Interval {
        lo: Bound::NegInf,
        hi: Bound::PosInf,
    };

    /// Returns `None` if the bounds describe an empty set.
    pub fn new(lo: Bound, hi: Bound) -> Option<Interval> {
        (lo != Bound::PosInf && hi != Bound::NegInf && lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn exact(v: i64) -> Interval {
        Interval {
            lo: Bound::Finite(v),
            hi: Bound::Finite(v),
        }
    }

    pub fn range(lo: i64, hi: i64) -> Option<Interval> {
        Interval::new(Bound::Finite(lo), Bound::Finite(hi))
    }

    pub fn at_least(v: i64) -> Interval {
        Interval {
            lo: Bound::Finite(v),
            hi: Bound::PosInf,
        }
    }

    pub fn at_most(v: i64) -> Interval {
        Interval {
            lo: Bound::NegInf,
            hi: Bound::Finite(v),
        }
    }

    pub fn lo(&self) -> Bound {
        self.lo
    }

    pub fn hi(&self) -> Bound {
        self.hi
    }

    /// The value when the interval is a single integer.
    pub fn as_exact(&self) -> Option<i64> {
        match (self.lo, self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= Bound::Finite(v) && Bound::Finite(v) <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Intersection; `None` when empty.
    pub fn meet(&self, other: &Interval) -> Option<Interval> {
        Interval::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    /// Smallest interval containing both.
    pub fn join(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.add_lower(other.lo),
            hi: self.hi.add_upper(other.hi),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(Bound::NegInf),
            hi: self.lo.neg(Bound::PosInf),
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}
