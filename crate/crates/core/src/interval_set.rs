//! Canonical finite unions of half-open dyadic intervals in `[0, 1)`.
//!
//! Each [`IntervalSet`] stands for one element of the ground algebra: the set
//! of natural numbers `n` whose encoded position [`encode`]`(n)` lies in the
//! union. Intervals are kept sorted, nonempty and pairwise non-adjacent, so two
//! sets denote the same subset of ω exactly when their representations agree.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dyadic::{encode, encode_nat, parse_dyadic, Dyadic};
use crate::error::ParseError;

/// The half-open interval `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        Self { lo, hi }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Arc<[Interval]>,
}

impl Default for IntervalSet {
    fn default() -> Self {
        Self::empty()
    }
}

/// Appends `[lo, hi)` to a sorted run, merging with the last interval when
/// they overlap or touch.
fn push_merged(out: &mut Vec<Interval>, lo: Dyadic, hi: Dyadic) {
    if lo >= hi {
        return;
    }
    if let Some(last) = out.last_mut() {
        if lo <= last.hi {
            if hi > last.hi {
                last.hi = hi;
            }
            return;
        }
    }
    out.push(Interval { lo, hi });
}

impl IntervalSet {
    pub fn empty() -> Self {
        Self {
            intervals: Arc::from(Vec::new()),
        }
    }

    pub fn full() -> Self {
        Self::from_sorted(vec![Interval::new(Dyadic::zero(), Dyadic::one())])
    }

    /// `[lo, hi)`; empty when `lo >= hi`.
    pub fn interval(lo: Dyadic, hi: Dyadic) -> Self {
        Self::from_intervals([(lo, hi)])
    }

    /// Canonicalizes an arbitrary list of `[lo, hi)` pairs, dropping empty ones.
    pub fn from_intervals(raw: impl IntoIterator<Item = (Dyadic, Dyadic)>) -> Self {
        let mut pairs: Vec<(Dyadic, Dyadic)> = raw.into_iter().filter(|(l, h)| l < h).collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = Vec::with_capacity(pairs.len());
        for (lo, hi) in pairs {
            push_merged(&mut out, lo, hi);
        }
        Self::from_sorted(out)
    }

    fn from_sorted(intervals: Vec<Interval>) -> Self {
        Self {
            intervals: Arc::from(intervals),
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        matches!(&*self.intervals, [only] if only.lo.is_zero() && only.hi.is_one())
    }

    /// Infimum of the real union, if nonempty.
    pub fn infimum(&self) -> Option<&Dyadic> {
        self.intervals.first().map(|i| &i.lo)
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = Dyadic::zero();
        for iv in self.intervals.iter() {
            if cursor < iv.lo {
                out.push(Interval::new(cursor, iv.lo.clone()));
            }
            cursor = iv.hi.clone();
        }
        if !cursor.is_one() {
            out.push(Interval::new(cursor, Dyadic::one()));
        }
        Self::from_sorted(out)
    }

    pub fn union(&self, other: &Self) -> Self {
        if other.is_empty() {
            return self.clone();
        }
        if self.is_empty() {
            return other.clone();
        }
        let (a, b) = (&self.intervals, &other.intervals);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].lo <= b[j].lo);
            let next = if take_a {
                i += 1;
                &a[i - 1]
            } else {
                j += 1;
                &b[j - 1]
            };
            push_merged(&mut out, next.lo.clone(), next.hi.clone());
        }
        Self::from_sorted(out)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (a, b) = (&self.intervals, &other.intervals);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let lo = std::cmp::max(&a[i].lo, &b[j].lo);
            let hi = std::cmp::min(&a[i].hi, &b[j].hi);
            if lo < hi {
                push_merged(&mut out, lo.clone(), hi.clone());
            }
            if a[i].hi <= b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_sorted(out)
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &Self) -> Self {
        if other.is_empty() || self.is_empty() {
            return self.clone();
        }
        self.intersect(&other.complement())
    }

    pub fn symdiff(&self, other: &Self) -> Self {
        self.difference(other).union(&other.difference(self))
    }

    /// Index of the interval whose `lo` is the greatest one not above `d`.
    fn locate(&self, d: &Dyadic) -> Option<usize> {
        let idx = self.intervals.partition_point(|iv| iv.lo <= *d);
        idx.checked_sub(1)
    }

    /// The interval containing `d`, if any.
    pub fn component_of(&self, d: &Dyadic) -> Option<&Interval> {
        self.locate(d)
            .map(|k| &self.intervals[k])
            .filter(|iv| *d < iv.hi)
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        self.locate(d).is_some_and(|k| *d < self.intervals[k].hi)
    }

    /// Whether the `n`-th point of ω belongs to the set.
    pub fn contains_point(&self, n: u64) -> bool {
        self.contains(&encode(n))
    }

    pub fn contains_nat(&self, n: &BigUint) -> bool {
        self.contains(&encode_nat(n))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        // Canonical intervals of `other` are non-adjacent, so each interval of
        // `self` must fit inside a single one of them.
        self.intervals.iter().all(|iv| {
            other
                .locate(&iv.lo)
                .is_some_and(|k| iv.hi <= other.intervals[k].hi)
        })
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if std::cmp::max(&a[i].lo, &b[j].lo) < std::cmp::min(&a[i].hi, &b[j].hi) {
                return false;
            }
            if a[i].hi <= b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        true
    }

    /// Union of a list of sets.
    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a IntervalSet>) -> Self {
        sets.into_iter()
            .fold(Self::empty(), |acc, s| acc.union(s))
    }

    /// Some natural number whose point lies in the set, choosing the one with
    /// the shortest binary encoding.
    pub fn some_point(&self) -> Option<BigUint> {
        self.intervals
            .iter()
            .filter_map(|iv| Dyadic::simplest_in(&iv.lo, &iv.hi))
            .min_by_key(|d| d.exponent())
            .and_then(|d| crate::dyadic::decode(&d))
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str("u")?;
            }
            write!(f, "[{},{})", iv.lo, iv.hi)?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IntervalSet {
    type Err = ParseError;

    /// Accepts `{}` or `[l,r)u[l,r)...`; endpoints are `num/2^k` or bare `0`/`1`.
    /// Intervals may be unsorted or overlapping; the result is canonical.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text == "{}" {
            return Ok(Self::empty());
        }
        if text.is_empty() {
            return Err(ParseError::new(0, "empty input; use {} for the empty set"));
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut raw = Vec::new();
        loop {
            if bytes.get(pos) != Some(&b'[') {
                return Err(ParseError::new(pos, "expected '['"));
            }
            let start = pos;
            let comma = text[pos..]
                .find(',')
                .map(|k| pos + k)
                .ok_or_else(|| ParseError::new(pos, "missing ','"))?;
            let close = text[comma..]
                .find(')')
                .map(|k| comma + k)
                .ok_or_else(|| ParseError::new(comma, "missing ')'"))?;
            let lo = parse_dyadic(&text[pos + 1..comma], pos + 1)?;
            let hi = parse_dyadic(&text[comma + 1..close], comma + 1)?;
            if lo >= hi {
                return Err(ParseError::new(start, "interval must satisfy lo < hi"));
            }
            raw.push((lo, hi));
            pos = close + 1;
            match bytes.get(pos) {
                None => break,
                Some(b'u') => pos += 1,
                Some(_) => return Err(ParseError::new(pos, "expected 'u' or end of input")),
            }
        }
        Ok(Self::from_intervals(raw))
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout the tests: parses a literal or panics.
pub fn set(text: &str) -> IntervalSet {
    text.parse()
        .unwrap_or_else(|e| panic!("bad interval set literal {text:?}: {e}"))
}
