//! The forcing poset of pairs of disjoint non-members of `u`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;
use crate::ultrafilter::PointUltrafilter;

/// A condition `(p0, p1)`: disjoint, and neither coordinate in `u`.
///
/// `p0` collects points forced into the generic set, `p1` points forced out.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Condition {
    pub p0: IntervalSet,
    pub p1: IntervalSet,
}

impl Condition {
    pub fn new(p0: IntervalSet, p1: IntervalSet, u: &PointUltrafilter) -> Result<Self> {
        let c = Self { p0, p1 };
        c.validate(u)?;
        Ok(c)
    }

    /// The weakest condition `(∅, ∅)`.
    pub fn root() -> Self {
        Self {
            p0: IntervalSet::empty(),
            p1: IntervalSet::empty(),
        }
    }

    pub fn validate(&self, u: &PointUltrafilter) -> Result<()> {
        if !self.p0.is_disjoint(&self.p1) {
            return Err(Error::InvalidCondition(format!("{} and {} overlap", self.p0, self.p1)));
        }
        if u.contains(&self.p0) {
            return Err(Error::InvalidCondition(format!("p0 = {} is in u", self.p0)));
        }
        if u.contains(&self.p1) {
            return Err(Error::InvalidCondition(format!("p1 = {} is in u", self.p1)));
        }
        Ok(())
    }

    pub fn is_valid(&self, u: &PointUltrafilter) -> bool {
        self.validate(u).is_ok()
    }

    /// `p0 ∪ p1`.
    pub fn support(&self) -> IntervalSet {
        self.p0.union(&self.p1)
    }

    /// `(p1, p0)`; exchanges the roles of the generic set and its complement.
    pub fn swapped(&self) -> Self {
        Self {
            p0: self.p1.clone(),
            p1: self.p0.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("conditions serialize")
    }
}

/// `p ≤ q`: `p` is stronger than `q`, i.e. `q.p0 ⊆ p.p0` and `q.p1 ⊆ p.p1`.
pub fn leq(p: &Condition, q: &Condition) -> bool {
    q.p0.is_subset(&p.p0) && q.p1.is_subset(&p.p1)
}

/// Extends `p` so that its support covers `x`:
/// `q0 = p0 ∪ (-p1 ∩ x)`, `q1 = p1 ∪ (-q0 ∩ x)`.
pub fn star_extend(p: &Condition, x: &IntervalSet, u: &PointUltrafilter) -> Result<Condition> {
    if u.contains(x) {
        return Err(Error::Precondition(format!("star_extend needs x ∉ u, got {x}")));
    }
    let q0 = p.p0.union(&x.difference(&p.p1));
    let q1 = p.p1.union(&x.difference(&q0));
    Condition::new(q0, q1, u)
}

/// The sets a density argument derives from a condition and a pair `(e, f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedParts {
    /// `(p0 ∩ e) ∪ (p1 ∩ f)`: where `b = (g∩e) ∪ (f∖g)` is already decided to hold.
    pub p_star: IntervalSet,
    /// `-(p0 ∪ p1)`: the undecided region.
    pub a_p: IntervalSet,
    pub e_p: IntervalSet,
    pub f_p: IntervalSet,
}

pub fn derived_parts(p: &Condition, e: &IntervalSet, f: &IntervalSet) -> DerivedParts {
    let a_p = p.support().complement();
    DerivedParts {
        p_star: p_star(p, e, f),
        e_p: a_p.intersect(e),
        f_p: a_p.intersect(f),
        a_p,
    }
}

pub fn p_star(p: &Condition, e: &IntervalSet, f: &IntervalSet) -> IntervalSet {
    p.p0.intersect(e).union(&p.p1.intersect(f))
}
