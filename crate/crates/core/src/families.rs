//! Ideal-independence and freeness predicates, the two designated maximal
//! families, and the oracles that witness their maximality.

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval_set::IntervalSet;

/// No member lies below the union of the others.
pub fn is_ideal_independent(family: &[IntervalSet]) -> bool {
    (0..family.len()).all(|k| {
        let others = IntervalSet::union_all(
            family
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, s)| s),
        );
        !family[k].is_subset(&others)
    })
}

/// A violated product of a finite sequence: `(⋂ positive) ∩ (⋂ -negative) = ∅`
/// with every positive index below every negative one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

/// `(⋂ seq[positive]) ∩ (⋂ -seq[negative])`, with empty products equal to `[0,1)`.
pub fn product(seq: &[IntervalSet], positive: &[usize], negative: &[usize]) -> IntervalSet {
    let pos = positive
        .iter()
        .fold(IntervalSet::full(), |acc, &i| acc.intersect(&seq[i]));
    negative
        .iter()
        .fold(pos, |acc, &j| acc.difference(&seq[j]))
}

/// Finds an empty `F < G` product, reduced greedily to a minimal one.
///
/// Removing constraints can only enlarge a product, so it suffices to test the
/// `len + 1` full splits `F = [0, s)`, `G = [s, len)`.
pub fn freeness_violation(seq: &[IntervalSet]) -> Option<Violation> {
    let split = (0..=seq.len()).find(|&s| {
        let positive: Vec<usize> = (0..s).collect();
        let negative: Vec<usize> = (s..seq.len()).collect();
        product(seq, &positive, &negative).is_empty()
    })?;
    let mut positive: Vec<usize> = (0..split).collect();
    let mut negative: Vec<usize> = (split..seq.len()).collect();
    let mut k = 0;
    while k < positive.len() {
        let mut trial = positive.clone();
        trial.remove(k);
        if product(seq, &trial, &negative).is_empty() {
            positive = trial;
        } else {
            k += 1;
        }
    }
    let mut k = 0;
    while k < negative.len() {
        let mut trial = negative.clone();
        trial.remove(k);
        if product(seq, &positive, &trial).is_empty() {
            negative = trial;
        } else {
            k += 1;
        }
    }
    Some(Violation { positive, negative })
}

pub fn is_free_sequence(seq: &[IntervalSet]) -> bool {
    freeness_violation(seq).is_none()
}

/// Outcome of the ideal maximality dichotomy for an element `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum IdealOracleAnswer {
    /// `a ⊆ x_{w_0} ∪ … ∪ x_{w_n}`.
    Cover { witnesses: Vec<usize> },
    /// `x_head ⊆ a ∪ x_{rest_0} ∪ …`, with `head` not among `rest`.
    Absorb { head: usize, rest: Vec<usize> },
}

/// Outcome of the free-sequence trichotomy for an element `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FreeOracleAnswer {
    /// `a ⊆ -c_i`.
    Avoid { i: usize },
    /// `c_i ∖ c_j ⊆ a`, `i < j`.
    Between { i: usize, j: usize },
    /// `-c_0 ⊆ a`.
    CoversTop,
}

/// An infinite indexed family of pieces, together with its own (possibly
/// partial) maximality oracle.
pub trait IdealFamily: Send + Sync {
    fn piece(&self, n: usize) -> IntervalSet;

    /// Classifies `a`; `None` when the family cannot decide.
    fn classify(&self, a: &IntervalSet) -> Option<IdealOracleAnswer>;

    fn name(&self) -> &str {
        "custom"
    }
}

/// A decreasing infinite sequence `c_0 ⊇ c_1 ⊇ …` with its trichotomy oracle.
pub trait FreeSeq: Send + Sync {
    fn term(&self, i: usize) -> IntervalSet;

    fn classify(&self, a: &IntervalSet) -> Option<FreeOracleAnswer>;

    fn name(&self) -> &str {
        "custom"
    }
}

fn pow2_inverse(k: usize) -> Dyadic {
    Dyadic::new(1, k as u32)
}

/// The dyadic annuli `X_n = [2^-(n+1), 2^-n)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Annuli;

impl IdealFamily for Annuli {
    fn piece(&self, n: usize) -> IntervalSet {
        IntervalSet::interval(pow2_inverse(n + 1), pow2_inverse(n))
    }

    fn classify(&self, a: &IntervalSet) -> Option<IdealOracleAnswer> {
        match a.infimum() {
            None => Some(IdealOracleAnswer::Cover { witnesses: vec![] }),
            Some(inf) if !inf.is_zero() => {
                // pieces meeting a all have index at most inf's exponent
                let last = inf.exponent() as usize;
                let witnesses = (0..=last)
                    .filter(|&n| !self.piece(n).is_disjoint(a))
                    .collect();
                Some(IdealOracleAnswer::Cover { witnesses })
            }
            Some(_) => {
                let head = (0..)
                    .find(|&k| self.piece(k).is_subset(a))
                    .expect("a contains some [0, δ), which holds an annulus");
                Some(IdealOracleAnswer::Absorb { head, rest: vec![] })
            }
        }
    }

    fn name(&self) -> &str {
        "annuli"
    }
}

/// The shrinking initial intervals `c_i = [0, 2^-(i+1))`.
#[derive(Clone, Copy, Debug, Default)]
pub struct InitialSegments;

impl FreeSeq for InitialSegments {
    fn term(&self, i: usize) -> IntervalSet {
        IntervalSet::interval(Dyadic::zero(), pow2_inverse(i + 1))
    }

    fn classify(&self, a: &IntervalSet) -> Option<FreeOracleAnswer> {
        match a.infimum() {
            None => Some(FreeOracleAnswer::Avoid { i: 0 }),
            Some(inf) if !inf.is_zero() => {
                let i = (0..)
                    .find(|&i| pow2_inverse(i + 1) <= *inf)
                    .expect("some term ends below a positive infimum");
                Some(FreeOracleAnswer::Avoid { i })
            }
            Some(_) => {
                let i = (0..)
                    .find(|&i| self.term(i).difference(&self.term(i + 1)).is_subset(a))
                    .expect("a contains some [0, δ)");
                Some(FreeOracleAnswer::Between { i, j: i + 1 })
            }
        }
    }

    fn name(&self) -> &str {
        "initial-segments"
    }
}

fn describe(answer: &impl std::fmt::Debug, a: &IntervalSet) -> String {
    format!("{answer:?} for {a}")
}

/// Checks the inclusion an ideal answer claims.
pub fn check_ideal_answer(
    answer: &IdealOracleAnswer,
    a: &IntervalSet,
    family: &dyn IdealFamily,
) -> bool {
    let union_of = |idx: &[usize]| IntervalSet::union_all(idx.iter().map(|&n| family.piece(n)).collect::<Vec<_>>().iter());
    match answer {
        IdealOracleAnswer::Cover { witnesses } => a.is_subset(&union_of(witnesses)),
        IdealOracleAnswer::Absorb { head, rest } => {
            !rest.contains(head) && family.piece(*head).is_subset(&a.union(&union_of(rest)))
        }
    }
}

/// Checks the relation a free-sequence answer claims.
pub fn check_free_answer(answer: &FreeOracleAnswer, a: &IntervalSet, seq: &dyn FreeSeq) -> bool {
    match *answer {
        FreeOracleAnswer::Avoid { i } => a.is_disjoint(&seq.term(i)),
        FreeOracleAnswer::Between { i, j } => {
            i < j && seq.term(i).difference(&seq.term(j)).is_subset(a)
        }
        FreeOracleAnswer::CoversTop => seq.term(0).complement().is_subset(a),
    }
}

/// Queries the family and verifies the answer before handing it out.
pub fn ideal_oracle(a: &IntervalSet, family: &dyn IdealFamily) -> Result<IdealOracleAnswer> {
    let answer = family
        .classify(a)
        .ok_or_else(|| Error::OracleUnknown(format!("{} family on {a}", family.name())))?;
    if !check_ideal_answer(&answer, a, family) {
        return Err(Error::OracleUnsound(describe(&answer, a)));
    }
    Ok(answer)
}

pub fn free_oracle(a: &IntervalSet, seq: &dyn FreeSeq) -> Result<FreeOracleAnswer> {
    let answer = seq
        .classify(a)
        .ok_or_else(|| Error::OracleUnknown(format!("{} sequence on {a}", seq.name())))?;
    if !check_free_answer(&answer, a, seq) {
        return Err(Error::OracleUnsound(describe(&answer, a)));
    }
    Ok(answer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_set::set;

    #[test]
    fn ideal_independence_examples() {
        assert!(is_ideal_independent(&[set("[0,1/2)"), set("[1/2,1)")]));
        assert!(!is_ideal_independent(&[set("[0,1/2)"), set("[0,1)")]));
        assert!(!is_ideal_independent(&[set("[0,1/2)"), set("[1/4,3/4)"), set("[1/2,1)")]));
        assert!(!is_ideal_independent(&[IntervalSet::empty()]));
        assert!(is_ideal_independent(&[]));
    }

    #[test]
    fn freeness_examples() {
        assert!(is_free_sequence(&[set("[0,1/2)"), set("[0,1/4)")]));
        assert!(!is_free_sequence(&[set("[0,1/4)"), set("[0,1/2)")]));
        assert!(is_free_sequence(&[]));
        assert_eq!(
            freeness_violation(&[set("[0,1/4)"), set("[0,1/2)")]),
            Some(Violation { positive: vec![0], negative: vec![1] })
        );
        // the top element cannot be negated
        assert_eq!(
            freeness_violation(&[IntervalSet::full()]),
            Some(Violation { positive: vec![], negative: vec![0] })
        );
    }

    #[test]
    fn ideal_oracle_examples() {
        let x = Annuli;
        assert_eq!(
            ideal_oracle(&set("[1/4,1)"), &x).unwrap(),
            IdealOracleAnswer::Cover { witnesses: vec![0, 1] }
        );
        assert_eq!(
            ideal_oracle(&set("[0,1/4)"), &x).unwrap(),
            IdealOracleAnswer::Absorb { head: 2, rest: vec![] }
        );
        assert_eq!(
            ideal_oracle(&IntervalSet::empty(), &x).unwrap(),
            IdealOracleAnswer::Cover { witnesses: vec![] }
        );
        assert_eq!(
            ideal_oracle(&set("[1/2,1)"), &x).unwrap(),
            IdealOracleAnswer::Cover { witnesses: vec![0] }
        );
    }

    #[test]
    fn free_oracle_examples() {
        let c = InitialSegments;
        assert_eq!(free_oracle(&set("[1/4,1/2)"), &c).unwrap(), FreeOracleAnswer::Avoid { i: 1 });
        assert_eq!(
            free_oracle(&set("[0,1/8)u[1/2,5/8)"), &c).unwrap(),
            FreeOracleAnswer::Between { i: 2, j: 3 }
        );
        assert_eq!(free_oracle(&IntervalSet::empty(), &c).unwrap(), FreeOracleAnswer::Avoid { i: 0 });
        assert_eq!(
            free_oracle(&IntervalSet::full(), &c).unwrap(),
            FreeOracleAnswer::Between { i: 0, j: 1 }
        );
    }

    struct Liar;

    impl IdealFamily for Liar {
        fn piece(&self, n: usize) -> IntervalSet {
            Annuli.piece(n)
        }
        fn classify(&self, _: &IntervalSet) -> Option<IdealOracleAnswer> {
            Some(IdealOracleAnswer::Cover { witnesses: vec![] })
        }
    }

    #[test]
    fn custom_family_answers_are_checked() {
        assert!(matches!(
            ideal_oracle(&set("[0,1/2)"), &Liar),
            Err(Error::OracleUnsound(_))
        ));
        assert!(ideal_oracle(&IntervalSet::empty(), &Liar).is_ok());
    }

    #[test]
    fn canonical_families_hold_their_invariants() {
        let pieces: Vec<_> = (0..12).map(|n| Annuli.piece(n)).collect();
        assert!(is_ideal_independent(&pieces));
        let terms: Vec<_> = (0..=12).map(|i| InitialSegments.term(i)).collect();
        for len in 0..=terms.len() {
            assert!(is_free_sequence(&terms[..len]));
        }
        for i in 0..12 {
            assert!(terms[i + 1].is_subset(&terms[i]) && terms[i + 1] != terms[i]);
        }
    }
}
