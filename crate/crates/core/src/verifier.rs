//! Checkable verdicts for the conclusions drawn about one forcing step.
//!
//! Every verdict records the condition its evidence was read from and the
//! evidence itself. [`Verdict::recheck`] re-derives the claim from that data
//! using kernel operations and membership queries on the generic set, never
//! from the construction that produced it.
//!
//! Facts about `g` come straight from condition coordinates (`p0 ⊆ g`,
//! `p1 ∩ g = ∅`), so they are exact. Where a claim involves the extension
//! element `b = (g ∩ e) ∪ (f ∖ g)` without rewriting it into the ground
//! algebra, the evidence is an exact inclusion against the bounds
//! `p* ⊆ b ⊆ p* ∪ a_p`, and those bounds are confirmed pointwise on a prefix.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::dyadic::{encode, Dyadic};
use crate::engine::{glue, ChainState, ExtElement};
use crate::error::{Error, Result};
use crate::extenders::{Ground, Request, Witnesses};
use crate::families::{free_oracle, ideal_oracle, product, FreeOracleAnswer, IdealOracleAnswer};
use crate::interval_set::IntervalSet;
use crate::poset::{p_star, Condition};

/// Default number of points on which bounds involving `b` are checked.
pub const DEFAULT_PREFIX: u64 = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Claim {
    /// `g` differs from the given ground element.
    NotInA,
    /// Neither `g` nor `-g` lies below the given non-member of `u`.
    UltraDestroyed,
    /// The ideal-independent family cannot be enlarged by `b`.
    IdealPreserved,
    /// The free sequence cannot be extended by `b`.
    FreePreserved,
    /// `b` is not an atom of the extension.
    NotAtom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Verified,
    Refuted { reason: String },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<IntervalSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<IntervalSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<IntervalSet>,
}

impl Inputs {
    pub fn single(a: &IntervalSet) -> Self {
        Self {
            a: Some(a.clone()),
            ..Self::default()
        }
    }

    pub fn pair(e: &IntervalSet, f: &IntervalSet) -> Self {
        Self {
            e: Some(e.clone()),
            f: Some(f.clone()),
            ..Self::default()
        }
    }
}

/// The witness data of a verdict. `normalized`, when present, is the value of
/// `b` in the ground algebra; otherwise the bounds `p* ⊆ b ⊆ p* ∪ a_p` stand in
/// for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// `n ∈ g ∖ a` when `in_g`, else `n ∈ a ∖ g`.
    Differs {
        #[serde(with = "crate::nat_serde")]
        n: BigUint,
        in_g: bool,
    },
    /// `n0 ∈ g ∖ a` and `n1 ∈ -g ∖ a`.
    Destroyed {
        #[serde(with = "crate::nat_serde")]
        n0: BigUint,
        #[serde(with = "crate::nat_serde")]
        n1: BigUint,
    },
    /// `x_head ⊆ b ∪ x_rest…`.
    IdealAbsorb {
        normalized: Option<IntervalSet>,
        head: usize,
        rest: Vec<usize>,
    },
    /// `b ⊆ x_cover…`.
    IdealCover {
        normalized: Option<IntervalSet>,
        cover: Vec<usize>,
    },
    /// `⋂ c_positive ∩ ⋂ -c_negative ∩ ±b = ∅`, with `b` taken positively
    /// when `b_positive`. `b` sits after every term of the sequence.
    FreeProduct {
        normalized: Option<IntervalSet>,
        positive: Vec<usize>,
        negative: Vec<usize>,
        b_positive: bool,
    },
    /// `n ∈ b ∩ separator` and `m ∈ b ∖ separator`.
    Split { n: u64, m: u64, separator: IntervalSet },
    /// Members of `b` found up to `bound`; fewer than two.
    Unsplit { members: Vec<u64>, bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: Claim,
    pub inputs: Inputs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause: Option<u8>,
    #[serde(default)]
    pub mirrored: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<Condition>,
    pub evidence: Evidence,
    /// Pointwise checks on `b` cover `0..prefix`.
    #[serde(default)]
    pub prefix: u64,
    pub outcome: Outcome,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Check(msg.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn needs<'a, T>(value: &'a Option<T>, what: &str) -> Result<&'a T> {
    value.as_ref().ok_or_else(|| fail(format!("verdict lacks {what}")))
}

/// Checks `lower(n) ⇒ b(n) ⇒ upper(n)` for `n < prefix`.
fn check_bounds(
    state: &mut ChainState,
    b: &ExtElement,
    lower: &IntervalSet,
    upper: &IntervalSet,
    prefix: u64,
) -> Result<()> {
    for n in 0..prefix {
        let d = encode(n);
        let member = b.contains(state, n);
        ensure(member || !lower.contains(&d), || format!("point {n} is in the lower bound but not in b"))?;
        ensure(!member || upper.contains(&d), || format!("point {n} is in b but outside the upper bound"))?;
    }
    Ok(())
}

fn union_of(sets: impl IntoIterator<Item = IntervalSet>) -> IntervalSet {
    sets.into_iter().fold(IntervalSet::empty(), |acc, s| acc.union(&s))
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        self.outcome == Outcome::Verified
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.outcome, Outcome::Refuted { .. })
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("verdicts serialize")
    }

    /// Re-derives the claim from the recorded evidence. Membership in `g` is
    /// queried from `state`, which must be the chain the verdict was made on
    /// (or a replay of it).
    pub fn recheck(&self, state: &mut ChainState) -> Result<()> {
        let ground = state.ground().clone();
        match &self.evidence {
            Evidence::Differs { n, in_g } => {
                let a = needs(&self.inputs.a, "a")?;
                let p = self.checked_condition(&ground)?;
                let (side, name) = if *in_g { (&p.p0, "p0") } else { (&p.p1, "p1") };
                ensure(side.contains_nat(n), || format!("point {n} not in {name}"))?;
                ensure(a.contains_nat(n) != *in_g, || format!("point {n} on the wrong side of a"))?;
                ensure(state.g_contains_nat(n) == *in_g, || format!("g disagrees at {n}"))
            }
            Evidence::Destroyed { n0, n1 } => {
                let a = needs(&self.inputs.a, "a")?;
                ensure(!ground.u.contains(a), || format!("{a} is in u"))?;
                let p = self.checked_condition(&ground)?;
                ensure(p.p0.contains_nat(n0) && !a.contains_nat(n0), || format!("{n0} not in p0 ∖ a"))?;
                ensure(p.p1.contains_nat(n1) && !a.contains_nat(n1), || format!("{n1} not in p1 ∖ a"))?;
                ensure(state.g_contains_nat(n0), || format!("{n0} not in g"))?;
                ensure(!state.g_contains_nat(n1), || format!("{n1} in g"))
            }
            Evidence::IdealAbsorb { normalized, head, rest } => {
                let (b, lower, upper) = self.bounds(&ground, normalized)?;
                let family = ground.ideal.as_ref();
                ensure(!rest.contains(head), || "head repeated in rest".into())?;
                let rhs = lower.union(&union_of(rest.iter().map(|&k| family.piece(k))));
                ensure(family.piece(*head).is_subset(&rhs), || format!("x_{head} escapes b ∪ rest"))?;
                check_bounds(state, &b, &lower, &upper, self.prefix)
            }
            Evidence::IdealCover { normalized, cover } => {
                let (b, lower, upper) = self.bounds(&ground, normalized)?;
                let family = ground.ideal.as_ref();
                let rhs = union_of(cover.iter().map(|&k| family.piece(k)));
                ensure(upper.is_subset(&rhs), || format!("b not covered by pieces {cover:?}"))?;
                check_bounds(state, &b, &lower, &upper, self.prefix)
            }
            Evidence::FreeProduct { normalized, positive, negative, b_positive } => {
                let (b, lower, upper) = self.bounds(&ground, normalized)?;
                ensure(positive.iter().all(|i| negative.iter().all(|j| i < j)), || {
                    "positive indices must precede negative ones".into()
                })?;
                let top = positive.iter().chain(negative).copied().max().map_or(0, |m| m + 1);
                let terms: Vec<IntervalSet> = (0..top).map(|i| ground.free.term(i)).collect();
                let prod = product(&terms, positive, negative);
                if *b_positive {
                    ensure(prod.is_disjoint(&upper), || "product meets b".into())?;
                } else {
                    ensure(prod.is_subset(&lower), || "product escapes b".into())?;
                }
                check_bounds(state, &b, &lower, &upper, self.prefix)
            }
            Evidence::Split { n, m, separator } => {
                let b = self.element()?;
                ensure(n != m, || "split points coincide".into())?;
                ensure(b.contains(state, *n) && b.contains(state, *m), || format!("{n} or {m} not in b"))?;
                ensure(separator.contains(&encode(*n)), || format!("{n} outside the separator"))?;
                ensure(!separator.contains(&encode(*m)), || format!("{m} inside the separator"))
            }
            Evidence::Unsplit { members, .. } => {
                let b = self.element()?;
                ensure(members.len() < 2, || "two members found but no split recorded".into())?;
                ensure(members.iter().all(|&n| b.contains(state, n)), || "listed member not in b".into())
            }
        }
    }

    fn checked_condition(&self, ground: &Ground) -> Result<&Condition> {
        let p = needs(&self.condition, "a condition")?;
        p.validate(&ground.u)?;
        Ok(p)
    }

    fn element(&self) -> Result<ExtElement> {
        Ok(ExtElement::new(
            needs(&self.inputs.e, "e")?.clone(),
            needs(&self.inputs.f, "f")?.clone(),
        ))
    }

    /// `b` with exact lower and upper ground bounds: both equal to the
    /// normalized value when there is one, else `p*` and `p* ∪ a_p`.
    fn bounds(&self, ground: &Ground, normalized: &Option<IntervalSet>) -> Result<(ExtElement, IntervalSet, IntervalSet)> {
        let b = self.element()?;
        let p = self.checked_condition(ground)?;
        match normalized {
            Some(value) => {
                ensure(b.e.symdiff(&b.f).is_subset(&p.support()), || "e △ f is not decided".into())?;
                ensure(*value == glue(p, &b.e, &b.f), || format!("{value} is not the glued value"))?;
                Ok((b, value.clone(), value.clone()))
            }
            None => {
                let lower = p_star(p, &b.e, &b.f);
                let upper = lower.union(&p.support().complement());
                Ok((b, lower, upper))
            }
        }
    }
}

/// Sets the outcome from a recheck of the evidence.
fn conclude(state: &mut ChainState, mut verdict: Verdict) -> Verdict {
    verdict.outcome = match verdict.recheck(state) {
        Ok(()) => Outcome::Verified,
        Err(e) => Outcome::Refuted { reason: e.to_string() },
    };
    verdict
}

fn point_of(set: &IntervalSet) -> Result<BigUint> {
    set.some_point().ok_or_else(|| fail(format!("{set} has no point")))
}

/// Exhibits `n ∈ g △ a`. For `a ∉ u` meets `D_a` and reads `n` off `p0 ∖ a`;
/// for `a ∈ u` meets `D_{-a}` and reads `n` off `p1 ∩ a`.
pub fn verify_g_differs(state: &mut ChainState, a: &IntervalSet) -> Result<Verdict> {
    let in_u = state.ground().u.contains(a);
    let target = if in_u { a.complement() } else { a.clone() };
    let cert = state.meet(Request::Da { a: target })?;
    let p = cert.result;
    let (n, in_g) = if in_u {
        (point_of(&p.p1.intersect(a))?, false)
    } else {
        (point_of(&p.p0.difference(a))?, true)
    };
    let verdict = Verdict {
        claim: Claim::NotInA,
        inputs: Inputs::single(a),
        clause: Some(cert.clause),
        mirrored: false,
        condition: Some(p),
        evidence: Evidence::Differs { n, in_g },
        prefix: 0,
        outcome: Outcome::Verified,
    };
    Ok(conclude(state, verdict))
}

/// Exhibits points of `g ∖ a` and `-g ∖ a` for `a ∉ u`, so that neither `g`
/// nor its complement lies below `a`.
pub fn verify_ultra_destroyed(state: &mut ChainState, a: &IntervalSet) -> Result<Verdict> {
    if state.ground().u.contains(a) {
        return Err(Error::Precondition(format!("{a} is in u")));
    }
    let cert = state.meet(Request::Da { a: a.clone() })?;
    let p = cert.result;
    let n0 = point_of(&p.p0.difference(a))?;
    let n1 = point_of(&p.p1.difference(a))?;
    let verdict = Verdict {
        claim: Claim::UltraDestroyed,
        inputs: Inputs::single(a),
        clause: Some(cert.clause),
        mirrored: false,
        condition: Some(p),
        evidence: Evidence::Destroyed { n0, n1 },
        prefix: 0,
        outcome: Outcome::Verified,
    };
    Ok(conclude(state, verdict))
}

fn unexpected(w: &Witnesses) -> Error {
    fail(format!("unexpected witness {w:?}"))
}

/// Meets `D_{e,f}` and turns its clause into a witness that the ideal
/// family together with `b` is not ideal independent.
pub fn verify_ideal_preserved(
    state: &mut ChainState,
    e: &IntervalSet,
    f: &IntervalSet,
    prefix: u64,
) -> Result<Verdict> {
    let cert = state.meet(Request::Def { e: e.clone(), f: f.clone() })?;
    let p = cert.result.clone();
    let evidence = match &cert.witnesses {
        Witnesses::SymDiff { .. } => {
            let b = glue(&p, e, f);
            match ideal_oracle(&b, state.ground().ideal.as_ref())? {
                IdealOracleAnswer::Cover { witnesses } => Evidence::IdealCover {
                    normalized: Some(b),
                    cover: witnesses,
                },
                IdealOracleAnswer::Absorb { head, rest } => Evidence::IdealAbsorb {
                    normalized: Some(b),
                    head,
                    rest,
                },
            }
        }
        Witnesses::IdealAbsorb { head, rest, .. } => Evidence::IdealAbsorb {
            normalized: None,
            head: *head,
            rest: rest.clone(),
        },
        Witnesses::IdealCover { cover, .. } => Evidence::IdealCover {
            normalized: None,
            cover: cover.clone(),
        },
        other => return Err(unexpected(other)),
    };
    let verdict = Verdict {
        claim: Claim::IdealPreserved,
        inputs: Inputs::pair(e, f),
        clause: Some(cert.clause),
        mirrored: cert.mirrored,
        condition: Some(p),
        evidence,
        prefix,
        outcome: Outcome::Verified,
    };
    Ok(conclude(state, verdict))
}

fn free_product(answer: FreeOracleAnswer, normalized: Option<IntervalSet>) -> Evidence {
    let (positive, negative, b_positive) = match answer {
        FreeOracleAnswer::Avoid { i } => (vec![i], vec![], true),
        FreeOracleAnswer::Between { i, j } => (vec![i], vec![j], false),
        FreeOracleAnswer::CoversTop => (vec![], vec![0], false),
    };
    Evidence::FreeProduct {
        normalized,
        positive,
        negative,
        b_positive,
    }
}

/// Meets `E_{e,f}` and turns its clause into an empty product of the free
/// sequence with `b` appended.
pub fn verify_free_preserved(
    state: &mut ChainState,
    e: &IntervalSet,
    f: &IntervalSet,
    prefix: u64,
) -> Result<Verdict> {
    let cert = state.meet(Request::Eef { e: e.clone(), f: f.clone() })?;
    let p = cert.result.clone();
    let evidence = match &cert.witnesses {
        Witnesses::SymDiff { .. } => {
            let b = glue(&p, e, f);
            let answer = free_oracle(&b, state.ground().free.as_ref())?;
            free_product(answer, Some(b))
        }
        Witnesses::FreeBetween { i, j, .. } => free_product(FreeOracleAnswer::Between { i: *i, j: *j }, None),
        Witnesses::FreeAvoid { i, .. } => free_product(FreeOracleAnswer::Avoid { i: *i }, None),
        Witnesses::FreeCoversTop { .. } => free_product(FreeOracleAnswer::CoversTop, None),
        other => return Err(unexpected(other)),
    };
    let verdict = Verdict {
        claim: Claim::FreePreserved,
        inputs: Inputs::pair(e, f),
        clause: Some(cert.clause),
        mirrored: cert.mirrored,
        condition: Some(p),
        evidence,
        prefix,
        outcome: Outcome::Verified,
    };
    Ok(conclude(state, verdict))
}

/// The coarsest dyadic cell around `enc(n)` that leaves out `enc(m)`.
pub fn separator(n: u64, m: u64) -> IntervalSet {
    let (dn, dm) = (encode(n), encode(m));
    let k = (1..)
        .find(|&k| dn.truncate(k) != dm.truncate(k))
        .expect("distinct dyadics differ at some rank");
    let lo: Dyadic = dn.truncate(k);
    let hi = lo.add_ulp(k);
    IntervalSet::interval(lo, hi)
}

/// Searches `0..=bound` for two members of `b` and separates them by a
/// ground element. Fewer than two members gives an inconclusive verdict.
pub fn verify_not_atom(state: &mut ChainState, e: &IntervalSet, f: &IntervalSet, bound: u64) -> Verdict {
    let b = ExtElement::new(e.clone(), f.clone());
    let mut members = Vec::with_capacity(2);
    for n in 0..=bound {
        if b.contains(state, n) {
            members.push(n);
            if members.len() == 2 {
                break;
            }
        }
    }
    let mut verdict = Verdict {
        claim: Claim::NotAtom,
        inputs: Inputs::pair(e, f),
        clause: None,
        mirrored: false,
        condition: None,
        evidence: Evidence::Unsplit {
            members: members.clone(),
            bound,
        },
        prefix: bound + 1,
        outcome: Outcome::Inconclusive {
            reason: format!("fewer than two members of b up to {bound}"),
        },
    };
    if let [n, m] = members[..] {
        verdict.evidence = Evidence::Split {
            n,
            m,
            separator: separator(n, m),
        };
        verdict = conclude(state, verdict);
    }
    verdict
}
