//! Finite towers of forcing steps.
//!
//! Depth 0 is the ground algebra with its point ultrafilter; depth 1 is the
//! extension by one generic set, driven by a [`ChainState`]. Going further
//! needs an ultrafilter on the extension whose membership can be decided, and
//! the construction offers no canonical one. That choice is delegated to a
//! [`NextUltrafilter`] strategy with three-valued answers. Stages beyond the
//! first are experimental: they only record the strategy's answers on the
//! elements a next step would be parameterized by, and any unresolved answer
//! aborts the tower with a diagnostic.

use std::fmt;

use serde::Serialize;

use crate::engine::{ChainState, ExtElement};
use crate::extenders::Ground;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    In,
    Out,
    Unresolved,
}

pub trait NextUltrafilter {
    fn name(&self) -> &str;

    /// Membership of `b = (g ∩ e) ∪ (f ∖ g)` in the chosen ultrafilter on the
    /// extension. May meet dense sets on `state`.
    fn membership(&self, state: &mut ChainState, b: &ExtElement) -> Membership;
}

/// Answers only for elements that rewrite into the ground algebra, where it
/// agrees with the ground ultrafilter.
#[derive(Clone, Copy, Debug, Default)]
pub struct NormalizeThenPoint;

impl NextUltrafilter for NormalizeThenPoint {
    fn name(&self) -> &str {
        "normalize-then-point"
    }

    fn membership(&self, state: &mut ChainState, b: &ExtElement) -> Membership {
        match state.try_normalize(&b.e, &b.f) {
            Ok(Some(value)) if state.ground().u.contains(&value) => Membership::In,
            Ok(Some(_)) => Membership::Out,
            _ => Membership::Unresolved,
        }
    }
}

/// The ultrafilter generated by `u` together with `g` (or with `-g`). With
/// `g` in it, `b` is a member iff `e ∈ u`; with `-g`, iff `f ∈ u`. It is
/// proper as long as `g` and `-g` meet every member of `u`, which the `D_a`
/// sets guarantee.
#[derive(Clone, Copy, Debug)]
pub struct GenericSide {
    pub generic_in: bool,
}

impl NextUltrafilter for GenericSide {
    fn name(&self) -> &str {
        if self.generic_in {
            "generated-by-g"
        } else {
            "generated-by-complement-of-g"
        }
    }

    fn membership(&self, state: &mut ChainState, b: &ExtElement) -> Membership {
        let side = if self.generic_in { &b.e } else { &b.f };
        if state.ground().u.contains(side) {
            Membership::In
        } else {
            Membership::Out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerStage {
    pub depth: usize,
    pub ultrafilter: String,
    /// Answers the strategy gave on the probe elements that opened this stage.
    pub memberships: Vec<(String, Membership)>,
    pub experimental: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerAbort {
    pub depth: usize,
    pub element: ExtElement,
}

impl fmt::Display for TowerAbort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tower aborted at depth {}: membership of ({}, {}) is unresolved",
            self.depth, self.element.e, self.element.f
        )
    }
}

impl std::error::Error for TowerAbort {}

pub struct Tower {
    state: ChainState,
    strategy: Box<dyn NextUltrafilter>,
    stages: Vec<TowerStage>,
}

impl Tower {
    /// A tower holding its depth-0 and depth-1 stages.
    pub fn new(ground: Ground, strategy: Box<dyn NextUltrafilter>) -> Self {
        let point = ground.u.to_string();
        let stages = vec![
            TowerStage {
                depth: 0,
                ultrafilter: format!("point {point}"),
                memberships: Vec::new(),
                experimental: false,
            },
            TowerStage {
                depth: 1,
                ultrafilter: strategy.name().to_string(),
                memberships: Vec::new(),
                experimental: false,
            },
        ];
        Self {
            state: ChainState::new(ground),
            strategy,
            stages,
        }
    }

    pub fn depth(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stages(&self) -> &[TowerStage] {
        &self.stages
    }

    /// The depth-1 chain.
    pub fn state(&mut self) -> &mut ChainState {
        &mut self.state
    }

    /// Opens the next experimental stage, resolving the ultrafilter on
    /// `probes` first. Stops at the first unresolved probe.
    pub fn advance(&mut self, probes: &[ExtElement]) -> Result<&TowerStage, TowerAbort> {
        let depth = self.depth() + 1;
        let mut memberships = Vec::with_capacity(probes.len());
        for b in probes {
            match self.strategy.membership(&mut self.state, b) {
                Membership::Unresolved => {
                    return Err(TowerAbort {
                        depth,
                        element: b.clone(),
                    })
                }
                answer => memberships.push((format!("({}, {})", b.e, b.f), answer)),
            }
        }
        self.stages.push(TowerStage {
            depth,
            ultrafilter: self.strategy.name().to_string(),
            memberships,
            experimental: true,
        });
        Ok(self.stages.last().expect("just pushed"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_set::{set, IntervalSet};

    #[test]
    fn generic_side_is_an_ultrafilter_extending_u() {
        let mut s = ChainState::canonical();
        let strategy = GenericSide { generic_in: true };
        assert_eq!(strategy.membership(&mut s, &ExtElement::generic()), Membership::In);
        assert_eq!(strategy.membership(&mut s, &ExtElement::generic().complement()), Membership::Out);
        for a in ["[0,1/2)", "[1/2,1)", "[1/4,1/2)", "{}"] {
            let a = set(a);
            let expected = if s.ground().u.contains(&a) { Membership::In } else { Membership::Out };
            assert_eq!(strategy.membership(&mut s, &ExtElement::ground(a)), expected);
        }
        let b = ExtElement::new(set("[0,1/2)"), set("[1/4,1)"));
        let one = strategy.membership(&mut s, &b);
        let other = strategy.membership(&mut s, &b.complement());
        assert_ne!(one, other);
    }

    #[test]
    fn normalize_strategy_aborts_on_unresolved() {
        let mut tower = Tower::new(Ground::canonical(), Box::new(NormalizeThenPoint));
        assert_eq!(tower.depth(), 1);
        let resolved = ExtElement::new(set("[0,1/4)"), set("[0,1/8)"));
        let stage = tower.advance(&[resolved]).unwrap();
        assert_eq!(stage.depth, 2);
        assert_eq!(stage.memberships[0].1, Membership::Out);
        let err = tower.advance(&[ExtElement::generic()]).unwrap_err();
        assert_eq!(err.depth, 3);
        assert_eq!(err.element, ExtElement::new(IntervalSet::full(), IntervalSet::empty()));
        assert_eq!(tower.depth(), 2);
    }
}
