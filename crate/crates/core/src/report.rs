//! The seeded step demo: one chain, a batch of random claims, a JSON-lines
//! report.

use serde::Serialize;
use serde_json::json;

use crate::engine::ChainState;
use crate::error::Result;
use crate::extenders::Ground;
use crate::interval_set::IntervalSet;
use crate::random;
use crate::ultrafilter::PointUltrafilter;
use crate::verifier::{
    verify_free_preserved, verify_g_differs, verify_ideal_preserved, verify_not_atom,
    verify_ultra_destroyed, Claim, Evidence, Inputs, Outcome, Verdict, DEFAULT_PREFIX,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepConfig {
    pub seed: u64,
    pub samples: u64,
    pub prefix: u64,
    pub point: PointUltrafilter,
}

impl Default for StepConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 1,
            prefix: DEFAULT_PREFIX,
            point: PointUltrafilter::third(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: u64,
    pub refuted: u64,
    pub inconclusive: u64,
}

impl Summary {
    pub fn add(&mut self, outcome: &Outcome) {
        match outcome {
            Outcome::Verified => self.verified += 1,
            Outcome::Refuted { .. } => self.refuted += 1,
            Outcome::Inconclusive { .. } => self.inconclusive += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.verified + self.refuted + self.inconclusive
    }

    /// True when no verdict failed; inconclusive ones do not count.
    pub fn passed(&self) -> bool {
        self.refuted == 0
    }

    pub fn to_json_line(&self) -> String {
        json!({
            "summary": true,
            "total": self.total(),
            "verified": self.verified,
            "refuted": self.refuted,
            "inconclusive": self.inconclusive,
        })
        .to_string()
    }
}

pub struct Report {
    pub config: StepConfig,
    pub verdicts: Vec<Verdict>,
    pub summary: Summary,
}

impl Report {
    pub fn header_line(&self) -> String {
        json!({
            "kind": "header",
            "rng": random::ALGORITHM,
            "seed": self.config.seed,
            "samples": self.config.samples,
            "prefix": self.config.prefix,
            "point": self.config.point.to_string(),
        })
        .to_string()
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = self.header_line();
        out.push('\n');
        for v in &self.verdicts {
            out.push_str(&v.to_json_line());
            out.push('\n');
        }
        out.push_str(&self.summary.to_json_line());
        out.push('\n');
        out
    }
}

/// A verifier error becomes a refuted verdict, so the report still lists it.
fn settle(claim: Claim, inputs: Inputs, result: Result<Verdict>) -> Verdict {
    result.unwrap_or_else(|e| Verdict {
        claim,
        inputs,
        clause: None,
        mirrored: false,
        condition: None,
        evidence: Evidence::Unsplit { members: Vec::new(), bound: 0 },
        prefix: 0,
        outcome: Outcome::Refuted { reason: e.to_string() },
    })
}

/// Runs, on one chain, `samples` rounds of: destruction and newness for a
/// random `a ∉ u`, then both preservation claims and atomlessness for a
/// random pair `(e, f)`. The point search for atomlessness is bounded by
/// `prefix`. Output is a function of the configuration alone.
pub fn run_step_demo(config: &StepConfig) -> Report {
    let mut state = ChainState::new(Ground::with_point(config.point.clone()));
    run_step_demo_on(&mut state, config)
}

/// As [`run_step_demo`], continuing an existing chain. The configured point
/// is ignored in favour of the chain's own.
pub fn run_step_demo_on(state: &mut ChainState, config: &StepConfig) -> Report {
    let mut rng = random::rng(config.seed);
    let u = state.ground().u.clone();
    let mut verdicts = Vec::new();
    for _ in 0..config.samples {
        let a = random::set_outside(&mut rng, &u);
        let inputs = Inputs::single(&a);
        let destroyed = verify_ultra_destroyed(state, &a);
        verdicts.push(settle(Claim::UltraDestroyed, inputs.clone(), destroyed));
        verdicts.push(settle(Claim::NotInA, inputs, verify_g_differs(state, &a)));

        let (e, f): (IntervalSet, IntervalSet) = random::pair(&mut rng);
        let inputs = Inputs::pair(&e, &f);
        let ideal = verify_ideal_preserved(state, &e, &f, config.prefix);
        verdicts.push(settle(Claim::IdealPreserved, inputs.clone(), ideal));
        let free = verify_free_preserved(state, &e, &f, config.prefix);
        verdicts.push(settle(Claim::FreePreserved, inputs, free));
        verdicts.push(verify_not_atom(state, &e, &f, config.prefix));
    }
    let mut summary = Summary::default();
    for v in &verdicts {
        summary.add(&v.outcome);
    }
    Report {
        config: StepConfig { point: u, ..config.clone() },
        verdicts,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_demo() {
        let report = run_step_demo(&StepConfig { samples: 0, ..StepConfig::default() });
        assert_eq!(report.summary.total(), 0);
        assert!(report.summary.passed());
        let text = report.to_json_lines();
        assert_eq!(text.lines().count(), 2);
        assert!(text.ends_with("{\"inconclusive\":0,\"refuted\":0,\"summary\":true,\"total\":0,\"verified\":0}\n"));
    }

    #[test]
    fn one_sample_is_deterministic() {
        let config = StepConfig { seed: 42, samples: 1, prefix: 256, ..StepConfig::default() };
        let first = run_step_demo(&config);
        assert_eq!(first.verdicts.len(), 5);
        assert_eq!(first.summary.refuted, 0);
        assert_eq!(first.to_json_lines(), run_step_demo(&config).to_json_lines());
        assert!(first.header_line().contains("ChaCha8Rng/seed_from_u64"));
    }
}
