//! On-demand construction of a descending chain of conditions, the generic
//! set it determines, and elements of the extension algebra.
//!
//! A [`ChainState`] starts at the root condition `(∅, ∅)` and only ever grows
//! downwards: each met request appends the extender's result below the
//! current bottom. Because `p0` and `p1` only grow, any membership decided for
//! the generic set `g = ⋃ p0` stays decided, which makes meeting dense sets
//! lazily, exactly when some query needs them, sound.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde_json::json;

use crate::dyadic::encode;
use crate::error::Result;
use crate::extenders::{extend, Certificate, Ground, Request};
use crate::interval_set::IntervalSet;
use crate::poset::Condition;

/// Memberships of small points are cached in a flat table.
const SMALL_POINTS: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct ChainState {
    ground: Ground,
    chain: Vec<Condition>,
    log: Vec<Certificate>,
    requests: Vec<Request>,
    met: HashMap<Request, usize>,
    // 0 unknown, 1 out of g, 2 in g
    small: Vec<u8>,
    large: HashMap<BigUint, bool>,
}

impl ChainState {
    pub fn new(ground: Ground) -> Self {
        Self {
            ground,
            chain: vec![Condition::root()],
            log: Vec::new(),
            requests: Vec::new(),
            met: HashMap::new(),
            small: Vec::new(),
            large: HashMap::new(),
        }
    }

    pub fn canonical() -> Self {
        Self::new(Ground::canonical())
    }

    /// Rebuilds a chain by meeting `requests` in order.
    pub fn replay(ground: Ground, requests: impl IntoIterator<Item = Request>) -> Result<Self> {
        let mut state = Self::new(ground);
        for request in requests {
            state.meet(request)?;
        }
        Ok(state)
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn bottom(&self) -> &Condition {
        self.chain.last().expect("chain always holds the root")
    }

    pub fn chain(&self) -> &[Condition] {
        &self.chain
    }

    pub fn log(&self) -> &[Certificate] {
        &self.log
    }

    /// Requests in the order they were first met.
    pub fn requests(&self) -> &[Request] {
        &self.requests
    }

    /// Meets a dense set below the current bottom. A request that was already
    /// met returns its original certificate and leaves the chain unchanged.
    pub fn meet(&mut self, request: Request) -> Result<Certificate> {
        if let Some(&idx) = self.met.get(&request) {
            return Ok(self.log[idx].clone());
        }
        let cert = extend(self.bottom(), &request, &self.ground)?;
        self.chain.push(cert.result.clone());
        self.log.push(cert.clone());
        self.met.insert(request.clone(), self.log.len() - 1);
        self.requests.push(request);
        Ok(cert)
    }

    /// Whether the `n`-th point of ω lies in the generic set. Meets `E_n`
    /// first; the answer never changes afterwards.
    pub fn g_contains(&mut self, n: u64) -> bool {
        if n < SMALL_POINTS {
            if let Some(&known) = self.small.get(n as usize) {
                if known != 0 {
                    return known == 2;
                }
            }
        }
        let answer = self.decide(&BigUint::from(n));
        if n < SMALL_POINTS {
            let idx = n as usize;
            if self.small.len() <= idx {
                self.small.resize(idx + 1, 0);
            }
            self.small[idx] = if answer { 2 } else { 1 };
        }
        answer
    }

    pub fn g_contains_nat(&mut self, n: &BigUint) -> bool {
        if let Ok(small) = u64::try_from(n) {
            return self.g_contains(small);
        }
        if let Some(&known) = self.large.get(n) {
            return known;
        }
        let answer = self.decide(n);
        self.large.insert(n.clone(), answer);
        answer
    }

    fn decide(&mut self, n: &BigUint) -> bool {
        let bottom = self.bottom();
        if bottom.p0.contains_nat(n) {
            return true;
        }
        if bottom.p1.contains_nat(n) {
            return false;
        }
        let cert = self
            .meet(Request::Ei { i: n.clone() })
            .expect("E_n is met from every condition");
        cert.result.p0.contains_nat(n)
    }

    /// Membership of the points `0..len` in `g`.
    pub fn g_prefix(&mut self, len: u64) -> Vec<bool> {
        (0..len).map(|n| self.g_contains(n)).collect()
    }

    /// Rewrites `b = (g ∩ e) ∪ (f ∖ g)` as a ground element once the chain
    /// decides all of `e △ f`: `(e ∩ f) ∪ (p0 ∩ (e ∖ f)) ∪ (p1 ∩ (f ∖ e))`.
    /// Returns `None` when `e △ f ∈ u`, in which case no condition covers it.
    pub fn try_normalize(&mut self, e: &IntervalSet, f: &IntervalSet) -> Result<Option<IntervalSet>> {
        let sym = e.symdiff(f);
        if self.ground.u.contains(&sym) {
            return Ok(None);
        }
        let p = self.meet(Request::Cover { x: sym })?.result;
        Ok(Some(glue(&p, e, f)))
    }

    /// The chain and its certificates as JSON lines: the root, then each
    /// certificate followed by the condition it produced.
    pub fn dump_json_lines(&self) -> String {
        let mut out = String::new();
        let condition_line = |index: usize, c: &Condition| {
            json!({"kind": "condition", "index": index, "p0": c.p0, "p1": c.p1}).to_string()
        };
        out.push_str(&condition_line(0, &self.chain[0]));
        out.push('\n');
        for (k, cert) in self.log.iter().enumerate() {
            let mut line = serde_json::to_value(cert).expect("certificates serialize");
            line["kind"] = json!("certificate");
            line["index"] = json!(k);
            out.push_str(&line.to_string());
            out.push('\n');
            out.push_str(&condition_line(k + 1, &self.chain[k + 1]));
            out.push('\n');
        }
        out
    }
}

/// `(e ∩ f) ∪ (p0 ∩ (e ∖ f)) ∪ (p1 ∩ (f ∖ e))`: the value of
/// `(g ∩ e) ∪ (f ∖ g)` for any generic `g` through `p`, provided `p0 ∪ p1`
/// covers `e △ f`.
pub fn glue(p: &Condition, e: &IntervalSet, f: &IntervalSet) -> IntervalSet {
    e.intersect(f)
        .union(&p.p0.intersect(&e.difference(f)))
        .union(&p.p1.intersect(&f.difference(e)))
}

/// An element `b = (g ∩ e) ∪ (f ∖ g)` of the extension algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    pub e: IntervalSet,
    pub f: IntervalSet,
}

impl ExtElement {
    pub fn new(e: IntervalSet, f: IntervalSet) -> Self {
        Self { e, f }
    }

    /// A ground element `a`, as `(g ∩ a) ∪ (a ∖ g)`.
    pub fn ground(a: IntervalSet) -> Self {
        Self { e: a.clone(), f: a }
    }

    /// The generic set itself.
    pub fn generic() -> Self {
        Self {
            e: IntervalSet::full(),
            f: IntervalSet::empty(),
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            e: self.e.complement(),
            f: self.f.complement(),
        }
    }

    /// Membership of `n`; the generic set is only consulted where `e` and
    /// `f` disagree.
    pub fn contains(&self, g: &mut ChainState, n: u64) -> bool {
        let d = encode(n);
        match (self.e.contains(&d), self.f.contains(&d)) {
            (in_e, in_f) if in_e == in_f => in_e,
            (in_e, _) => g.g_contains(n) == in_e,
        }
    }

    pub fn contains_nat(&self, g: &mut ChainState, n: &BigUint) -> bool {
        match (self.e.contains_nat(n), self.f.contains_nat(n)) {
            (in_e, in_f) if in_e == in_f => in_e,
            (in_e, _) => g.g_contains_nat(n) == in_e,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_set::set;
    use crate::ultrafilter::PointUltrafilter;

    fn cond(p0: &str, p1: &str) -> Condition {
        Condition::new(set(p0), set(p1), &PointUltrafilter::third()).unwrap()
    }

    #[test]
    fn meet_examples() {
        let mut s = ChainState::canonical();
        s.meet(Request::ei(0)).unwrap();
        assert_eq!(s.bottom(), &cond("[0,1/4)", "{}"));

        let mut s = ChainState::canonical();
        s.meet(Request::Da { a: set("[1/2,3/4)") }).unwrap();
        assert_eq!(s.bottom(), &cond("[1/8,1/4)", "[3/8,3/4)"));
    }

    #[test]
    fn repeated_requests_are_cached() {
        let mut s = ChainState::canonical();
        let first = s.meet(Request::Def { e: set("[0,1/2)"), f: IntervalSet::empty() }).unwrap();
        s.meet(Request::ei(7)).unwrap();
        let len = s.chain().len();
        let again = s.meet(Request::Def { e: set("[0,1/2)"), f: IntervalSet::empty() }).unwrap();
        assert_eq!(first, again);
        assert_eq!(s.chain().len(), len);
        assert_eq!(s.requests().len(), 2);
    }

    #[test]
    fn generic_membership_examples() {
        let mut s = ChainState::canonical();
        assert!(s.g_contains(0));
        assert!(s.g_contains(1));
        let mut s = ChainState::canonical();
        s.meet(Request::Cover { x: set("[1/2,1)") }).unwrap();
        // star_extend puts x into p0
        assert!(s.g_contains(1));
        let mut s = ChainState::canonical();
        s.meet(Request::Da { a: set("[0,1/8)") }).unwrap();
        // enc(8) = 1/16 lies in a ∖ p0, which D_a sends to p1
        assert!(!s.g_contains(8));
        assert!(!s.g_contains(8));
    }

    #[test]
    fn normalize_examples() {
        let mut s = ChainState::canonical();
        let e = set("[0,1/2)");
        assert_eq!(s.try_normalize(&e, &e).unwrap(), Some(e.clone()));

        let mut s = ChainState::canonical();
        let v = s.try_normalize(&set("[0,1/4)"), &set("[0,1/8)")).unwrap();
        assert_eq!(v, Some(set("[0,1/4)")));

        let mut s = ChainState::canonical();
        let v = s.try_normalize(&set("[0,1/2)"), &set("[0,1/2)u[3/4,1)")).unwrap();
        assert_eq!(v, Some(set("[0,1/2)")));

        let mut s = ChainState::canonical();
        assert_eq!(s.try_normalize(&set("[0,1/2)"), &IntervalSet::empty()).unwrap(), None);
    }

    #[test]
    fn dump_starts_at_root() {
        let s = ChainState::canonical();
        assert_eq!(
            s.dump_json_lines(),
            "{\"index\":0,\"kind\":\"condition\",\"p0\":\"{}\",\"p1\":\"{}\"}\n"
        );
    }
}
