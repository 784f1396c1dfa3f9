//! Constructive density: each extender maps an arbitrary condition into one of
//! the dense sets and returns a certificate naming the clause it satisfies.
//!
//! Dense sets handled here, for a condition `p` with derived parts as in
//! [`derived_parts`]:
//!
//! * `D_a` (`a ∉ u`): `a ⊆ p0 ∪ p1` and both `p0 ∖ a`, `p1 ∖ a` nonempty.
//! * `E_i`: the point `i` lies in `p0 ∪ p1`.
//! * `Cover(x)` (`x ∉ u`): `x ⊆ p0 ∪ p1`.
//! * `D_{e,f}` clauses: (1) `e △ f ⊆ p0 ∪ p1`; (2) `x_h ⊆ p* ∪ x_{r1} ∪ …`;
//!   (3) `p* ∪ a_p ⊆ x_{w0} ∪ …`.
//! * `E_{e,f}` clauses: (1) `e △ f ⊆ p0 ∪ p1`; (2) `c_i ∖ c_j ⊆ p*`;
//!   (3) `p* ∪ a_p ⊆ -c_i`; (4) `-c_0 ⊆ p*`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::dyadic::encode_nat;
use crate::error::{Error, Result};
use crate::families::{
    free_oracle, ideal_oracle, Annuli, FreeOracleAnswer, FreeSeq, IdealFamily, IdealOracleAnswer,
    InitialSegments,
};
use crate::interval_set::{Interval, IntervalSet};
use crate::poset::{derived_parts, leq, p_star, star_extend, Condition};
use crate::ultrafilter::{atomless_split, PointUltrafilter};

/// The fixed data of one forcing step: the ultrafilter and the two families
/// whose maximality is to be preserved.
#[derive(Clone)]
pub struct Ground {
    pub u: PointUltrafilter,
    pub ideal: Arc<dyn IdealFamily>,
    pub free: Arc<dyn FreeSeq>,
}

impl Ground {
    pub fn canonical() -> Self {
        Self::with_point(PointUltrafilter::third())
    }

    pub fn with_point(u: PointUltrafilter) -> Self {
        Self {
            u,
            ideal: Arc::new(Annuli),
            free: Arc::new(InitialSegments),
        }
    }
}

impl fmt::Debug for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ground")
            .field("u", &self.u)
            .field("ideal", &self.ideal.name())
            .field("free", &self.free.name())
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DenseSet {
    Da,
    Ei,
    Def,
    Eef,
    Cover,
}

/// A request to meet one dense set, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "dense_set")]
pub enum Request {
    Da {
        a: IntervalSet,
    },
    Ei {
        #[serde(with = "crate::nat_serde")]
        i: BigUint,
    },
    Def {
        e: IntervalSet,
        f: IntervalSet,
    },
    Eef {
        e: IntervalSet,
        f: IntervalSet,
    },
    Cover {
        x: IntervalSet,
    },
}

impl Request {
    pub fn ei(i: u64) -> Self {
        Request::Ei { i: BigUint::from(i) }
    }

    pub fn dense_set(&self) -> DenseSet {
        match self {
            Request::Da { .. } => DenseSet::Da,
            Request::Ei { .. } => DenseSet::Ei,
            Request::Def { .. } => DenseSet::Def,
            Request::Eef { .. } => DenseSet::Eef,
            Request::Cover { .. } => DenseSet::Cover,
        }
    }
}

/// Clause-specific evidence. Piece and term indices refer to the ground's
/// ideal family and free sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witnesses {
    Target { a: IntervalSet },
    Point {
        #[serde(with = "crate::nat_serde")]
        i: BigUint,
    },
    Covered { x: IntervalSet },
    SymDiff { e: IntervalSet, f: IntervalSet },
    IdealAbsorb { e: IntervalSet, f: IntervalSet, head: usize, rest: Vec<usize> },
    IdealCover { e: IntervalSet, f: IntervalSet, cover: Vec<usize> },
    FreeBetween { e: IntervalSet, f: IntervalSet, i: usize, j: usize },
    FreeAvoid { e: IntervalSet, f: IntervalSet, i: usize },
    FreeCoversTop { e: IntervalSet, f: IntervalSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub dense_set: DenseSet,
    pub clause: u8,
    /// Set when the construction ran the mirrored `f ∖ e` branch.
    pub mirrored: bool,
    pub witnesses: Witnesses,
    pub result: Condition,
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

fn pieces_union(family: &dyn IdealFamily, idx: &[usize]) -> IntervalSet {
    idx.iter()
        .fold(IntervalSet::empty(), |acc, &n| acc.union(&family.piece(n)))
}

impl Certificate {
    /// Re-checks the certificate against the condition it extended, using
    /// only kernel operations on the recorded data.
    pub fn verify(&self, input: &Condition, ground: &Ground) -> Result<()> {
        let u = &ground.u;
        let r = &self.result;
        r.validate(u).map_err(|e| fail(format!("result invalid: {e}")))?;
        ensure(leq(r, input), || format!("result {r:?} does not extend {input:?}"))?;
        let support = r.support();
        let a_r = support.complement();
        match (&self.dense_set, self.clause, &self.witnesses) {
            (DenseSet::Da, 1, Witnesses::Target { a }) => {
                ensure(!u.contains(a), || format!("D_a parameter {a} is in u"))?;
                ensure(a.is_subset(&support), || format!("{a} not covered"))?;
                ensure(!r.p0.difference(a).is_empty(), || "p0 ∖ a is empty".into())?;
                ensure(!r.p1.difference(a).is_empty(), || "p1 ∖ a is empty".into())
            }
            (DenseSet::Ei, 1, Witnesses::Point { i }) => {
                ensure(support.contains_nat(i), || format!("point {i} undecided"))
            }
            (DenseSet::Cover, 1, Witnesses::Covered { x }) => {
                ensure(x.is_subset(&support), || format!("{x} not covered"))
            }
            (DenseSet::Def | DenseSet::Eef, 1, Witnesses::SymDiff { e, f }) => {
                ensure(e.symdiff(f).is_subset(&support), || "e △ f not covered".into())
            }
            (DenseSet::Def, 2, Witnesses::IdealAbsorb { e, f, head, rest }) => {
                let family = ground.ideal.as_ref();
                let rhs = p_star(r, e, f).union(&pieces_union(family, rest));
                ensure(!rest.contains(head), || "head repeated in rest".into())?;
                ensure(family.piece(*head).is_subset(&rhs), || {
                    format!("x_{head} not below p* ∪ rest")
                })
            }
            (DenseSet::Def, 3, Witnesses::IdealCover { e, f, cover }) => {
                let lhs = p_star(r, e, f).union(&a_r);
                ensure(lhs.is_subset(&pieces_union(ground.ideal.as_ref(), cover)), || {
                    format!("p* ∪ a_p not covered by pieces {cover:?}")
                })
            }
            (DenseSet::Eef, 2, Witnesses::FreeBetween { e, f, i, j }) => {
                let seq = ground.free.as_ref();
                let band = seq.term(*i).difference(&seq.term(*j));
                ensure(i < j, || format!("indices {i} >= {j}"))?;
                ensure(band.is_subset(&p_star(r, e, f)), || format!("c_{i} ∖ c_{j} not in p*"))
            }
            (DenseSet::Eef, 3, Witnesses::FreeAvoid { e, f, i }) => {
                let lhs = p_star(r, e, f).union(&a_r);
                ensure(lhs.is_disjoint(&ground.free.term(*i)), || {
                    format!("p* ∪ a_p meets c_{i}")
                })
            }
            (DenseSet::Eef, 4, Witnesses::FreeCoversTop { e, f }) => {
                let top = ground.free.term(0).complement();
                ensure(top.is_subset(&p_star(r, e, f)), || "-c_0 not in p*".into())
            }
            (set, clause, w) => Err(fail(format!(
                "witness {w:?} does not fit clause {clause} of {set:?}"
            ))),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }
}

fn certify(input: &Condition, ground: &Ground, cert: Certificate) -> Result<Certificate> {
    cert.verify(input, ground)?;
    Ok(cert)
}

fn in_da(p: &Condition, a: &IntervalSet) -> bool {
    a.is_subset(&p.support()) && !p.p0.difference(a).is_empty() && !p.p1.difference(a).is_empty()
}

/// Meets `D_a`: splits the region outside `p0 ∪ p1 ∪ a` into two fresh
/// non-members of `u`, one for each side, and sends the rest of `a` to `p1`.
pub fn extend_into_da(p: &Condition, a: &IntervalSet, ground: &Ground) -> Result<Certificate> {
    let u = &ground.u;
    if u.contains(a) {
        return Err(Error::Precondition(format!("D_a needs a ∉ u, got {a}")));
    }
    let result = if in_da(p, a) {
        p.clone()
    } else {
        let b = p.support().union(a);
        let (x0, x1) = atomless_split(&b.complement(), u)?;
        Condition::new(
            p.p0.union(&x0),
            p.p1.union(&x1).union(&a.difference(&p.p0)),
            u,
        )?
    };
    certify(
        p,
        ground,
        Certificate {
            dense_set: DenseSet::Da,
            clause: 1,
            mirrored: false,
            witnesses: Witnesses::Target { a: a.clone() },
            result,
        },
    )
}

/// Meets `E_i`. A singleton is not an element of an atomless interval
/// algebra, so the point is decided by adding to `p0` the coarsest dyadic cell
/// around it that stays inside the undecided region and outside `u`.
pub fn extend_into_ei(p: &Condition, i: &BigUint, ground: &Ground) -> Result<Certificate> {
    let u = &ground.u;
    let d = encode_nat(i);
    let support = p.support();
    let result = if support.contains(&d) {
        p.clone()
    } else {
        let gap = support.complement();
        let region = gap.component_of(&d).expect("undecided point lies in the complement");
        let cell = (1..)
            .map(|k| {
                let lo = d.truncate(k);
                let hi = lo.add_ulp(k);
                (lo, hi)
            })
            .find(|(lo, hi)| {
                *lo >= region.lo
                    && *hi <= region.hi
                    && !u.in_interval(&Interval::new(lo.clone(), hi.clone()))
            })
            .expect("cells shrink to the left end at d");
        Condition::new(p.p0.union(&IntervalSet::interval(cell.0, cell.1)), p.p1.clone(), u)?
    };
    certify(
        p,
        ground,
        Certificate {
            dense_set: DenseSet::Ei,
            clause: 1,
            mirrored: false,
            witnesses: Witnesses::Point { i: i.clone() },
            result,
        },
    )
}

/// Meets `{q : x ⊆ q0 ∪ q1}` for `x ∉ u` via [`star_extend`].
pub fn extend_into_cover(p: &Condition, x: &IntervalSet, ground: &Ground) -> Result<Certificate> {
    let result = star_extend(p, x, &ground.u)?;
    certify(
        p,
        ground,
        Certificate {
            dense_set: DenseSet::Cover,
            clause: 1,
            mirrored: false,
            witnesses: Witnesses::Covered { x: x.clone() },
            result,
        },
    )
}

/// Which of the four mutually exclusive regions around `a_p` the ultrafilter
/// picks: `e_p ∩ f_p` or `-(e_p ∪ f_p)` (both give clause 1), `e_p ∖ f_p`, or
/// `f_p ∖ e_p`.
enum Branch {
    SymDiffSmall,
    EOnly,
    FOnly,
}

fn branch(p: &Condition, e: &IntervalSet, f: &IntervalSet, u: &PointUltrafilter) -> Branch {
    let parts = derived_parts(p, e, f);
    if !u.contains(&parts.e_p.symdiff(&parts.f_p)) {
        Branch::SymDiffSmall
    } else if u.contains(&parts.e_p.difference(&parts.f_p)) {
        Branch::EOnly
    } else {
        Branch::FOnly
    }
}

type Step = (u8, Condition, Witnesses);

/// The `e_p ∖ f_p ∈ u` branch of the `D_{e,f}` density argument.
fn def_e_branch(p: &Condition, e: &IntervalSet, f: &IntervalSet, ground: &Ground) -> Result<Step> {
    let u = &ground.u;
    let family = ground.ideal.as_ref();
    let q = star_extend(p, &e.difference(f).complement(), u)?;
    let q_star = p_star(&q, e, f);
    let (e, f) = (e.clone(), f.clone());
    let xs = match ideal_oracle(&q_star, family)? {
        IdealOracleAnswer::Absorb { head, rest } => {
            return Ok((2, q, Witnesses::IdealAbsorb { e, f, head, rest }));
        }
        IdealOracleAnswer::Cover { witnesses } => witnesses,
    };
    // now a_q ⊆ e ∖ f and q* is covered by xs
    let a_q = q.support().complement();
    match ideal_oracle(&a_q, family)? {
        IdealOracleAnswer::Cover { witnesses: ys } => {
            let cover = merged(&xs, &ys);
            Ok((3, q, Witnesses::IdealCover { e, f, cover }))
        }
        IdealOracleAnswer::Absorb { head: y0, rest: ys } => {
            let y0_set = family.piece(y0);
            if u.contains(&a_q.intersect(&y0_set)) {
                let r = Condition::new(q.p0.clone(), q.p1.union(&a_q.difference(&y0_set)), u)?;
                let cover = merged(&[y0], &xs);
                Ok((3, r, Witnesses::IdealCover { e, f, cover }))
            } else {
                let r = Condition::new(q.p0.union(&a_q.intersect(&y0_set)), q.p1.clone(), u)?;
                Ok((2, r, Witnesses::IdealAbsorb { e, f, head: y0, rest: ys }))
            }
        }
    }
}

fn merged(first: &[usize], second: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(first.len() + second.len());
    for &n in first.iter().chain(second) {
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

/// Swaps `e`/`f` inside evidence produced by a mirrored run.
fn unswap(w: Witnesses) -> Witnesses {
    match w {
        Witnesses::IdealAbsorb { e, f, head, rest } => Witnesses::IdealAbsorb { e: f, f: e, head, rest },
        Witnesses::IdealCover { e, f, cover } => Witnesses::IdealCover { e: f, f: e, cover },
        Witnesses::FreeBetween { e, f, i, j } => Witnesses::FreeBetween { e: f, f: e, i, j },
        Witnesses::FreeAvoid { e, f, i } => Witnesses::FreeAvoid { e: f, f: e, i },
        Witnesses::FreeCoversTop { e, f } => Witnesses::FreeCoversTop { e: f, f: e },
        other => other,
    }
}

/// Shared driver for `D_{e,f}` and `E_{e,f}`. The `f_p ∖ e_p ∈ u` branch runs
/// the `e`-branch construction on the swapped condition `(p1, p0)` with `e`
/// and `f` exchanged; that swap leaves `p*` and `a_p` unchanged.
fn extend_pair(
    p: &Condition,
    e: &IntervalSet,
    f: &IntervalSet,
    ground: &Ground,
    dense_set: DenseSet,
    e_branch: fn(&Condition, &IntervalSet, &IntervalSet, &Ground) -> Result<Step>,
) -> Result<Certificate> {
    let u = &ground.u;
    let (clause, result, witnesses, mirrored) = match branch(p, e, f, u) {
        Branch::SymDiffSmall => {
            // e_p △ f_p ∉ u and p0 ∪ p1 ∉ u, hence e △ f ∉ u
            let q = star_extend(p, &e.symdiff(f), u)?;
            (1, q, Witnesses::SymDiff { e: e.clone(), f: f.clone() }, false)
        }
        Branch::EOnly => {
            let (clause, r, w) = e_branch(p, e, f, ground)?;
            (clause, r, w, false)
        }
        Branch::FOnly => {
            let (clause, r, w) = e_branch(&p.swapped(), f, e, ground)?;
            (clause, r.swapped(), unswap(w), true)
        }
    };
    certify(
        p,
        ground,
        Certificate {
            dense_set,
            clause,
            mirrored,
            witnesses,
            result,
        },
    )
}

pub fn extend_into_def(p: &Condition, e: &IntervalSet, f: &IntervalSet, ground: &Ground) -> Result<Certificate> {
    extend_pair(p, e, f, ground, DenseSet::Def, def_e_branch)
}

/// The `e_p ∖ f_p ∈ u` branch of the `E_{e,f}` density argument.
fn eef_e_branch(p: &Condition, e: &IntervalSet, f: &IntervalSet, ground: &Ground) -> Result<Step> {
    let u = &ground.u;
    let seq = ground.free.as_ref();
    let q = star_extend(p, &e.difference(f).complement(), u)?;
    let q_star = p_star(&q, e, f);
    let (e, f) = (e.clone(), f.clone());
    let i = match free_oracle(&q_star, seq)? {
        FreeOracleAnswer::Between { i, j } => return Ok((2, q, Witnesses::FreeBetween { e, f, i, j })),
        FreeOracleAnswer::CoversTop => return Ok((4, q, Witnesses::FreeCoversTop { e, f })),
        FreeOracleAnswer::Avoid { i } => i,
    };
    let a_q = q.support().complement();
    match free_oracle(&a_q, seq)? {
        FreeOracleAnswer::Avoid { i: j } => Ok((3, q, Witnesses::FreeAvoid { e, f, i: i.max(j) })),
        FreeOracleAnswer::Between { i: j, j: k } => {
            let band = seq.term(j).difference(&seq.term(k));
            if u.contains(&band) {
                let grow = band.union(&q.p0).complement();
                let r = Condition::new(q.p0.clone(), q.p1.union(&grow), u)?;
                Ok((3, r, Witnesses::FreeAvoid { e, f, i: i.max(k) }))
            } else {
                let r = Condition::new(q.p0.union(&band), q.p1.clone(), u)?;
                Ok((2, r, Witnesses::FreeBetween { e, f, i: j, j: k }))
            }
        }
        FreeOracleAnswer::CoversTop => {
            let c0 = seq.term(0);
            let inside = a_q.intersect(&c0);
            if !u.contains(&inside) {
                let r = Condition::new(q.p0.clone(), q.p1.union(&inside), u)?;
                Ok((3, r, Witnesses::FreeAvoid { e, f, i }))
            } else {
                let r = Condition::new(q.p0.union(&a_q.difference(&c0)), q.p1.clone(), u)?;
                Ok((4, r, Witnesses::FreeCoversTop { e, f }))
            }
        }
    }
}

pub fn extend_into_eef(p: &Condition, e: &IntervalSet, f: &IntervalSet, ground: &Ground) -> Result<Certificate> {
    extend_pair(p, e, f, ground, DenseSet::Eef, eef_e_branch)
}

/// Dispatches a request to its extender.
pub fn extend(p: &Condition, request: &Request, ground: &Ground) -> Result<Certificate> {
    match request {
        Request::Da { a } => extend_into_da(p, a, ground),
        Request::Ei { i } => extend_into_ei(p, i, ground),
        Request::Def { e, f } => extend_into_def(p, e, f, ground),
        Request::Eef { e, f } => extend_into_eef(p, e, f, ground),
        Request::Cover { x } => extend_into_cover(p, x, ground),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval_set::set;

    fn cond(p0: &str, p1: &str) -> Condition {
        Condition::new(set(p0), set(p1), &PointUltrafilter::third()).unwrap()
    }

    #[test]
    fn da_examples() {
        let g = Ground::canonical();
        let c = extend_into_da(&Condition::root(), &set("[1/2,3/4)"), &g).unwrap();
        // -b = [0,1/2) ∪ [3/4,1); its point component [0,1/2) splits at rank 3
        assert_eq!(c.result, cond("[1/8,1/4)", "[3/8,3/4)"));
        assert_eq!(extend_into_da(&c.result, &set("[1/2,3/4)"), &g).unwrap().result, c.result);
        let empty = extend_into_da(&Condition::root(), &IntervalSet::empty(), &g).unwrap();
        assert_eq!(empty.result, cond("[0,1/4)", "[1/2,3/4)"));
        assert!(matches!(
            extend_into_da(&Condition::root(), &set("[0,1/2)"), &g),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ei_examples() {
        let g = Ground::canonical();
        let one = extend_into_ei(&Condition::root(), &BigUint::from(1u32), &g).unwrap();
        assert_eq!(one.result, cond("[1/2,1)", "{}"));
        let zero = extend_into_ei(&Condition::root(), &BigUint::from(0u32), &g).unwrap();
        assert_eq!(zero.result, cond("[0,1/4)", "{}"));
        let p = cond("{}", "[0,1/8)");
        assert_eq!(extend_into_ei(&p, &BigUint::from(0u32), &g).unwrap().result, p);
    }

    #[test]
    fn ei_cell_stays_inside_the_gap() {
        let g = Ground::canonical();
        // enc(3) = 3/4; the gap around it is [5/8, 1)
        let p = cond("[0,1/4)u[1/2,5/8)", "{}");
        let c = extend_into_ei(&p, &BigUint::from(3u32), &g).unwrap();
        assert_eq!(c.result, cond("[0,1/4)u[1/2,5/8)u[3/4,1)", "{}"));
    }

    #[test]
    fn def_examples() {
        let g = Ground::canonical();
        let e = set("[0,1/4)");
        let same = extend_into_def(&Condition::root(), &e, &e, &g).unwrap();
        assert_eq!((same.clause, &same.result), (1, &Condition::root()));

        let c = extend_into_def(&Condition::root(), &set("[0,1/2)"), &IntervalSet::empty(), &g).unwrap();
        assert_eq!(c.clause, 3);
        assert!(!c.mirrored);
        assert_eq!(c.result, cond("[1/2,1)", "[0,1/4)"));
        assert!(matches!(&c.witnesses, Witnesses::IdealCover { cover, .. } if cover == &vec![1]));

        let m = extend_into_def(&Condition::root(), &IntervalSet::empty(), &set("[0,1/2)"), &g).unwrap();
        assert_eq!(m.clause, 3);
        assert!(m.mirrored);
        assert_eq!(m.result, cond("[0,1/4)", "[1/2,1)"));
    }

    #[test]
    fn eef_examples() {
        let g = Ground::canonical();
        let e = set("[0,1/4)");
        let same = extend_into_eef(&Condition::root(), &e, &e, &g).unwrap();
        assert_eq!((same.clause, &same.result), (1, &Condition::root()));

        let c = extend_into_eef(&Condition::root(), &set("[0,1/2)"), &IntervalSet::empty(), &g).unwrap();
        assert_eq!(c.clause, 3);
        assert_eq!(c.result, cond("[1/2,1)", "[0,1/4)"));
        assert!(matches!(c.witnesses, Witnesses::FreeAvoid { i: 1, .. }));

        let full = IntervalSet::full();
        assert_eq!(extend_into_eef(&Condition::root(), &full, &full, &g).unwrap().clause, 1);
    }

    /// Canonical terms, but answers `CoversTop` whenever `[1/2,1) ⊆ a`.
    struct TopFirst;

    impl FreeSeq for TopFirst {
        fn term(&self, i: usize) -> IntervalSet {
            InitialSegments.term(i)
        }
        fn classify(&self, a: &IntervalSet) -> Option<FreeOracleAnswer> {
            if self.term(0).complement().is_subset(a) {
                Some(FreeOracleAnswer::CoversTop)
            } else {
                InitialSegments.classify(a)
            }
        }
    }

    #[test]
    fn covers_top_branches() {
        let mut g = Ground::canonical();
        g.free = Arc::new(TopFirst);
        let full = IntervalSet::full();
        let empty = IntervalSet::empty();
        let c = extend_into_eef(&Condition::root(), &full, &empty, &g).unwrap();
        assert_eq!(c.clause, 4);
        assert_eq!(c.result, cond("[1/2,1)", "{}"));

        // with the point at 2/3, a_q ∩ c_0 = [0,1/2) is outside u
        let u = PointUltrafilter::new(2, 3).unwrap();
        g.u = u.clone();
        let c = extend_into_eef(&Condition::root(), &full, &empty, &g).unwrap();
        assert_eq!(c.clause, 3);
        assert_eq!(c.result, Condition::new(empty.clone(), set("[0,1/2)"), &u).unwrap());
        assert!(matches!(c.witnesses, Witnesses::FreeAvoid { i: 0, .. }));
    }

    struct Silent;

    impl IdealFamily for Silent {
        fn piece(&self, n: usize) -> IntervalSet {
            Annuli.piece(n)
        }
        fn classify(&self, _: &IntervalSet) -> Option<IdealOracleAnswer> {
            None
        }
    }

    #[test]
    fn undecided_custom_family_aborts() {
        let mut g = Ground::canonical();
        g.ideal = Arc::new(Silent);
        let r = extend_into_def(&Condition::root(), &set("[0,1/2)"), &IntervalSet::empty(), &g);
        assert!(matches!(r, Err(Error::OracleUnknown(_))));
    }

    #[test]
    fn tampered_certificates_fail() {
        let g = Ground::canonical();
        let mut c = extend_into_def(&Condition::root(), &set("[0,1/2)"), &IntervalSet::empty(), &g).unwrap();
        c.witnesses = Witnesses::IdealCover { e: set("[0,1/2)"), f: IntervalSet::empty(), cover: vec![2] };
        assert!(c.verify(&Condition::root(), &g).is_err());
        let mut c = extend_into_ei(&Condition::root(), &BigUint::from(1u32), &g).unwrap();
        c.clause = 2;
        assert!(c.verify(&Condition::root(), &g).is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let g = Ground::canonical();
        let c = extend_into_def(&Condition::root(), &set("[0,1/2)"), &IntervalSet::empty(), &g).unwrap();
        assert_eq!(
            c.to_json_line(),
            r#"{"dense_set":"Def","clause":3,"mirrored":false,"witnesses":{"kind":"ideal_cover","e":"[0/1,1/2)","f":"{}","cover":[1]},"result":{"p0":"[1/2,1/1)","p1":"[0/1,1/4)"}}"#
        );
        let back: Certificate = serde_json::from_str(&c.to_json_line()).unwrap();
        assert_eq!(back, c);
    }
}
