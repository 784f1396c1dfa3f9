//! Seeded generators for sample inputs. Every report and test that draws
//! random data goes through [`rng`], so a seed fully determines the output.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dyadic::Dyadic;
use crate::interval_set::IntervalSet;
use crate::poset::Condition;
use crate::ultrafilter::PointUltrafilter;

/// Identifies the generator in report headers.
pub const ALGORITHM: &str = "ChaCha8Rng/seed_from_u64";

/// Finest grid used for random endpoints: multiples of `2^-GRID_EXPONENT`.
pub const GRID_EXPONENT: u32 = 6;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A union of up to four intervals with endpoints on a grid of random
/// fineness (at most `2^-GRID_EXPONENT`).
pub fn interval_set<R: Rng>(rng: &mut R) -> IntervalSet {
    let exponent = rng.gen_range(1..=GRID_EXPONENT);
    let cells = 1u64 << exponent;
    let count = rng.gen_range(0..=4);
    IntervalSet::from_intervals((0..count).map(|_| {
        let a = rng.gen_range(0..cells);
        let b = rng.gen_range(a + 1..=cells);
        (Dyadic::new(a, exponent), Dyadic::new(b, exponent))
    }))
}

pub fn set_outside<R: Rng>(rng: &mut R, u: &PointUltrafilter) -> IntervalSet {
    let a = interval_set(rng);
    if u.contains(&a) {
        a.complement()
    } else {
        a
    }
}

pub fn set_inside<R: Rng>(rng: &mut R, u: &PointUltrafilter) -> IntervalSet {
    set_outside(rng, u).complement()
}

/// A set on a uniformly chosen side of `u`.
pub fn set_mixed<R: Rng>(rng: &mut R, u: &PointUltrafilter) -> IntervalSet {
    if rng.gen_bool(0.5) {
        set_inside(rng, u)
    } else {
        set_outside(rng, u)
    }
}

pub fn pair<R: Rng>(rng: &mut R) -> (IntervalSet, IntervalSet) {
    let e = interval_set(rng);
    // share structure with e now and then so that clause 1 and the mirrored
    // branches are exercised too
    let f = match rng.gen_range(0..4) {
        0 => e.clone(),
        1 => e.symdiff(&interval_set(rng)),
        _ => interval_set(rng),
    };
    (e, f)
}

/// A pair whose extension element `(g ∩ e) ∪ (f ∖ g)` is nonzero, because
/// `e ∩ f` is.
pub fn nonzero_pair<R: Rng>(rng: &mut R) -> (IntervalSet, IntervalSet) {
    loop {
        let (e, f) = pair(rng);
        if !e.is_disjoint(&f) {
            return (e, f);
        }
    }
}

pub fn condition<R: Rng>(rng: &mut R, u: &PointUltrafilter) -> Condition {
    let p0 = set_outside(rng, u);
    let p1 = set_outside(rng, u).difference(&p0);
    Condition::new(p0, p1, u).expect("disjoint non-members of u")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generators_repeat() {
        let u = PointUltrafilter::third();
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..50 {
            assert_eq!(condition(&mut a, &u), condition(&mut b, &u));
            assert_eq!(pair(&mut a), pair(&mut b));
        }
    }

    #[test]
    fn sides_of_u() {
        let u = PointUltrafilter::third();
        let mut r = rng(1);
        for _ in 0..200 {
            assert!(!u.contains(&set_outside(&mut r, &u)));
            assert!(u.contains(&set_inside(&mut r, &u)));
            let (e, f) = nonzero_pair(&mut r);
            assert!(!e.intersect(&f).is_empty());
        }
    }
}
