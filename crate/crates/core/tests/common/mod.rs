#![allow(dead_code)]

use forcing_core::{Dyadic, IntervalSet};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// Interval sets with endpoints on a grid of `2^-1 … 2^-8`.
pub fn arb_set() -> impl Strategy<Value = IntervalSet> {
    (1u32..=8, prop::collection::vec((0u64..256, 1u64..=256), 0..5)).prop_map(|(exp, raw)| {
        let cells = 1u64 << exp;
        IntervalSet::from_intervals(raw.into_iter().filter_map(|(a, len)| {
            let a = a % cells;
            let b = (a + len).min(cells);
            (a < b).then(|| (Dyadic::new(a, exp), Dyadic::new(b, exp)))
        }))
    })
}

/// A set as a bitmap over the `2^K` cells of rank `K`: an independent model
/// of the algebra for sets with endpoints on that grid.
pub const K: u32 = 14;
pub const CELLS: usize = 1 << K;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid(pub Vec<bool>);

/// Grid index of a dyadic with exponent at most `K`.
pub fn grid_index(d: &Dyadic) -> Option<usize> {
    let e = d.exponent();
    if e > u64::from(K) {
        return None;
    }
    let scaled: BigUint = d.numerator() << (u64::from(K) - e);
    scaled.to_usize()
}

impl Grid {
    pub fn empty() -> Self {
        Grid(vec![false; CELLS])
    }

    pub fn from_set(s: &IntervalSet) -> Option<Self> {
        let mut g = Grid::empty();
        for iv in s.intervals() {
            let (lo, hi) = (grid_index(&iv.lo)?, grid_index(&iv.hi)?);
            g.0[lo..hi].iter_mut().for_each(|b| *b = true);
        }
        Some(g)
    }

    pub fn to_set(&self) -> IntervalSet {
        let mut runs = Vec::new();
        let mut k = 0;
        while k < CELLS {
            if self.0[k] {
                let start = k;
                while k < CELLS && self.0[k] {
                    k += 1;
                }
                runs.push((Dyadic::new(start as u64, K), Dyadic::new(k as u64, K)));
            } else {
                k += 1;
            }
        }
        IntervalSet::from_intervals(runs)
    }

    pub fn zip(&self, other: &Grid, op: impl Fn(bool, bool) -> bool) -> Grid {
        Grid(self.0.iter().zip(&other.0).map(|(&a, &b)| op(a, b)).collect())
    }

    pub fn not(&self) -> Grid {
        Grid(self.0.iter().map(|b| !b).collect())
    }

    pub fn cells(lo: usize, hi: usize) -> Grid {
        let mut g = Grid::empty();
        g.0[lo..hi].iter_mut().for_each(|b| *b = true);
        g
    }

    pub fn is_subset(&self, other: &Grid) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| !a || b)
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|b| !b)
    }
}

/// The cell of rank `K` holding `num/den`, for a non-dyadic rational.
pub fn point_cell(num: u64, den: u64) -> usize {
    ((u128::from(num) << K) / u128::from(den)) as usize
}
