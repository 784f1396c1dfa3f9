//! The nonprincipal ultrafilter `u` on the interval algebra: evaluation at a
//! fixed non-dyadic rational point of `(0, 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval_set::{Interval, IntervalSet};

const CACHED_LIMBS: usize = 32;

/// `a ∈ u` iff the point lies in the real union of `a`'s intervals.
#[derive(Clone, PartialEq, Eq)]
pub struct PointUltrafilter {
    num: u64,
    den: u64,
    expansion: Vec<u64>,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

impl PointUltrafilter {
    /// Rejects points that are dyadic (the filter would be principal on ω's
    /// side of the encoding) or that lie outside `(0, 1)`.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::InvalidPoint(format!("{num}/{den} is not strictly inside (0,1)")));
        }
        if den >= 1 << 62 {
            return Err(Error::InvalidPoint(format!("denominator {den} too large")));
        }
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        if den.is_power_of_two() {
            return Err(Error::InvalidPoint(format!("{num}/{den} is dyadic")));
        }
        let mut point = Self {
            num,
            den,
            expansion: Vec::new(),
        };
        point.expansion = (0..CACHED_LIMBS).map(|j| point.compute_limb(j)).collect();
        Ok(point)
    }

    /// The default point `1/3`.
    pub fn third() -> Self {
        Self::new(1, 3).expect("1/3 is a valid point")
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    fn compute_limb(&self, j: usize) -> u64 {
        // remainder of num * 2^(64 j) modulo den, then 64 steps of long division
        let mut rem = self.num % self.den;
        let mut base = (1u128 << 64) % u128::from(self.den);
        let mut exp = j;
        let mut factor = 1 % self.den;
        while exp > 0 {
            if exp & 1 == 1 {
                factor = mul_mod(factor, base as u64, self.den);
            }
            base = (base * base) % u128::from(self.den);
            exp >>= 1;
        }
        rem = mul_mod(rem, factor, self.den);
        let mut limb = 0u64;
        for _ in 0..64 {
            rem <<= 1;
            limb <<= 1;
            if rem >= self.den {
                rem -= self.den;
                limb |= 1;
            }
        }
        limb
    }

    /// The `j`-th 64-bit chunk of the point's binary expansion.
    fn limb(&self, j: usize) -> u64 {
        self.expansion
            .get(j)
            .copied()
            .unwrap_or_else(|| self.compute_limb(j))
    }

    /// Compares a dyadic with the point. Never `Equal`, since the point is not
    /// dyadic.
    pub fn compare(&self, d: &Dyadic) -> Ordering {
        if d.is_one() {
            return Ordering::Greater;
        }
        for j in 0..d.limb_count() {
            match d.limb(j).cmp(&self.limb(j)) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        // d is a proper prefix of an infinite nonzero expansion
        Ordering::Less
    }

    pub fn in_interval(&self, iv: &Interval) -> bool {
        self.compare(&iv.lo) == Ordering::Less && self.compare(&iv.hi) == Ordering::Greater
    }

    pub fn contains(&self, a: &IntervalSet) -> bool {
        self.component(a).is_some()
    }

    /// The interval of `a` whose real span contains the point.
    pub fn component<'a>(&self, a: &'a IntervalSet) -> Option<&'a Interval> {
        let ivs = a.intervals();
        let idx = ivs.partition_point(|iv| self.compare(&iv.lo) == Ordering::Less);
        idx.checked_sub(1)
            .map(|k| &ivs[k])
            .filter(|iv| self.compare(&iv.hi) == Ordering::Greater)
    }

    /// The rank-`k` dyadic cell `[⌊p·2^k⌋/2^k, (⌊p·2^k⌋+1)/2^k)` around the point.
    pub fn cell(&self, k: u64) -> (Dyadic, Dyadic) {
        let limbs = k.div_ceil(64) as usize;
        let lo = Dyadic::from_raw_limbs((0..limbs).map(|j| self.limb(j))).truncate(k);
        let hi = lo.add_ulp(k);
        (lo, hi)
    }
}

impl fmt::Display for PointUltrafilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for PointUltrafilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointUltrafilter({self})")
    }
}

impl FromStr for PointUltrafilter {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (n, d) = text
            .split_once('/')
            .ok_or_else(|| Error::InvalidPoint(format!("expected num/den, got {text:?}")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidPoint(format!("bad integer {s:?}")))
        };
        Self::new(parse(n)?, parse(d)?)
    }
}

impl Serialize for PointUltrafilter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PointUltrafilter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Two disjoint nonempty pieces of `c`, both outside `u`.
///
/// Takes the rank-`k` cell `I_k` around the point for the least `k ≥ 1` whose
/// left and right rank-`k` neighbors both exist and fit inside the component
/// of `c` holding the point, and returns those two neighbors.
pub fn atomless_split(c: &IntervalSet, u: &PointUltrafilter) -> Result<(IntervalSet, IntervalSet)> {
    let component = u
        .component(c)
        .ok_or_else(|| Error::Precondition(format!("atomless_split needs c ∈ u, got {c}")))?;
    let mut k = 1u64;
    loop {
        let (lo, hi) = u.cell(k);
        if !lo.is_zero() && !hi.is_one() {
            let left = lo.sub_ulp(k);
            let right = hi.add_ulp(k);
            if left >= component.lo && right <= component.hi {
                return Ok((IntervalSet::interval(left, lo), IntervalSet::interval(hi, right)));
            }
        }
        k += 1;
    }
}
