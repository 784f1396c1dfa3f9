//! Exact dyadic rationals in `[0, 1]` and the enumeration of ω by the dyadic
//! points of `[0, 1)`.
//!
//! A value below one is stored as its finite binary expansion `0.b1 b2 ... bk`,
//! packed most-significant-bit first into 64-bit limbs with trailing zero limbs
//! removed. That makes the representation unique (lowest terms) and lets the
//! derived lexicographic order coincide with the numeric order.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, ParseError, Result};

type Limbs = SmallVec<[u64; 2]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    // Declared first so that every fraction orders below one.
    Frac(Limbs),
    One,
}

/// An exact dyadic rational `numerator / 2^exponent` in `[0, 1]`, always in
/// lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyadic(Repr);

fn trimmed(mut limbs: Limbs) -> Limbs {
    while limbs.last() == Some(&0) {
        limbs.pop();
    }
    limbs
}

fn limbs_for(bits: u64) -> usize {
    bits.div_ceil(64) as usize
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic(Repr::Frac(Limbs::new()))
    }

    pub fn one() -> Self {
        Dyadic(Repr::One)
    }

    /// Builds `numerator / 2^exponent`, reducing to lowest terms.
    pub fn from_parts(numerator: &BigUint, exponent: u64) -> Result<Self> {
        let denominator = BigUint::one() << exponent;
        if *numerator > denominator {
            return Err(Error::DyadicRange(format!("{numerator}/2^{exponent} exceeds 1")));
        }
        if *numerator == denominator {
            return Ok(Self::one());
        }
        let len = limbs_for(exponent);
        let aligned = numerator << (64 * len as u64 - exponent);
        let digits = aligned.to_u64_digits();
        let mut limbs: Limbs = SmallVec::from_elem(0, len);
        for (k, digit) in digits.iter().enumerate() {
            limbs[len - 1 - k] = *digit;
        }
        Ok(Dyadic(Repr::Frac(trimmed(limbs))))
    }

    /// Convenience constructor for small literals; panics when out of range.
    pub fn new(numerator: u64, exponent: u32) -> Self {
        Self::from_parts(&BigUint::from(numerator), u64::from(exponent))
            .expect("dyadic literal out of range")
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Frac(l) if l.is_empty())
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::One)
    }

    /// Position of the last nonzero binary digit; zero for the values 0 and 1.
    pub fn exponent(&self) -> u64 {
        match &self.0 {
            Repr::One => 0,
            Repr::Frac(l) => match l.last() {
                None => 0,
                Some(last) => (l.len() as u64 - 1) * 64 + (64 - u64::from(last.trailing_zeros())),
            },
        }
    }

    pub fn numerator(&self) -> BigUint {
        match &self.0 {
            Repr::One => BigUint::one(),
            Repr::Frac(l) if l.is_empty() => BigUint::zero(),
            Repr::Frac(l) => {
                let digits: Vec<u64> = l.iter().rev().copied().collect();
                let packed = BigUint::from_slice(&u64_to_u32(&digits));
                packed >> (64 * l.len() as u64 - self.exponent())
            }
        }
    }

    /// The `j`-th 64-bit chunk of the binary expansion (zero past the end).
    /// The value one has no fractional digits and is handled by callers.
    pub(crate) fn limb(&self, j: usize) -> u64 {
        match &self.0 {
            Repr::One => 0,
            Repr::Frac(l) => l.get(j).copied().unwrap_or(0),
        }
    }

    pub(crate) fn limb_count(&self) -> usize {
        match &self.0 {
            Repr::One => 0,
            Repr::Frac(l) => l.len(),
        }
    }

    pub(crate) fn from_raw_limbs(limbs: impl IntoIterator<Item = u64>) -> Self {
        Dyadic(Repr::Frac(trimmed(limbs.into_iter().collect())))
    }

    /// `⌊self · 2^k⌋ / 2^k`.
    pub fn truncate(&self, k: u64) -> Self {
        match &self.0 {
            Repr::One => Self::one(),
            Repr::Frac(l) => {
                let keep = limbs_for(k);
                let mut limbs: Limbs = l.iter().take(keep).copied().collect();
                if limbs.len() == keep && !k.is_multiple_of(64) {
                    let last = keep - 1;
                    limbs[last] &= !(u64::MAX >> (k % 64));
                }
                Dyadic(Repr::Frac(trimmed(limbs)))
            }
        }
    }

    /// `self + 2^-k`. Requires `self` to be a multiple of `2^-k` below one.
    pub fn add_ulp(&self, k: u64) -> Self {
        debug_assert!(!self.is_one() && self.exponent() <= k);
        if k == 0 {
            return Self::one();
        }
        let len = limbs_for(k);
        let mut limbs: Limbs = (0..len).map(|j| self.limb(j)).collect();
        let mut idx = (k - 1) as usize / 64;
        let mut addend = 1u64 << (63 - (k - 1) % 64);
        loop {
            let (sum, carry) = limbs[idx].overflowing_add(addend);
            limbs[idx] = sum;
            if !carry {
                break;
            }
            if idx == 0 {
                return Self::one();
            }
            idx -= 1;
            addend = 1;
        }
        Dyadic(Repr::Frac(trimmed(limbs)))
    }

    /// `self - 2^-k`. Requires `self` positive and a multiple of `2^-k`.
    pub fn sub_ulp(&self, k: u64) -> Self {
        debug_assert!(!self.is_zero() && self.exponent() <= k && k > 0);
        let len = limbs_for(k);
        let mut limbs: Limbs = match &self.0 {
            // 1 = 0.111...1 (k ones) + 2^-k
            Repr::One => {
                let mut all: Limbs = SmallVec::from_elem(u64::MAX, len);
                if !k.is_multiple_of(64) {
                    all[len - 1] = !(u64::MAX >> (k % 64));
                }
                return Dyadic(Repr::Frac(trimmed(all)));
            }
            Repr::Frac(_) => (0..len).map(|j| self.limb(j)).collect(),
        };
        let mut idx = (k - 1) as usize / 64;
        let mut subtrahend = 1u64 << (63 - (k - 1) % 64);
        loop {
            let (diff, borrow) = limbs[idx].overflowing_sub(subtrahend);
            limbs[idx] = diff;
            if !borrow {
                break;
            }
            idx -= 1;
            subtrahend = 1;
        }
        Dyadic(Repr::Frac(trimmed(limbs)))
    }

    /// The dyadic with the fewest binary digits in `[lo, hi)`, if the range is
    /// nonempty.
    pub fn simplest_in(lo: &Dyadic, hi: &Dyadic) -> Option<Dyadic> {
        if lo >= hi {
            return None;
        }
        let target = lo.exponent();
        (0..=target).find_map(|k| {
            let floor = lo.truncate(k);
            let candidate = if floor == *lo { floor } else { floor.add_ulp(k) };
            (candidate < *hi).then_some(candidate)
        })
    }

    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        parse_dyadic(text, 0)
    }
}

fn u64_to_u32(digits: &[u64]) -> Vec<u32> {
    digits
        .iter()
        .flat_map(|d| [*d as u32, (*d >> 32) as u32])
        .collect()
}

/// Parses `num/den` (den a power of two) or a bare integer `0` / `1`.
/// `base` is the byte offset of `text` within the enclosing input.
pub(crate) fn parse_dyadic(text: &str, base: usize) -> std::result::Result<Dyadic, ParseError> {
    let (num_text, den_text, den_offset) = match text.find('/') {
        Some(slash) => (&text[..slash], Some(&text[slash + 1..]), base + slash + 1),
        None => (text, None, base),
    };
    let parse_digits = |s: &str, at: usize| -> std::result::Result<BigUint, ParseError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::new(at, format!("expected decimal digits, found {s:?}")));
        }
        Ok(s.parse::<BigUint>().expect("validated digits"))
    };
    let numerator = parse_digits(num_text, base)?;
    let denominator = match den_text {
        Some(d) => parse_digits(d, den_offset)?,
        None => BigUint::one(),
    };
    if denominator.is_zero() || denominator.count_ones() != 1 {
        return Err(ParseError::new(den_offset, "denominator must be a power of two"));
    }
    let exponent = denominator.bits() - 1;
    Dyadic::from_parts(&numerator, exponent)
        .map_err(|_| ParseError::new(base, "dyadic value must lie in [0, 1]"))
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let denominator = BigUint::one() << self.exponent();
        write!(f, "{}/{}", self.numerator(), denominator)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Position of ω's `n`-th point: `enc(0) = 0` and, for `n = 2^(k-1) + t` with
/// `0 ≤ t < 2^(k-1)`, `enc(n) = (2t + 1) / 2^k`.
///
/// In binary, `enc(n)` is `n` with its leading one moved to the end of the
/// fraction: `n = 1b…b` maps to `0.b…b1`.
pub fn encode(n: u64) -> Dyadic {
    if n == 0 {
        return Dyadic::zero();
    }
    let k = 64 - n.leading_zeros();
    let numerator = ((n - (1u64 << (k - 1))) << 1) | 1;
    Dyadic::from_raw_limbs([numerator << (64 - k)])
}

pub fn encode_nat(n: &BigUint) -> Dyadic {
    if let Ok(small) = u64::try_from(n) {
        return encode(small);
    }
    let k = n.bits();
    let t = n - (BigUint::one() << (k - 1));
    let numerator = (t << 1u32) + 1u32;
    Dyadic::from_parts(&numerator, k).expect("encoding stays below one")
}

/// Inverse of [`encode`]; `None` for the value one, which encodes no point.
pub fn decode(d: &Dyadic) -> Option<BigUint> {
    if d.is_one() {
        return None;
    }
    if d.is_zero() {
        return Some(BigUint::zero());
    }
    let k = d.exponent();
    Some((d.numerator() >> 1u32) + (BigUint::one() << (k - 1)))
}
