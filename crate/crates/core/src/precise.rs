//! Directed-rounding arithmetic.
//!
//! [`Interval`] is an f64 enclosure: every operation rounds its lower end
//! down and its upper end up, so the true real value always lies inside.
//! Transcendental functions come from the platform libm, which is accurate
//! to within one ulp; their results are widened by [`LIBM_SLACK`] ulps.
//!
//! [`ln_enclosure`] brackets the natural log of an integer between two exact
//! rationals using the `atanh` series, for decisions that must not flip on
//! rounding.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

const LIBM_SLACK: u32 = 4;

fn down(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |acc, _| acc.next_down())
}

fn up(x: f64, ulps: u32) -> f64 {
    (0..ulps).fold(x, |acc, _| acc.next_up())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn from_u128(x: u128) -> Self {
        let f = x as f64;
        if x < (1u128 << 53) {
            Self::point(f)
        } else {
            Self::new(f.next_down(), f.next_up())
        }
    }

    pub fn from_usize(x: usize) -> Self {
        Self::from_u128(x as u128)
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0, "ln of non-positive interval");
        Self::new(down(self.lo.ln(), LIBM_SLACK), up(self.hi.ln(), LIBM_SLACK))
    }

    pub fn exp(self) -> Self {
        Self::new(
            down(self.lo.exp(), LIBM_SLACK).max(0.0),
            up(self.hi.exp(), LIBM_SLACK),
        )
    }

    /// `self^exponent` for a positive base.
    pub fn pow(self, exponent: Interval) -> Self {
        (exponent * self.ln()).exp()
    }

    pub fn powi(self, k: u32) -> Self {
        (0..k).fold(Interval::point(1.0), |acc, _| acc * self)
    }

    pub fn floor(self) -> Self {
        Self::new(self.lo.floor(), self.hi.floor())
    }

    pub fn ceil(self) -> Self {
        Self::new(self.lo.ceil(), self.hi.ceil())
    }

    pub fn min(self, other: Self) -> Self {
        Self::new(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    pub fn max(self, other: Self) -> Self {
        Self::new(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    pub fn clamp(self, lo: f64, hi: f64) -> Self {
        Self::new(self.lo.clamp(lo, hi), self.hi.clamp(lo, hi))
    }

    /// Every point of `self` is `<=` every point of `other`.
    pub fn certainly_le(&self, other: &Self) -> bool {
        self.hi <= other.lo
    }

    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    /// `Some(ordering)` when the enclosures decide it, `None` when they overlap.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Lower end as an exact rational.
    pub fn lo_rational(&self) -> BigRational {
        BigRational::from_float(self.lo).expect("finite interval end")
    }

    /// Upper end as an exact rational.
    pub fn hi_rational(&self) -> BigRational {
        BigRational::from_float(self.hi).expect("finite interval end")
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::new(down(self.lo + o.lo, 1), up(self.hi + o.hi, 1))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::new(down(self.lo - o.hi, 1), up(self.hi - o.lo, 1))
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo, 1), up(hi, 1))
    }
}

impl Div for Interval {
    type Output = Interval;
    fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by an interval containing zero");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(down(lo, 1), up(hi, 1))
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

/// Natural log of `n` enclosed as `ln 2` and the scaled mantissa.
///
/// Writes `n = 2^k y` with `1 <= y < 2`, so `ln n = k ln 2 + 2 atanh((y-1)/(y+1))`.
/// The atanh series is summed for `terms` terms; its positive tail is bounded
/// by `z^(2N+1) / ((2N+1)(1 - z^2))`.
pub fn ln_enclosure(n: u64, terms: usize) -> (BigRational, BigRational) {
    assert!(n >= 1, "ln of zero");
    let k = 63 - n.leading_zeros() as i64;
    let y = BigRational::new(BigInt::from(n), BigInt::from(1u64) << k as usize);
    let (y_lo, y_hi) = atanh_log(&y, terms);
    let two = BigRational::from_integer(BigInt::from(2));
    let (l2_lo, l2_hi) = atanh_log(&two, terms);
    let kk = BigRational::from_integer(BigInt::from(k));
    (&kk * l2_lo + y_lo, &kk * l2_hi + y_hi)
}

/// Bounds on `ln y` for `1 <= y <= 2`.
fn atanh_log(y: &BigRational, terms: usize) -> (BigRational, BigRational) {
    let one = BigRational::one();
    let z = (y - &one) / (y + &one);
    if z.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let z2 = &z * &z;
    let mut power = z.clone();
    let mut sum = BigRational::zero();
    for i in 0..terms {
        sum += &power / BigRational::from_integer(BigInt::from(2 * i + 1));
        power *= &z2;
    }
    let tail = &power / (BigRational::from_integer(BigInt::from(2 * terms + 1)) * (&one - &z2));
    let two = BigRational::from_integer(BigInt::from(2));
    (&two * &sum, &two * (sum + tail))
}

/// Decides `coefficient * ln(n) <= rhs` exactly, refining the log enclosure
/// until it separates. `ln n` is irrational for `n >= 2`, so this terminates
/// for rational `rhs`; the refinement is capped and the conservative answer
/// (`false`) returned on the cap.
pub fn scaled_ln_le(coefficient: u64, n: u64, rhs: &BigRational) -> bool {
    if n == 1 {
        return !rhs.is_negative();
    }
    let c = BigRational::from_integer(BigInt::from(coefficient));
    let mut terms = 24;
    while terms <= 4096 {
        let (lo, hi) = ln_enclosure(n, terms);
        if &(&c * &hi) <= rhs {
            return true;
        }
        if &(&c * &lo) > rhs {
            return false;
        }
        terms *= 2;
    }
    false
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
