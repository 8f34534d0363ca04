//! Lower and upper bounds on `g(n, m)` evaluated with directed rounding.
//!
//! Every formula is evaluated as an [`Interval`]; lower bounds report the
//! lower end and upper bounds the upper end, converted exactly to
//! [`BigRational`]. Branch guards such as `m > n ln n` are decided exactly
//! (the log of an integer `>= 2` is irrational, so the comparison never ties)
//! with an f64 fast path.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::precise::{rational_to_f64, scaled_ln_le, Interval};

/// Depth of the two-copies recursion `g(n) <= g(⌈n/2⌉) + g(⌊n/2⌋) + ⌈n/2⌉⌊n/2⌋`.
pub const DOUBLING_DEPTH: u32 = 8;

fn c2(n: u64) -> u128 {
    n as u128 * n.saturating_sub(1) as u128 / 2
}

fn iv(x: u128) -> Interval {
    Interval::from_u128(x)
}

fn ratio(a: u128, b: u128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `ln x <= a / b` for an integer `x >= 2`.
fn ln_le(x: u64, a: u128, b: u128) -> bool {
    let l = iv(x as u128).ln();
    let r = iv(a) / iv(b);
    match l.compare(&r) {
        Some(std::cmp::Ordering::Greater) => false,
        Some(_) => true,
        None => scaled_ln_le(1, x, &ratio(a, b)),
    }
}

/// `m > n ln n`.
pub fn above_n_log_n(n: u64, m: u128) -> bool {
    n >= 2 && ln_le(n, m, n as u128)
}

/// `m < n^(3/2 − ε)`; an undecided enclosure counts as false.
fn below_power(n: u64, m: u128, epsilon: f64) -> bool {
    if m == 0 {
        return true;
    }
    let lhs = iv(m).ln();
    let rhs = (Interval::point(1.5) - Interval::point(epsilon)) * iv(n as u128).ln();
    lhs.certainly_lt(&rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    SmallM,
    SecondRegime,
    FirstRegime,
    AboveWindow,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::SmallM => "SmallM",
            Regime::SecondRegime => "SecondRegime",
            Regime::FirstRegime => "FirstRegime",
            Regime::AboveWindow => "AboveWindow",
        };
        f.write_str(s)
    }
}

/// `m < n/2`, then `m <= n ln n`, then `m < n^(3/2 − ε)`, else above.
pub fn classify_regime(n: u64, m: u128, epsilon: f64) -> Regime {
    if 2 * m < n as u128 {
        Regime::SmallM
    } else if !above_n_log_n(n, m) {
        Regime::SecondRegime
    } else if below_power(n, m, epsilon) {
        Regime::FirstRegime
    } else {
        Regime::AboveWindow
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Branch {
    pub name: &'static str,
    pub value: Interval,
}

/// Every lower-bound branch whose guard holds at `(n, m)`, with
/// `m` clamped to `C(n,2)`.
///
/// * `counting-dense`: `C(n,2)(1 − n ln n / m)` when `m > n ln n`.
/// * `counting-sparse`: `¼ C(k,2)` with real `k = m / ln m`, when
///   `m <= n ln n`, `m >= 3` and `k >= 2`.
/// * `counting-raw`: `C(n,2) n^(−n/m)`.
/// * `trivial`: `m`, since the host contains an `m`-edge graph.
pub fn lower_bound_branches(n: u64, m: u128) -> Vec<Branch> {
    let total = c2(n);
    let m = m.min(total);
    if m == 0 {
        return vec![Branch { name: "trivial", value: Interval::point(0.0) }];
    }
    let t = iv(total);
    let nn = iv(n as u128);
    let mm = iv(m);
    let mut out = Vec::new();
    if above_n_log_n(n, m) {
        let v = t * (Interval::point(1.0) - nn * nn.ln() / mm);
        out.push(Branch { name: "counting-dense", value: v });
    } else if m >= 3 {
        let k = mm / mm.ln();
        if k.lo >= 2.0 {
            let v = Interval::point(0.25) * (k * (k - Interval::point(1.0)) / Interval::point(2.0));
            out.push(Branch { name: "counting-sparse", value: v });
        }
    }
    let raw = t * (-(nn * nn.ln()) / mm).exp();
    out.push(Branch { name: "counting-raw", value: raw });
    out.push(Branch { name: "trivial", value: mm });
    out
}

fn lower_interval(n: u64, m: u128) -> (Interval, &'static str) {
    let branches = lower_bound_branches(n, m);
    let best = branches
        .iter()
        .max_by(|a, b| a.value.lo.total_cmp(&b.value.lo))
        .expect("trivial branch always present");
    let lo = best.value.lo.max(0.0);
    (Interval::new(lo, best.value.hi.max(lo)), best.name)
}

/// Largest branch of [`lower_bound_branches`], rounded down.
pub fn lower_bound_g(n: u64, m: u128) -> BigRational {
    lower_interval(n, m).0.lo_rational()
}

/// `2^22 m² / ln² m · (1 − 2m / (n ln n))`, the second-regime induction bound.
pub fn induction_bound(n: u64, m: u128) -> Interval {
    let mm = iv(m);
    let nn = iv(n as u128);
    let lm = mm.ln();
    Interval::point(4_194_304.0) * mm * mm / (lm * lm)
        * (Interval::point(1.0) - Interval::point(2.0) * mm / (nn * nn.ln()))
}

/// `16 m / ln m <= n <= 2m`, the window of [`induction_bound`].
pub fn induction_window(n: u64, m: u128) -> bool {
    m >= 2 && n as u128 <= 2 * m && m <= u64::MAX as u128 && !ln_le(m as u64, 16 * m, n as u128)
}

/// `C(n,2) − ε n³ ln n / (2^12 m)`, the first-regime construction count.
pub fn first_regime_bound(n: u64, m: u128, epsilon: f64) -> Interval {
    let nn = iv(n as u128);
    iv(c2(n)) - Interval::point(epsilon) * nn * nn * nn * nn.ln() / (Interval::point(4096.0) * iv(m))
}

struct UpperEval {
    epsilon: f64,
    memo: HashMap<(u64, u128, u32), (Interval, &'static str)>,
}

impl UpperEval {
    fn eval(&mut self, n: u64, m: u128, depth: u32) -> (Interval, &'static str) {
        if let Some(&hit) = self.memo.get(&(n, m, depth)) {
            return hit;
        }
        let total = c2(n);
        let m = m.min(total);
        let mut best = (iv(total), "complete");
        let mut consider = |cand: (Interval, &'static str)| {
            if cand.0.hi < best.0.hi {
                best = cand;
            }
        };
        if m == 0 {
            consider((Interval::point(0.0), "empty"));
        } else if m < total {
            if 2 * m < n as u128 {
                let (v, _) = self.eval(2 * m as u64, m, depth);
                consider((v, "isolated-padding"));
            }
            if induction_window(n, m) {
                consider((induction_bound(n, m), "induction"));
            }
            if above_n_log_n(n, m) && below_power(n, m, self.epsilon) {
                consider((first_regime_bound(n, m, self.epsilon), "first-regime"));
            }
            if depth > 0 && n >= 4 {
                let (a, b) = (n.div_ceil(2), n / 2);
                let (ua, _) = self.eval(a, m, depth - 1);
                let (ub, _) = self.eval(b, m, depth - 1);
                consider((ua + ub + iv(a as u128 * b as u128), "doubling"));
            }
        }
        self.memo.insert((n, m, depth), best);
        best
    }
}

fn upper_interval(n: u64, m: u128, epsilon: f64) -> (Interval, &'static str) {
    UpperEval { epsilon, memo: HashMap::new() }.eval(n, m, DOUBLING_DEPTH)
}

/// Smallest applicable construction bound, rounded up and capped by `C(n,2)`.
///
/// Candidates: padding with isolated vertices for `m < n/2`, the induction
/// bound inside its window, the first-regime count for
/// `n ln n < m < n^(3/2 − ε)`, and two joined copies of a smaller host.
pub fn upper_bound_g(n: u64, m: u128, epsilon: f64) -> BigRational {
    upper_interval(n, m, epsilon).0.hi_rational()
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub m: u128,
    pub epsilon: f64,
    pub regime: Regime,
    pub lower: BigRational,
    pub upper: BigRational,
    pub lower_enclosure: Interval,
    pub upper_enclosure: Interval,
    /// Winning formula for each side, then every lower branch that applied.
    pub notes: Vec<String>,
}

impl BoundReport {
    /// `lower <= upper`, decided on the exact endpoints.
    pub fn consistent(&self) -> bool {
        self.lower <= self.upper
    }

    pub fn total_pairs(&self) -> u128 {
        c2(self.n)
    }

    pub fn lower_fraction(&self) -> f64 {
        rational_to_f64(&self.lower) / c2(self.n).max(1) as f64
    }

    pub fn upper_fraction(&self) -> f64 {
        rational_to_f64(&self.upper) / c2(self.n).max(1) as f64
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            n: u64,
            m: String,
            epsilon: f64,
            regime: Regime,
            lower: f64,
            upper: f64,
            lower_exact: String,
            upper_exact: String,
            lower_fraction: f64,
            upper_fraction: f64,
            notes: &'a [String],
        }
        Out {
            n: self.n,
            m: self.m.to_string(),
            epsilon: self.epsilon,
            regime: self.regime,
            lower: self.lower_enclosure.lo,
            upper: self.upper_enclosure.hi,
            lower_exact: self.lower.to_string(),
            upper_exact: self.upper.to_string(),
            lower_fraction: self.lower_fraction(),
            upper_fraction: self.upper_fraction(),
            notes: &self.notes,
        }
        .serialize(serializer)
    }
}

pub fn bound_report(n: u64, m: u128, epsilon: f64) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("bounds need n >= 2, got {n}")));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} outside (0, 1/2)")));
    }
    let (lo, lo_name) = lower_interval(n, m);
    let (up, up_name) = upper_interval(n, m, epsilon);
    let mut notes = vec![format!("lower: {lo_name}"), format!("upper: {up_name}")];
    notes.extend(
        lower_bound_branches(n, m)
            .into_iter()
            .map(|b| format!("{} in [{:.6e}, {:.6e}]", b.name, b.value.lo, b.value.hi)),
    );
    Ok(BoundReport {
        n,
        m,
        epsilon,
        regime: classify_regime(n, m, epsilon),
        lower: lo.lo_rational(),
        upper: up.hi_rational(),
        lower_enclosure: lo,
        upper_enclosure: up,
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Universality,
    Unavoidability,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Universality => Side::Unavoidability,
            Side::Unavoidability => Side::Universality,
        }
    }
}

/// `value ↦ C(n,2) − value` with the side flipped.
pub fn duality_convert(n: u64, value: &BigRational, side: Side) -> Result<(BigRational, Side)> {
    let total = BigRational::from_integer(BigInt::from(c2(n)));
    if value.is_negative() || value > &total {
        return Err(Error::InvalidArgument(format!("value {value} outside [0, C({n},2)]")));
    }
    Ok((total - value, side.flip()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionReport {
    pub n: u64,
    pub m: String,
    pub lower_fraction: f64,
    pub upper_fraction: f64,
    pub strictly_inside: bool,
}

/// Bounds at `m = ⌊μ n ln n⌋`, normalised by `C(n,2)`.
pub fn transition_bounds(n: u64, mu: f64, epsilon: f64) -> Result<TransitionReport> {
    if n < 3 || mu.is_nan() || mu <= 0.0 {
        return Err(Error::InvalidArgument(format!("need n >= 3 and mu > 0, got n={n}, mu={mu}")));
    }
    let m = (Interval::point(mu) * iv(n as u128) * iv(n as u128).ln()).lo.floor().max(1.0) as u128;
    let r = bound_report(n, m, epsilon)?;
    let total = BigRational::from_integer(BigInt::from(c2(n)));
    let strictly_inside = !r.lower.is_zero() && r.lower.is_positive() && r.upper < total;
    Ok(TransitionReport {
        n,
        m: m.to_string(),
        lower_fraction: r.lower_fraction(),
        upper_fraction: r.upper_fraction(),
        strictly_inside,
    })
}

/// Smallest `n = 2^j >= 4` from which the transition fractions stay strictly
/// inside `(0, 1)` up to `2^max_log2`, or `None`.
pub fn transition_threshold(mu: f64, epsilon: f64, max_log2: u32) -> Result<Option<u64>> {
    let mut threshold = None;
    for j in 2..=max_log2 {
        let n = 1u64 << j;
        if transition_bounds(n, mu, epsilon)?.strictly_inside {
            threshold.get_or_insert(n);
        } else {
            threshold = None;
        }
    }
    Ok(threshold)
}
