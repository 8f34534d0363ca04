//! Seeded `G(n, p)` sampling and certified sampling with requirements.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rand::Rng as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::domination::{
    self, check_domination_exact_capped, refute_domination_randomized, DominationCheck,
    DominationParams,
};
use crate::error::{Error, Result};
use crate::graph::{binomial2, Graph};
use crate::precise::scaled_ln_le;
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpSpec {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpSpec {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("edge probability {p} outside [0, 1]")));
        }
        Ok(Self { n, p, seed })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBudget {
    pub max_tries: usize,
    pub refutation_trials: usize,
    /// Probe cap for the exhaustive domination check.
    pub exact_work_cap: u64,
}

impl Default for SampleBudget {
    fn default() -> Self {
        Self {
            max_tries: 100,
            refutation_trials: 10_000,
            exact_work_cap: 2_000_000,
        }
    }
}

/// How a sampled graph's domination property was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertLevel {
    Exact,
    RefutationSurvived { trials: usize },
}

impl fmt::Display for CertLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertLevel::Exact => write!(f, "exact"),
            CertLevel::RefutationSurvived { trials } => write!(f, "refutation-survived(trials={trials})"),
        }
    }
}

impl std::str::FromStr for CertLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "exact" {
            return Ok(CertLevel::Exact);
        }
        s.strip_prefix("refutation-survived(trials=")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|num| num.parse().ok())
            .map(|trials| CertLevel::RefutationSurvived { trials })
            .ok_or_else(|| Error::Parse(format!("unknown certificate level `{s}`")))
    }
}

impl Serialize for CertLevel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CertLevel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Each pair `u < v`, in lexicographic order, is an edge iff a uniform draw
/// from `[0, 1)` falls below `p`.
pub fn sample_gnp(spec: GnpSpec) -> Graph {
    let mut rng = rng::stream(spec.seed);
    let mut g = Graph::empty(spec.n);
    for u in 0..spec.n {
        for v in (u + 1)..spec.n {
            if rng.random::<f64>() < spec.p {
                g.add_edge(u, v).expect("pair in range");
            }
        }
    }
    g
}

/// `3 ln n <= p^s min(r/s, t)`, decided exactly (`p` is taken as the exact
/// binary rational it is stored as).
pub fn domination_threshold_ok(n: usize, p: f64, d: DominationParams) -> bool {
    if !(p > 0.0 && p <= 1.0) || n < 2 {
        return false;
    }
    let p = BigRational::from_float(p).expect("finite probability");
    let ratio = BigRational::new(BigInt::from(d.r), BigInt::from(d.s));
    let t = BigRational::from_integer(BigInt::from(d.t));
    let min = if ratio < t { ratio } else { t };
    let rhs = Pow::pow(p, d.s as u32) * min;
    if rhs.is_zero() {
        return false;
    }
    scaled_ln_le(3, n as u64, &rhs)
}

/// Why a single candidate was rejected.
fn domination_verdict(
    g: &Graph,
    d: DominationParams,
    budget: &SampleBudget,
    seed: u64,
) -> Result<std::result::Result<CertLevel, domination::DominationCounterexample>> {
    if d.footprint() > g.n() {
        return Ok(Ok(CertLevel::Exact));
    }
    if domination::exact_check_estimate(g.n(), d) <= budget.exact_work_cap as u128 {
        match check_domination_exact_capped(g, d, budget.exact_work_cap) {
            Ok(DominationCheck::Holds) => return Ok(Ok(CertLevel::Exact)),
            Ok(DominationCheck::Violated(cx)) => return Ok(Err(cx)),
            Err(Error::ExactCheckInfeasible { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let trials = budget.refutation_trials;
    Ok(match refute_domination_randomized(g, d, trials, seed)? {
        Some(cx) => Err(cx),
        None => Ok(CertLevel::RefutationSurvived { trials }),
    })
}

/// Samples until a graph misses at least `min_missing_edges` pairs and passes
/// the domination check. Try `i` uses seed `rng::derive_seed(spec.seed, i)`;
/// the first success in try order is returned.
pub fn sample_with_requirements(
    spec: GnpSpec,
    d: DominationParams,
    min_missing_edges: usize,
    budget: SampleBudget,
) -> Result<(Graph, CertLevel)> {
    if budget.max_tries == 0 {
        return Err(Error::InvalidArgument("max_tries must be at least 1".into()));
    }
    let total = binomial2(spec.n);
    let mut best: Option<(bool, usize, Graph)> = None;
    let mut last_cx = None;
    let mut reason = String::new();
    for i in 0..budget.max_tries {
        let seed = rng::derive_seed(spec.seed, i as u64);
        let g = sample_gnp(GnpSpec { seed, ..spec });
        let missing = total - g.m();
        let refute_seed = rng::derive_seed(seed, u64::MAX);
        let dominates = match domination_verdict(&g, d, &budget, refute_seed)? {
            Ok(cert) if missing >= min_missing_edges => return Ok((g, cert)),
            Ok(_) => {
                reason = format!("graph misses {missing} edges, {min_missing_edges} required");
                true
            }
            Err(cx) => {
                reason = format!("domination counterexample {}", serde_json::to_string(&cx).unwrap_or_default());
                last_cx = Some(Box::new(cx));
                false
            }
        };
        let better = match &best {
            None => true,
            Some((bd, bm, _)) => (dominates, missing) > (*bd, *bm),
        };
        if better {
            best = Some((dominates, missing, g));
        }
    }
    Err(Error::BudgetExhausted {
        tries: budget.max_tries,
        reason,
        best: best.map(|(_, _, g)| Box::new(g)),
        counterexample: last_cx,
    })
}
