//! The `(r, s, t)`-domination property.
//!
//! A graph has the property when for every `r`-set `R` and every `t`
//! pairwise disjoint `s`-sets `S_1..S_t` avoiding `R`, some vertex of `R` is
//! adjacent to every vertex of some `S_i`.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::par_map;
use crate::rng;

/// Default cap on adjacency-containment probes for the exact check.
pub const DEFAULT_WORK_CAP: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DominationParams {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl DominationParams {
    pub fn new(r: usize, s: usize, t: usize) -> Result<Self> {
        if r == 0 || s == 0 || t == 0 {
            return Err(Error::InvalidArgument(format!(
                "domination parameters must be positive, got ({r}, {s}, {t})"
            )));
        }
        Ok(Self { r, s, t })
    }

    /// Vertices consumed by one configuration, `r + s t`.
    pub fn footprint(&self) -> usize {
        self.r + self.s * self.t
    }
}

/// A choice of `R` and families with no dominating pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationCounterexample {
    #[serde(rename = "R")]
    pub r_set: VertexSet,
    pub families: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DominationCheck {
    Holds,
    Violated(DominationCounterexample),
}

impl DominationCheck {
    pub fn holds(&self) -> bool {
        matches!(self, DominationCheck::Holds)
    }
}

#[inline]
fn subset_of(set: &[u64], row: &[u64]) -> bool {
    set.iter().zip(row).all(|(s, r)| s & !r == 0)
}

fn validate_configuration(g: &Graph, r_set: &VertexSet, families: &[VertexSet]) -> Result<()> {
    for set in std::iter::once(r_set).chain(families) {
        if let Some(v) = set.max() {
            if v >= g.n() {
                return Err(Error::InvalidVertex { vertex: v, n: g.n() });
            }
        }
    }
    for (i, f) in families.iter().enumerate() {
        if !f.is_disjoint(r_set) {
            return Err(Error::InvalidArgument(format!("family {i} intersects R")));
        }
        for (j, other) in families.iter().enumerate().skip(i + 1) {
            if !f.is_disjoint(other) {
                return Err(Error::InvalidArgument(format!("families {i} and {j} overlap")));
            }
        }
    }
    Ok(())
}

/// Lowest `(i, v)` such that `v` in `R` is adjacent to all of `families[i]`.
/// Returns `(v, i)`.
pub fn find_dominating_pair(
    g: &Graph,
    r_set: &VertexSet,
    families: &[VertexSet],
) -> Result<Option<(usize, usize)>> {
    validate_configuration(g, r_set, families)?;
    Ok(dominating_pair_unchecked(g, r_set, families))
}

pub(crate) fn dominating_pair_unchecked(
    g: &Graph,
    r_set: &VertexSet,
    families: &[VertexSet],
) -> Option<(usize, usize)> {
    for (i, family) in families.iter().enumerate() {
        let bits = family.to_bits(g.words());
        if let Some(v) = r_set.iter().find(|&v| subset_of(&bits, g.row(v))) {
            return Some((v, i));
        }
    }
    None
}

fn binomial_capped(n: usize, k: usize, cap: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

/// Lexicographic successor of a `k`-combination of `0..n`.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in (i + 1)..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct PackingSearch<'a> {
    g: &'a Graph,
    r_rows: Vec<&'a [u64]>,
    avail: Vec<usize>,
    s: usize,
    t: usize,
    used: Vec<bool>,
    chosen: Vec<Vec<usize>>,
    work: u64,
    cap: u64,
}

impl PackingSearch<'_> {
    fn is_bad(&mut self, set: &[usize]) -> Result<bool> {
        self.work += self.r_rows.len() as u64;
        if self.work > self.cap {
            return Err(Error::ExactCheckInfeasible { cap: self.cap });
        }
        let mut bits = vec![0u64; self.g.words()];
        for &v in set {
            bits[v / 64] |= 1 << (v % 64);
        }
        Ok(!self.r_rows.iter().any(|row| subset_of(&bits, row)))
    }

    /// Chooses families with strictly increasing minima starting at `start`.
    fn dfs(&mut self, start: usize) -> Result<bool> {
        if self.chosen.len() == self.t {
            return Ok(true);
        }
        let need = self.s * (self.t - self.chosen.len());
        for first in start..self.avail.len() {
            if self.used[first] {
                continue;
            }
            let free_from_here = (first..self.avail.len()).filter(|&i| !self.used[i]).count();
            if free_from_here < need {
                return Ok(false);
            }
            let rest: Vec<usize> = ((first + 1)..self.avail.len()).filter(|&i| !self.used[i]).collect();
            if rest.len() < self.s - 1 {
                continue;
            }
            let mut combo: Vec<usize> = (0..self.s - 1).collect();
            loop {
                let mut idx = Vec::with_capacity(self.s);
                idx.push(first);
                idx.extend(combo.iter().map(|&c| rest[c]));
                let set: Vec<usize> = idx.iter().map(|&i| self.avail[i]).collect();
                if self.is_bad(&set)? {
                    for &i in &idx {
                        self.used[i] = true;
                    }
                    self.chosen.push(set);
                    if self.dfs(first + 1)? {
                        return Ok(true);
                    }
                    self.chosen.pop();
                    for &i in &idx {
                        self.used[i] = false;
                    }
                }
                if combo.is_empty() || !next_combination(&mut combo, rest.len()) {
                    break;
                }
            }
        }
        Ok(false)
    }
}

fn bad_packing_for(
    g: &Graph,
    r_set: &[usize],
    d: DominationParams,
    cap: u64,
) -> (Result<Option<Vec<Vec<usize>>>>, u64) {
    let in_r: Vec<bool> = {
        let mut v = vec![false; g.n()];
        for &x in r_set {
            v[x] = true;
        }
        v
    };
    let avail: Vec<usize> = (0..g.n()).filter(|&v| !in_r[v]).collect();
    let mut search = PackingSearch {
        g,
        r_rows: r_set.iter().map(|&v| g.row(v)).collect(),
        used: vec![false; avail.len()],
        avail,
        s: d.s,
        t: d.t,
        chosen: Vec::new(),
        work: 0,
        cap,
    };
    let found = search.dfs(0).map(|ok| ok.then(|| search.chosen.clone()));
    (found, search.work)
}

/// Exhaustive verification with the default work cap.
pub fn check_domination_exact(g: &Graph, d: DominationParams) -> Result<DominationCheck> {
    check_domination_exact_capped(g, d, DEFAULT_WORK_CAP)
}

/// Exhaustive verification. Returns the lexicographically first
/// counterexample (by `R`, then by the family list ordered by minimum).
/// Holds vacuously when `r + s t > n`.
pub fn check_domination_exact_capped(g: &Graph, d: DominationParams, cap: u64) -> Result<DominationCheck> {
    if d.footprint() > g.n() {
        return Ok(DominationCheck::Holds);
    }
    let r_count = binomial_capped(g.n(), d.r, cap as u128);
    if r_count > cap as u128 {
        return Err(Error::ExactCheckInfeasible { cap });
    }
    let mut r_sets = Vec::with_capacity(r_count as usize);
    let mut c: Vec<usize> = (0..d.r).collect();
    loop {
        r_sets.push(c.clone());
        if !next_combination(&mut c, g.n()) {
            break;
        }
    }
    // Fixed-size chunks with a per-chunk budget keep the verdict independent
    // of thread count.
    const CHUNK: usize = 64;
    let mut spent = 0u64;
    for chunk in r_sets.chunks(CHUNK) {
        let budget = cap - spent;
        let outcomes = par_map(chunk, |r| bad_packing_for(g, r, d, budget));
        let mut chunk_work = 0u64;
        for (r, (found, work)) in chunk.iter().zip(outcomes) {
            chunk_work += work;
            if let Some(families) = found? {
                return Ok(DominationCheck::Violated(DominationCounterexample {
                    r_set: r.iter().copied().collect(),
                    families: families.into_iter().map(VertexSet::from).collect(),
                }));
            }
        }
        spent += chunk_work;
        if spent > cap {
            return Err(Error::ExactCheckInfeasible { cap });
        }
    }
    Ok(DominationCheck::Holds)
}

/// Rough probe count of the exhaustive check, used to decide whether it is
/// affordable: `C(n, r)` times the number of `s`-sets times `r`.
pub fn exact_check_estimate(n: usize, d: DominationParams) -> u128 {
    let big = u128::MAX / 4;
    binomial_capped(n, d.r, big)
        .saturating_mul(binomial_capped(n.saturating_sub(d.r), d.s, big))
        .saturating_mul(d.r as u128)
}

fn random_configuration(n: usize, d: DominationParams, rng: &mut rng::Rng) -> (VertexSet, Vec<VertexSet>) {
    let total = d.footprint();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in 0..total {
        let j = rng.random_range(i..n);
        perm.swap(i, j);
    }
    let r_set: VertexSet = perm[..d.r].iter().copied().collect();
    let mut families: Vec<VertexSet> = perm[d.r..total]
        .chunks(d.s)
        .map(|c| c.iter().copied().collect())
        .collect();
    families.sort();
    (r_set, families)
}

/// Tries `trials` uniformly random configurations; returns the first (in
/// trial order) without a dominating pair. Trial `i` draws from
/// `rng::child_stream(seed, i)`.
pub fn refute_domination_randomized(
    g: &Graph,
    d: DominationParams,
    trials: usize,
    seed: u64,
) -> Result<Option<DominationCounterexample>> {
    if d.footprint() > g.n() {
        return Err(Error::InvalidArgument(format!(
            "r + s t = {} exceeds n = {}",
            d.footprint(),
            g.n()
        )));
    }
    const CHUNK: usize = 256;
    let idx: Vec<usize> = (0..trials).collect();
    let found = AtomicU64::new(u64::MAX);
    for chunk in idx.chunks(CHUNK) {
        let outcomes = par_map(chunk, |&i| {
            if (i as u64) > found.load(AtomicOrdering::Relaxed) {
                return None;
            }
            let mut rng = rng::child_stream(seed, i as u64);
            let (r_set, families) = random_configuration(g.n(), d, &mut rng);
            if dominating_pair_unchecked(g, &r_set, &families).is_none() {
                found.fetch_min(i as u64, AtomicOrdering::Relaxed);
                Some(DominationCounterexample { r_set, families })
            } else {
                None
            }
        });
        if let Some(cx) = outcomes.into_iter().flatten().next() {
            return Ok(Some(cx));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs<const N: usize>(a: [usize; N]) -> VertexSet {
        VertexSet::from(a)
    }

    #[test]
    fn dominating_pair_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(find_dominating_pair(&k4, &vs([0]), &[vs([1, 2])]).unwrap(), Some((0, 0)));
        let c5 = Graph::cycle(5);
        assert_eq!(find_dominating_pair(&c5, &vs([0]), &[vs([2, 3])]).unwrap(), None);
        let e = Graph::empty(6);
        assert_eq!(find_dominating_pair(&e, &vs([0, 1]), &[vs([2]), vs([3, 4])]).unwrap(), None);
    }

    #[test]
    fn dominating_pair_prefers_lowest_family_then_vertex() {
        // 3 dominates family 0, 2 and 3 both dominate family 1.
        let g = Graph::from_edges(6, &[(3, 0), (2, 1), (3, 1)]).unwrap();
        let got = find_dominating_pair(&g, &vs([2, 3]), &[vs([0]), vs([1])]).unwrap();
        assert_eq!(got, Some((3, 0)));
        let got = find_dominating_pair(&g, &vs([2, 3]), &[vs([1]), vs([0])]).unwrap();
        assert_eq!(got, Some((2, 0)));
    }

    #[test]
    fn overlapping_inputs_rejected() {
        let g = Graph::complete(5);
        assert!(matches!(
            find_dominating_pair(&g, &vs([0]), &[vs([0, 1])]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            find_dominating_pair(&g, &vs([0]), &[vs([1, 2]), vs([2, 3])]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn exact_examples() {
        let d = DominationParams::new(1, 2, 1).unwrap();
        assert!(check_domination_exact(&Graph::complete(5), d).unwrap().holds());
        // R = {0} has neighbourhood {1, 4}; {1, 2} is the first pair it misses.
        let c5 = check_domination_exact(&Graph::cycle(5), d).unwrap();
        let expected = DominationCounterexample { r_set: vs([0]), families: vec![vs([1, 2])] };
        assert_eq!(c5, DominationCheck::Violated(expected));
        // {2, 3} is a counterexample too, just not the first.
        assert_eq!(find_dominating_pair(&Graph::cycle(5), &vs([0]), &[vs([2, 3])]).unwrap(), None);
        let vac = DominationParams::new(2, 1, 2).unwrap();
        assert!(check_domination_exact(&Graph::empty(3), vac).unwrap().holds());
    }

    #[test]
    fn exact_cap_reports_infeasible() {
        let g = Graph::complete(30);
        let d = DominationParams::new(5, 3, 4).unwrap();
        assert!(matches!(
            check_domination_exact_capped(&g, d, 1000),
            Err(Error::ExactCheckInfeasible { cap: 1000 })
        ));
    }

    #[test]
    fn counterexample_json_shape() {
        let cx = DominationCounterexample { r_set: vs([0]), families: vec![vs([1, 2])] };
        assert_eq!(serde_json::to_string(&cx).unwrap(), r#"{"R":[0],"families":[[1,2]]}"#);
    }

    #[test]
    fn randomized_examples() {
        let one = DominationParams::new(1, 1, 1).unwrap();
        assert!(refute_domination_randomized(&Graph::empty(4), one, 1, 0).unwrap().is_some());
        let d = DominationParams::new(2, 2, 2).unwrap();
        assert!(refute_domination_randomized(&Graph::complete(9), d, 200, 3).unwrap().is_none());
        let d = DominationParams::new(1, 2, 1).unwrap();
        let cx = refute_domination_randomized(&Graph::cycle(5), d, 100, 11).unwrap().unwrap();
        assert_eq!(find_dominating_pair(&Graph::cycle(5), &cx.r_set, &cx.families).unwrap(), None);
        assert!(matches!(
            refute_domination_randomized(&Graph::cycle(5), DominationParams::new(2, 2, 2).unwrap(), 1, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn randomized_is_deterministic() {
        let g = Graph::cycle(9);
        let d = DominationParams::new(2, 2, 2).unwrap();
        let a = refute_domination_randomized(&g, d, 500, 99).unwrap();
        let b = refute_domination_randomized(&g, d, 500, 99).unwrap();
        assert_eq!(a, b);
    }
}
