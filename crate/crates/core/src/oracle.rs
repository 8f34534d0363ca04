//! Exhaustive ground truth on small orders.
//!
//! Graphs on at most [`MAX_ISO_ORDER`] vertices are encoded as a `u64` whose
//! top bits hold the upper triangle in graph6 order, so comparing codes
//! compares the adjacency strings lexicographically. The canonical form is
//! the minimum code over vertex orders that respect a colour-refined ordered
//! partition; classes of `m`-edge graphs are generated by adding one edge to
//! each class of `(m − 1)`-edge graphs and deduplicating canonical codes.

use std::collections::BTreeSet;

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::embedder::embed_subgraph_oracle;
use crate::error::{Error, Result};
use crate::graph::{binomial2, Graph};
use crate::rng;

pub const MAX_ISO_ORDER: usize = 10;
pub const DEFAULT_LABELED_CAP: u128 = 10_000_000;
/// Largest order [`exact_g`] and [`exact_f`] accept by default.
pub const DEFAULT_EXACT_ORDER: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationMode {
    Labeled,
    UpToIsomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalityWitness {
    pub verdict: bool,
    /// A target with no copy in the host; present iff `verdict` is false.
    pub failing_target: Option<Graph>,
    pub targets_checked: usize,
}

fn pair_bit(i: usize, j: usize) -> u64 {
    debug_assert!(i < j && j < MAX_ISO_ORDER);
    1u64 << (63 - (j * (j - 1) / 2 + i))
}

/// Mask of the bits that belong to columns `1..=j`.
fn prefix_mask(j: usize) -> u64 {
    let bits = j * (j + 1) / 2;
    if bits == 0 {
        0
    } else {
        !0u64 << (64 - bits)
    }
}

pub fn encode(g: &Graph) -> u64 {
    assert!(g.n() <= MAX_ISO_ORDER);
    g.edges().fold(0, |acc, (u, v)| acc | pair_bit(u, v))
}

pub fn decode(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if code & pair_bit(i, j) != 0 {
                g.add_edge(i, j).expect("pair in range");
            }
        }
    }
    g
}

/// Isomorphism-invariant colouring by iterated neighbour-colour multisets,
/// starting from degrees. Colour names are ranks of sorted signatures.
fn refined_colours(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colour = g.degrees();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| ranked.binary_search(&s).expect("signature present"))
            .collect();
        let count = ranked.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

struct Canon<'a> {
    g: &'a Graph,
    /// Colour required at each position.
    slot_colour: Vec<usize>,
    colour: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
    best: u64,
}

impl Canon<'_> {
    fn search(&mut self, j: usize, code: u64) {
        let n = self.g.n();
        if j == n {
            self.best = self.best.min(code);
            return;
        }
        let mask = prefix_mask(j);
        let block = |s: &Self, v: usize| {
            (0..j).fold(0u64, |acc, i| if s.g.has_edge(s.order[i], v) { acc | pair_bit(i, j) } else { acc })
        };
        let candidates: Vec<usize> = (0..n)
            .filter(|&v| !self.used[v] && self.colour[v] == self.slot_colour[j])
            .collect();
        let min_block = candidates.iter().map(|&v| block(self, v)).min().expect("cell not empty");
        let partial = code | min_block;
        if partial & mask > self.best & mask {
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if block(self, v) != min_block {
                continue;
            }
            // Swapping two unplaced twins is an automorphism fixing the prefix.
            if tried.iter().any(|&w| self.twins(v, w)) {
                continue;
            }
            tried.push(v);
            self.used[v] = true;
            self.order.push(v);
            self.search(j + 1, partial);
            self.order.pop();
            self.used[v] = false;
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        (0..self.g.n()).all(|x| x == a || x == b || self.g.has_edge(a, x) == self.g.has_edge(b, x))
    }
}

/// Canonical code: equal iff the graphs are isomorphic. This is the minimum
/// over colour-respecting orders, not over all `n!` orders.
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.n() <= MAX_ISO_ORDER, "canonical form needs n <= {MAX_ISO_ORDER}");
    let colour = refined_colours(g);
    let mut slot_colour = colour.clone();
    slot_colour.sort_unstable();
    let mut c = Canon {
        g,
        slot_colour,
        colour,
        order: Vec::with_capacity(g.n()),
        used: vec![false; g.n()],
        best: u64::MAX,
    };
    c.search(0, 0);
    c.best
}

pub fn canonical_form(g: &Graph) -> Graph {
    decode(g.n(), canonical_code(g))
}

/// Canonical codes of all `n`-vertex classes with `0..=max_m` edges, one
/// list per edge count in canonical order (descending code).
pub fn class_codes_by_edges(n: usize, max_m: usize) -> Result<Vec<Vec<u64>>> {
    if n > MAX_ISO_ORDER {
        return Err(Error::EnumerationTooLarge { requested: n as u128, cap: MAX_ISO_ORDER as u128 });
    }
    let max_m = max_m.min(binomial2(n));
    let mut levels = vec![vec![0u64]];
    for _ in 1..=max_m {
        let prev = levels.last().expect("level 0 present");
        let found: Vec<Vec<u64>> = crate::par_map(prev, |&code| {
            let g = decode(n, code);
            let mut out = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    if !g.has_edge(i, j) {
                        let mut h = g.clone();
                        h.add_edge(i, j).expect("pair in range");
                        out.push(canonical_code(&h));
                    }
                }
            }
            out
        });
        let level: BTreeSet<u64> = found.into_iter().flatten().collect();
        levels.push(level.into_iter().rev().collect());
    }
    Ok(levels)
}

/// Canonical representatives of the `n`-vertex, `m`-edge classes in
/// canonical order.
pub fn isomorphism_classes(n: usize, m: usize) -> Result<Vec<Graph>> {
    if m > binomial2(n) {
        return Ok(Vec::new());
    }
    let levels = class_codes_by_edges(n, m)?;
    Ok(levels[m].iter().map(|&c| decode(n, c)).collect())
}

/// `C(C(n,2), m)` labelled graphs with the edge sets in lexicographic order.
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    combo: Vec<usize>,
    done: bool,
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        let edges: Vec<(usize, usize)> = self.combo.iter().map(|&i| self.pairs[i]).collect();
        let g = Graph::from_edges(self.n, &edges).expect("pairs in range");
        self.done = !crate::domination::next_combination(&mut self.combo, self.pairs.len());
        Some(g)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

pub fn labeled_graphs(n: usize, m: usize, cap: u128) -> Result<LabeledGraphs> {
    let total = binomial2(n);
    let count = binomial(total as u128, m as u128);
    if count > cap {
        return Err(Error::EnumerationTooLarge { requested: count, cap });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    Ok(LabeledGraphs { n, pairs, combo: (0..m).collect(), done: m > total })
}

pub fn enumerate_graphs(n: usize, m: usize, mode: EnumerationMode) -> Result<Box<dyn Iterator<Item = Graph>>> {
    Ok(match mode {
        EnumerationMode::Labeled => Box::new(labeled_graphs(n, m, DEFAULT_LABELED_CAP)?),
        EnumerationMode::UpToIsomorphism => Box::new(isomorphism_classes(n, m)?.into_iter()),
    })
}

/// First target (in the given order) with no copy in `host`.
fn first_failure(host: &Graph, targets: &[Graph]) -> Result<UniversalityWitness> {
    const CHUNK: usize = 64;
    for (c, chunk) in targets.chunks(CHUNK).enumerate() {
        let found = crate::par_map(chunk, |t| embed_subgraph_oracle(t, host).map(|e| e.is_some()));
        for (i, ok) in found.into_iter().enumerate() {
            if !ok? {
                return Ok(UniversalityWitness {
                    verdict: false,
                    failing_target: Some(chunk[i].clone()),
                    targets_checked: c * CHUNK + i + 1,
                });
            }
        }
    }
    Ok(UniversalityWitness { verdict: true, failing_target: None, targets_checked: targets.len() })
}

/// Checks `host` against every class of `n`-vertex graphs with
/// `min(m, C(n,2))` edges. Containing every graph with exactly that many
/// edges implies containing every graph with fewer.
pub fn is_universal(host: &Graph, n: usize, m: usize) -> Result<UniversalityWitness> {
    if host.n() != n {
        return Err(Error::SizeMismatch(format!("host has {} vertices, targets have {n}", host.n())));
    }
    let targets = isomorphism_classes(n, m.min(binomial2(n)))?;
    first_failure(host, &targets)
}

/// Samples `samples` uniform labelled `m`-edge targets on `host.n()` vertices.
/// A positive verdict is evidence, not proof.
pub fn spot_check_universal(host: &Graph, m: usize, samples: usize, seed: u64) -> Result<UniversalityWitness> {
    let n = host.n();
    let total = binomial2(n);
    let m = m.min(total);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let targets: Vec<Graph> = (0..samples)
        .map(|i| {
            let mut r = rng::child_stream(seed, i as u64);
            let edges: Vec<(usize, usize)> = index::sample(&mut r, total, m).into_iter().map(|k| pairs[k]).collect();
            Graph::from_edges(n, &edges).expect("pairs in range")
        })
        .collect();
    first_failure(host, &targets)
}

fn check_exact_order(n: usize, max_n: usize) -> Result<()> {
    if n > max_n {
        return Err(Error::EnumerationTooLarge { requested: n as u128, cap: max_n as u128 });
    }
    Ok(())
}

/// `g(n, m)` with a witness host, for `n <= DEFAULT_EXACT_ORDER`.
pub fn exact_g(n: usize, m: usize) -> Result<(usize, Graph)> {
    exact_g_capped(n, m, DEFAULT_EXACT_ORDER)
}

/// Hosts are tried by increasing edge count and, within a count, in
/// canonical order, so the witness is deterministic.
pub fn exact_g_capped(n: usize, m: usize, max_n: usize) -> Result<(usize, Graph)> {
    check_exact_order(n, max_n)?;
    let total = binomial2(n);
    let m = m.min(total);
    let levels = class_codes_by_edges(n, total)?;
    let targets: Vec<Graph> = levels[m].iter().map(|&c| decode(n, c)).collect();
    for (t, hosts) in levels.iter().enumerate().skip(m) {
        for &code in hosts {
            let host = decode(n, code);
            if first_failure(&host, &targets)?.verdict {
                return Ok((t, host));
            }
        }
    }
    unreachable!("K_n is universal for every m")
}

/// `f(n, e) = C(n,2) − g(n, C(n,2) − e)`.
pub fn exact_f(n: usize, e: usize) -> Result<usize> {
    let total = binomial2(n);
    if e > total {
        return Err(Error::InvalidArgument(format!("e = {e} exceeds C({n},2) = {total}")));
    }
    Ok(total - exact_g(n, total - e)?.0)
}

/// `f(n, e)` from its definition: the largest class contained in every
/// `n`-vertex graph with `e` edges.
pub fn exact_f_direct(n: usize, e: usize) -> Result<usize> {
    check_exact_order(n, DEFAULT_EXACT_ORDER)?;
    let total = binomial2(n);
    if e > total {
        return Err(Error::InvalidArgument(format!("e = {e} exceeds C({n},2) = {total}")));
    }
    let levels = class_codes_by_edges(n, e)?;
    let hosts: Vec<Graph> = levels[e].iter().map(|&c| decode(n, c)).collect();
    for size in (0..=e).rev() {
        for &code in &levels[size] {
            let h = decode(n, code);
            let everywhere = crate::par_map(&hosts, |g| embed_subgraph_oracle(&h, g).map(|x| x.is_some()));
            if everywhere.into_iter().collect::<Result<Vec<bool>>>()?.into_iter().all(|b| b) {
                return Ok(size);
            }
        }
    }
    unreachable!("the empty graph is contained in every host")
}
