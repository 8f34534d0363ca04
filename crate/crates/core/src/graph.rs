//! Simple undirected graphs over `0..n` backed by a bit-matrix.
//!
//! Every row is a `Vec<u64>` slice of length `words`, so neighbourhood
//! intersections and containment tests are word-parallel. The edge count is
//! cached and kept in sync by every mutating method.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A sorted, duplicate-free set of vertex labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Bit-row representation over `words` 64-bit words.
    pub(crate) fn to_bits(&self, words: usize) -> Vec<u64> {
        let mut bits = vec![0u64; words];
        for v in self.iter() {
            bits[v / WORD] |= 1 << (v % WORD);
        }
        bits
    }

    pub(crate) fn check_range(&self, n: usize) -> Result<()> {
        match self.max() {
            Some(v) if v >= n => Err(Error::InvalidVertex { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Self {
            n,
            words,
            bits: vec![0; n * words],
            m: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set(u, v);
            }
        }
        g.m = n * n.saturating_sub(1) / 2;
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("path edges in range")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges).expect("cycle edges in range")
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star edges in range")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for u in 0..a {
            for v in a..(a + b) {
                g.set(u, v);
            }
        }
        g.m = a * b;
        g
    }

    /// Triangle 0-1-2 with pendant vertex 3 attached to 2.
    pub fn paw() -> Self {
        Self::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).expect("paw edges in range")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.bits[u * w + v / WORD] |= 1 << (v % WORD);
        self.bits[v * w + u / WORD] |= 1 << (u % WORD);
    }

    #[inline]
    fn clear(&mut self, u: usize, v: usize) {
        let w = self.words;
        self.bits[u * w + v / WORD] &= !(1 << (v % WORD));
        self.bits[v * w + u / WORD] &= !(1 << (u % WORD));
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::InvalidVertex { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
        }
        Ok(())
    }

    /// Adds `uv`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.set(u, v);
        self.m += 1;
        Ok(true)
    }

    /// Removes `uv`; returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Ok(false);
        }
        self.clear(u, v);
        self.m -= 1;
        Ok(true)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            iter_bits(self.row(u))
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_full_vertex(&self, v: usize) -> bool {
        self.degree(v) + 1 == self.n
    }

    fn count_edges(&self) -> usize {
        let twice: usize = self.bits.iter().map(|w| w.count_ones() as usize).sum();
        twice / 2
    }

    fn debug_validate(&self) {
        debug_assert_eq!(self.count_edges(), self.m, "cached edge count out of sync");
        debug_assert!((0..self.n).all(|v| !self.has_edge(v, v)), "self-loop present");
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.set(u, v);
                }
            }
        }
        g.m = self.n * self.n.saturating_sub(1) / 2 - self.m;
        g.debug_validate();
        g
    }

    /// Subgraph induced by `set`, relabelled `0..|set|` in ascending order of
    /// the original labels.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<Graph> {
        set.check_range(self.n)?;
        let verts = set.as_slice();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j);
                    g.m += 1;
                }
            }
        }
        g.debug_validate();
        Ok(g)
    }

    /// Deletes `k` vertices of largest degree (ties to the lowest label) and
    /// returns the surviving induced subgraph together with the deleted set.
    /// When `k >= 1` the result has maximum degree at most `2m/k`.
    pub fn delete_top_degree(&self, k: usize) -> Result<(Graph, VertexSet)> {
        if k > self.n {
            return Err(Error::InvalidArgument(format!(
                "cannot delete {k} vertices from a graph on {}",
                self.n
            )));
        }
        let deleted: VertexSet = self.top_degree_order().into_iter().take(k).collect();
        let survivors: VertexSet = (0..self.n).filter(|v| !deleted.contains(*v)).collect();
        Ok((self.induced_subgraph(&survivors)?, deleted))
    }

    /// All vertices sorted by degree descending, ties by label ascending.
    pub fn top_degree_order(&self) -> Vec<usize> {
        let deg = self.degrees();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        order
    }

    /// Appends `count` vertices adjacent to every other vertex.
    pub fn add_full_vertices(&self, count: usize) -> Graph {
        let n = self.n + count;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.set(u, v);
        }
        for u in self.n..n {
            for v in 0..u {
                g.set(u, v);
            }
        }
        g.m = self.m + count * self.n + count * count.saturating_sub(1) / 2;
        g.debug_validate();
        g
    }

    /// Appends `count` isolated vertices.
    pub fn add_isolated_vertices(&self, count: usize) -> Graph {
        let mut g = Graph::empty(self.n + count);
        for (u, v) in self.edges() {
            g.set(u, v);
        }
        g.m = self.m;
        g
    }

    /// Disjoint union of `self` and `other` with every cross pair joined.
    pub fn join(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.set(u, v);
        }
        for (u, v) in other.edges() {
            g.set(self.n + u, self.n + v);
        }
        for u in 0..self.n {
            for v in self.n..n {
                g.set(u, v);
            }
        }
        g.m = self.m + other.m + self.n * other.n;
        g.debug_validate();
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set(perm[u], perm[v]);
        }
        g.m = self.m;
        g
    }

    /// Whether every edge of `other` (same order) is an edge of `self`.
    pub fn contains_edges_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| b & !a == 0)
    }
}

pub(crate) fn iter_bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut word = w;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * WORD + b)
            }
        })
    })
}

pub fn binomial2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
