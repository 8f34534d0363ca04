use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::{Embedding, InnerEmbedder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelResult {
    /// Peeled vertices in peel order; independent in the original graph.
    pub s: Vec<usize>,
    /// Vertices still alive after the last peel.
    pub survivors: VertexSet,
    /// Graph induced on `survivors`, relabelled in ascending order.
    pub h_ell: Graph,
    /// Peeled vertices and every neighbour deleted with them.
    pub removed: VertexSet,
}

/// `⌊k(n−k)/(2m+k)⌋`, the number of peels that still leave `k` survivors.
pub fn peel_count(n: usize, m: usize, k: usize) -> usize {
    assert!(k <= n, "k = {k} exceeds n = {n}");
    let den = 2 * m as u128 + k as u128;
    if den == 0 {
        return 0;
    }
    (k as u128 * (n - k) as u128 / den) as usize
}

/// Removes a minimum-degree vertex (lowest label on ties) together with its
/// live neighbourhood, `ell` times.
pub fn peel_min_degree(h: &Graph, ell: usize) -> Result<PeelResult> {
    let n = h.n();
    let mut alive = vec![true; n];
    let mut deg = h.degrees();
    let mut s = Vec::with_capacity(ell);
    let mut removed = VertexSet::new();
    for completed in 0..ell {
        let Some(v) = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)) else {
            return Err(Error::ShrunkBelowTarget { completed, target: ell });
        };
        let doomed: Vec<usize> = std::iter::once(v)
            .chain(h.neighbors(v).filter(|&u| alive[u]))
            .collect();
        for &x in &doomed {
            alive[x] = false;
            removed.insert(x);
        }
        for &x in &doomed {
            for u in h.neighbors(x) {
                if alive[u] {
                    deg[u] -= 1;
                }
            }
        }
        s.push(v);
    }
    let survivors: VertexSet = (0..n).filter(|&v| alive[v]).collect();
    let h_ell = h.induced_subgraph(&survivors)?;
    Ok(PeelResult { s, survivors, h_ell, removed })
}

/// `inner` padded with isolated vertices to `k`, then `n − k` full-degree
/// vertices at labels `k..n`.
pub fn full_vertex_host(inner: &Graph, k: usize, n: usize) -> Result<Graph> {
    if inner.n() > k || k > n {
        return Err(Error::InvalidArgument(format!(
            "need inner size {} <= k = {k} <= n = {n}",
            inner.n()
        )));
    }
    Ok(inner.add_isolated_vertices(k - inner.n()).add_full_vertices(n - k))
}

/// Embeds `h` into [`full_vertex_host`]`(inner, k, h.n())`.
///
/// Peels `ℓ = peel_count(n, m, k)` vertices. Full-degree slots take the
/// removed non-peeled vertices, then survivors by descending degree, then
/// peeled vertices if room is left. The surviving part is embedded into
/// `inner` by `embed_inner`; peeled vertices left over have no neighbours
/// among the survivors and fill the unused inner slots.
pub fn embed_via_full_vertices(
    h: &Graph,
    k: usize,
    inner: &Graph,
    embed_inner: &mut InnerEmbedder<'_>,
) -> Result<Embedding> {
    let n = h.n();
    if k > n {
        return Err(Error::RegimeInfeasible(format!("k = {k} exceeds n = {n}")));
    }
    let ell = peel_count(n, h.m(), k);
    if inner.n() < k.saturating_sub(ell) || inner.n() > k {
        return Err(Error::RegimeInfeasible(format!(
            "inner graph has {} vertices, need between k - ell = {} and k = {k}",
            inner.n(),
            k.saturating_sub(ell)
        )));
    }
    let peel = peel_min_degree(h, ell)
        .map_err(|e| Error::RegimeInfeasible(format!("peeling failed: {e}")))?;
    if peel.removed.len() - ell > n - k {
        return Err(Error::RegimeInfeasible(format!(
            "peeling removed {} neighbours, only {} full-degree slots",
            peel.removed.len() - ell,
            n - k
        )));
    }

    let mut assign = vec![usize::MAX; n];
    let mut full_slots = k..n;
    let peeled: VertexSet = peel.s.iter().copied().collect();
    let survivors_by_degree = {
        let deg = h.degrees();
        let mut order = peel.survivors.as_slice().to_vec();
        order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        order
    };
    let to_full = peel
        .removed
        .iter()
        .filter(|&v| !peeled.contains(v))
        .chain(survivors_by_degree.iter().copied())
        .chain(peel.s.iter().copied());
    for (v, slot) in to_full.zip(full_slots.by_ref()) {
        assign[v] = slot;
    }

    let rest: VertexSet = peel.survivors.iter().filter(|&v| assign[v] == usize::MAX).collect();
    let mut used = vec![false; k];
    if !rest.is_empty() {
        let pattern = h.induced_subgraph(&rest)?;
        let inner_map = embed_inner(&pattern, inner)?.ok_or_else(|| {
            Error::InnerEmbeddingFailed(format!(
                "no copy of a {}-vertex, {}-edge residual in the inner graph",
                pattern.n(),
                pattern.m()
            ))
        })?;
        inner_map.validate(&pattern, inner)?;
        for (i, v) in rest.iter().enumerate() {
            let slot = inner_map.image(i);
            assign[v] = slot;
            used[slot] = true;
        }
    }
    let mut free_inner = (0..k).filter(|&x| !used[x]);
    for &v in &peel.s {
        if assign[v] == usize::MAX {
            assign[v] = free_inner.next().ok_or_else(|| {
                Error::RegimeInfeasible("no inner slot left for a peeled vertex".into())
            })?;
        }
    }

    let emb = Embedding::new(assign);
    emb.validate(h, &full_vertex_host(inner, k, n)?)?;
    Ok(emb)
}
