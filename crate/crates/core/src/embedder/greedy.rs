use crate::domination::{find_dominating_pair, DominationParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::{embed_subgraph_oracle, EmbedOptions, EmbedOutcome, Embedding, InnerEmbedder, Phase, Tracer};

/// Host made of a full-degree side `F` and a side `V` carrying the
/// domination property `d`.
#[derive(Clone, Debug)]
pub struct FirstRegimeHost {
    pub graph: Graph,
    pub f: VertexSet,
    pub v: VertexSet,
    pub d: DominationParams,
}

impl FirstRegimeHost {
    pub fn new(graph: Graph, f: VertexSet, v: VertexSet, d: DominationParams) -> Result<Self> {
        check_partition(&graph, &[&f, &v])?;
        check_full(&graph, &f)?;
        if d.r > v.len() {
            return Err(Error::InvalidArgument(format!("r = {} exceeds |V| = {}", d.r, v.len())));
        }
        Ok(Self { graph, f, v, d })
    }

    /// Largest pattern order the greedy procedure accepts, `|F| + |V| − r`.
    pub fn capacity(&self) -> usize {
        self.graph.n() - self.d.r
    }
}

/// Three-block host: full-degree `V1`, a universal block `V2`, and a
/// domination block `V3`. `reserve` slots of `V1` are kept free for the
/// final stragglers.
#[derive(Clone, Debug)]
pub struct BlockHost {
    pub graph: Graph,
    pub v1: VertexSet,
    pub v2: VertexSet,
    pub v3: VertexSet,
    pub reserve: usize,
    pub d: DominationParams,
    inner: Graph,
}

impl BlockHost {
    pub fn new(
        graph: Graph,
        v1: VertexSet,
        v2: VertexSet,
        v3: VertexSet,
        reserve: usize,
        d: DominationParams,
    ) -> Result<Self> {
        check_partition(&graph, &[&v1, &v2, &v3])?;
        check_full(&graph, &v1)?;
        if reserve > v1.len() {
            return Err(Error::InvalidArgument(format!(
                "reserve {reserve} exceeds |V1| = {}",
                v1.len()
            )));
        }
        let inner = graph.induced_subgraph(&v2)?;
        Ok(Self { graph, v1, v2, v3, reserve, d, inner })
    }

    /// `G[V2]`, relabelled in ascending order of `V2`.
    pub fn inner(&self) -> &Graph {
        &self.inner
    }

    pub fn capacity(&self) -> usize {
        self.graph.n() - self.reserve
    }
}

fn check_partition(g: &Graph, parts: &[&VertexSet]) -> Result<()> {
    let mut seen = vec![false; g.n()];
    for part in parts {
        part.check_range(g.n())?;
        for v in part.iter() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!("vertex {v} lies in two blocks")));
            }
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(Error::InvalidArgument(format!("vertex {v} lies in no block"))),
        None => Ok(()),
    }
}

fn check_full(g: &Graph, set: &VertexSet) -> Result<()> {
    match set.iter().find(|&v| !g.is_full_vertex(v)) {
        Some(v) => Err(Error::InvalidArgument(format!("vertex {v} should have full degree"))),
        None => Ok(()),
    }
}

struct Placement<'a> {
    h: &'a Graph,
    g: &'a Graph,
    assign: Vec<usize>,
    /// Host vertices whose pattern preimages count towards `S_v`.
    counted: Vec<bool>,
    tracer: Tracer,
}

impl Placement<'_> {
    fn place(&mut self, v: usize, image: usize, phase: Phase) {
        self.assign[v] = image;
        self.tracer.record(v, image, phase);
    }

    fn s_v(&self, v: usize) -> VertexSet {
        self.h
            .neighbors(v)
            .map(|u| self.assign[u])
            .filter(|&x| x != usize::MAX && self.counted[x])
            .collect()
    }

    /// Places `pending` vertices one at a time into `free` until `quota` are
    /// placed. Returns the number of placements made before a failure.
    fn greedy(&mut self, pending: &mut Vec<usize>, free: &mut VertexSet, quota: usize) -> std::result::Result<(), usize> {
        for step in 0..quota {
            let s: Vec<VertexSet> = pending.iter().map(|&v| self.s_v(v)).collect();
            let (idx, image, phase) = if let Some(i) = s.iter().position(VertexSet::is_empty) {
                (i, free.iter().next().ok_or(step)?, Phase::EmptyNeighbourhood)
            } else {
                let mut owners = Vec::new();
                let mut families = Vec::new();
                let mut taken = VertexSet::new();
                for (i, sv) in s.iter().enumerate() {
                    if sv.is_disjoint(&taken) {
                        for x in sv.iter() {
                            taken.insert(x);
                        }
                        owners.push(i);
                        families.push(sv.clone());
                    }
                }
                match find_dominating_pair(self.g, free, &families) {
                    Ok(Some((u, i))) => (owners[i], u, Phase::Domination),
                    _ => return Err(step),
                }
            };
            let v = pending.remove(idx);
            *free = free.iter().filter(|&x| x != image).collect();
            self.place(v, image, phase);
        }
        Ok(())
    }
}

fn pad_pattern(h: &Graph, capacity: usize) -> Result<Graph> {
    if h.n() > capacity {
        return Err(Error::SizeMismatch(format!(
            "pattern has {} vertices, host accepts at most {capacity}",
            h.n()
        )));
    }
    Ok(h.add_isolated_vertices(capacity - h.n()))
}

fn finish(h: &Graph, host: &Graph, mut p: Placement<'_>, used_fallback: bool) -> Result<EmbedOutcome> {
    let n = h.n();
    p.assign.truncate(n);
    let embedding = Embedding::new(p.assign);
    embedding.validate(h, host)?;
    let trace = p.tracer.finish().into_iter().filter(|e| e.vertex < n).collect();
    Ok(EmbedOutcome { embedding, used_fallback, trace })
}

fn fallback(h: &Graph, host: &Graph, step: usize, opts: EmbedOptions) -> Result<EmbedOutcome> {
    if !opts.fallback_to_oracle {
        return Err(Error::NoDominatingPair { step });
    }
    match embed_subgraph_oracle(h, host)? {
        Some(embedding) => Ok(EmbedOutcome { embedding, used_fallback: true, trace: Vec::new() }),
        None => Err(Error::NoDominatingPair { step }),
    }
}

/// Greedy embedding into a [`FirstRegimeHost`].
///
/// The pattern is padded to [`FirstRegimeHost::capacity`] vertices. Its
/// `⌊|F|/2⌋` highest-degree vertices go to `F`. The rest are placed into `V`
/// one at a time: a vertex with no embedded neighbour in `V` takes the lowest
/// free slot; otherwise a disjoint family of the sets `S_v` is collected
/// greedily in ascending vertex order and the lowest dominating pair against
/// the free part of `V` decides the next placement. Once `|V| − r` vertices
/// sit in `V`, the remainder fills the other `F` slots.
///
/// With `fallback_to_oracle`, a failed query defers to
/// [`embed_subgraph_oracle`]; [`Error::NoDominatingPair`] then means the
/// pattern is not contained at all.
pub fn embed_first_regime(h: &Graph, host: &FirstRegimeHost, opts: EmbedOptions) -> Result<EmbedOutcome> {
    let hp = pad_pattern(h, host.capacity())?;
    let mut counted = vec![false; host.graph.n()];
    for x in host.v.iter() {
        counted[x] = true;
    }
    let mut p = Placement {
        h: &hp,
        g: &host.graph,
        assign: vec![usize::MAX; hp.n()],
        counted,
        tracer: Tracer::new(opts.trace),
    };
    let order = hp.top_degree_order();
    let top = host.f.len() / 2;
    let mut f_slots = host.f.iter();
    for &v in &order[..top] {
        p.place(v, f_slots.next().expect("top <= |F|"), Phase::FullDegree);
    }
    let mut pending: Vec<usize> = order[top..].to_vec();
    pending.sort_unstable();
    let mut free = host.v.clone();
    if let Err(step) = p.greedy(&mut pending, &mut free, host.v.len() - host.d.r) {
        return fallback(h, &host.graph, step, opts);
    }
    for (v, slot) in pending.into_iter().zip(f_slots) {
        p.place(v, slot, Phase::Leftover);
    }
    finish(h, &host.graph, p, false)
}

/// Three-phase embedding into a [`BlockHost`].
///
/// The pattern is padded to [`BlockHost::capacity`] vertices. The
/// `|V1| − reserve` highest-degree vertices go to `V1`, the next `|V2|` go to
/// `V2` through `embed_inner` on their induced subgraph, and the rest are
/// placed greedily into `V3` (as in [`embed_first_regime`], with `S_v`
/// counting images in `V2 ∪ V3`) until at most `reserve` remain. Those take
/// the reserved `V1` slots.
pub fn embed_second_regime(
    h: &Graph,
    host: &BlockHost,
    embed_inner: &mut InnerEmbedder<'_>,
    opts: EmbedOptions,
) -> Result<EmbedOutcome> {
    let hp = pad_pattern(h, host.capacity())?;
    let mut counted = vec![true; host.graph.n()];
    for x in host.v1.iter() {
        counted[x] = false;
    }
    let mut p = Placement {
        h: &hp,
        g: &host.graph,
        assign: vec![usize::MAX; hp.n()],
        counted,
        tracer: Tracer::new(opts.trace),
    };
    let order = hp.top_degree_order();
    let top = host.v1.len() - host.reserve;
    let mut v1_slots = host.v1.iter();
    for &v in &order[..top] {
        p.place(v, v1_slots.next().expect("top <= |V1|"), Phase::FullDegree);
    }

    let block_end = (top + host.v2.len()).min(order.len());
    let block: VertexSet = order[top..block_end].iter().copied().collect();
    if !block.is_empty() {
        let pattern = hp.induced_subgraph(&block)?;
        let inner_map = embed_inner(&pattern, &host.inner)?.ok_or_else(|| {
            Error::InnerEmbeddingFailed(format!(
                "no copy of a {}-vertex, {}-edge block in G[V2]",
                pattern.n(),
                pattern.m()
            ))
        })?;
        inner_map.validate(&pattern, &host.inner)?;
        for (i, v) in block.iter().enumerate() {
            p.place(v, host.v2.as_slice()[inner_map.image(i)], Phase::InnerBlock);
        }
    }

    let mut pending: Vec<usize> = order[block_end..].to_vec();
    pending.sort_unstable();
    let quota = pending.len().saturating_sub(host.reserve);
    let mut free = host.v3.clone();
    if let Err(step) = p.greedy(&mut pending, &mut free, quota) {
        return fallback(h, &host.graph, step, opts);
    }
    for (v, slot) in pending.into_iter().zip(v1_slots) {
        p.place(v, slot, Phase::Leftover);
    }
    finish(h, &host.graph, p, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random_models::{sample_gnp, GnpSpec};
    use rand::{Rng, SeedableRng};

    fn random_graph(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
        let m = m.min(crate::graph::binomial2(n));
        let mut g = Graph::empty(n);
        while g.m() < m {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn first_host(v_graph: Graph, f: usize, d: DominationParams) -> FirstRegimeHost {
        let nv = v_graph.n();
        let g = v_graph.join(&Graph::complete(f));
        FirstRegimeHost::new(g, (nv..nv + f).collect(), (0..nv).collect(), d).unwrap()
    }

    #[test]
    fn clique_side_embeds_everything() {
        let d = DominationParams::new(4, 2, 2).unwrap();
        let host = first_host(Graph::complete(8), 8, d);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let h = random_graph(&mut rng, 12, 10);
            let out = embed_first_regime(&h, &host, EmbedOptions::default()).unwrap();
            assert!(!out.used_fallback);
            out.embedding.validate(&h, &host.graph).unwrap();
        }
    }

    #[test]
    fn oversize_pattern_rejected() {
        let d = DominationParams::new(4, 2, 2).unwrap();
        let host = first_host(Graph::complete(8), 8, d);
        let res = embed_first_regime(&Graph::empty(13), &host, EmbedOptions::default());
        assert!(matches!(res, Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn sparse_side_fails_then_falls_back() {
        // V has no edges, so any pattern edge inside H' has no dominating vertex.
        let d = DominationParams::new(2, 1, 1).unwrap();
        let host = first_host(Graph::empty(6), 2, d);
        let h = Graph::complete(3).join(&Graph::empty(3));
        let res = embed_first_regime(&h, &host, EmbedOptions::default());
        assert!(matches!(res, Err(Error::NoDominatingPair { .. })), "{res:?}");

        let opts = EmbedOptions { fallback_to_oracle: true, ..Default::default() };
        match embed_first_regime(&h, &host, opts) {
            Ok(out) => {
                assert!(out.used_fallback);
                out.embedding.validate(&h, &host.graph).unwrap();
            }
            Err(Error::NoDominatingPair { .. }) => {
                assert!(embed_subgraph_oracle(&h, &host.graph).unwrap().is_none())
            }
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn random_sides_agree_with_oracle() {
        let d = DominationParams::new(3, 2, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut successes = 0;
        for seed in 0..150 {
            let side = sample_gnp(GnpSpec::new(10, 0.7, seed).unwrap());
            let host = first_host(side, 6, d);
            let h = random_graph(&mut rng, 13, 12);
            let trace = EmbedOptions { trace: true, ..Default::default() };
            match embed_first_regime(&h, &host, trace) {
                Ok(out) => {
                    successes += 1;
                    out.embedding.validate(&h, &host.graph).unwrap();
                    assert!(embed_subgraph_oracle(&h, &host.graph).unwrap().is_some());
                    assert_eq!(out.trace.len(), h.n());
                }
                Err(Error::NoDominatingPair { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(successes > 0);
    }

    fn block_host(v2: Graph, v3: Graph, n1: usize, reserve: usize) -> BlockHost {
        let (a, b) = (v2.n(), v3.n());
        let g = v2.join(&v3).join(&Graph::complete(n1));
        // Drop the V2-V3 cross edges the join added, keep them dense but not complete.
        let mut g = g;
        for u in 0..a {
            for v in a..a + b {
                if (u + v) % 3 == 0 {
                    g.remove_edge(u, v).unwrap();
                }
            }
        }
        let d = DominationParams::new(reserve.max(1), 1, 1).unwrap();
        BlockHost::new(g, (a + b..a + b + n1).collect(), (0..a).collect(), (a..a + b).collect(), reserve, d)
            .unwrap()
    }

    #[test]
    fn block_host_with_cliques() {
        let host = block_host(Graph::complete(5), Graph::complete(9), 6, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..200 {
            let h = random_graph(&mut rng, 18, 14);
            let out = embed_second_regime(&h, &host, &mut |p, g| embed_subgraph_oracle(p, g), EmbedOptions::default());
            match out {
                Ok(out) => out.embedding.validate(&h, &host.graph).unwrap(),
                Err(Error::NoDominatingPair { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
        let res = embed_second_regime(&Graph::empty(19), &host, &mut |p, g| embed_subgraph_oracle(p, g), EmbedOptions::default());
        assert!(matches!(res, Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn complete_blocks_always_embed() {
        let host = BlockHost::new(
            Graph::complete(20),
            (0..6).collect(),
            (6..10).collect(),
            (10..20).collect(),
            2,
            DominationParams::new(2, 1, 1).unwrap(),
        )
        .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let h = random_graph(&mut rng, 18, 30);
            let out = embed_second_regime(&h, &host, &mut |p, g| embed_subgraph_oracle(p, g), EmbedOptions::default())
                .unwrap();
            out.embedding.validate(&h, &host.graph).unwrap();
        }
    }

    #[test]
    fn host_invariants_checked() {
        let d = DominationParams::new(1, 1, 1).unwrap();
        assert!(FirstRegimeHost::new(Graph::empty(4), [0, 1].into(), [2, 3].into(), d).is_err());
        assert!(FirstRegimeHost::new(Graph::complete(4), [0].into(), [2, 3].into(), d).is_err());
    }
}
