use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph};

use super::Embedding;

/// Complete backtracking search for a copy of `h` in `g`.
///
/// Non-isolated pattern vertices are ordered so that each one has as many
/// already-placed neighbours as possible (ties: higher degree, lower label);
/// candidates are the unused common neighbours of those images with enough
/// degree, tried in ascending order. Isolated pattern vertices take the
/// lowest unused host vertices at the end.
pub fn embed_subgraph_oracle(h: &Graph, g: &Graph) -> Result<Option<Embedding>> {
    if h.n() > g.n() {
        return Err(Error::PatternTooLarge { pattern: h.n(), host: g.n() });
    }
    if h.m() > g.m() {
        return Ok(None);
    }
    let h_deg = h.degrees();
    let g_deg = g.degrees();
    {
        let mut hs = h_deg.clone();
        let mut gs = g_deg.clone();
        hs.sort_unstable_by(|a, b| b.cmp(a));
        gs.sort_unstable_by(|a, b| b.cmp(a));
        if hs.iter().zip(&gs).any(|(a, b)| a > b) {
            return Ok(None);
        }
    }

    let order = search_order(h, &h_deg);
    let pos: Vec<Option<usize>> = {
        let mut p = vec![None; h.n()];
        for (i, &v) in order.iter().enumerate() {
            p[v] = Some(i);
        }
        p
    };
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| h.neighbors(v).filter(|&u| pos[u].is_some_and(|j| j < i)).collect())
        .collect();

    let mut search = Search {
        h_deg: &h_deg,
        g,
        g_deg: &g_deg,
        order: &order,
        earlier: &earlier,
        assign: vec![usize::MAX; h.n()],
        used: vec![0u64; g.words()],
        scratch: vec![vec![0u64; g.words()]; order.len()],
    };
    if !search.extend(0) {
        return Ok(None);
    }
    let Search { mut assign, used, .. } = search;
    let mut free = (0..g.n()).filter(|&x| used[x / 64] >> (x % 64) & 1 == 0);
    for slot in assign.iter_mut().filter(|a| **a == usize::MAX) {
        *slot = free.next().expect("host has at least as many vertices as the pattern");
    }
    let emb = Embedding::new(assign);
    debug_assert!(emb.validate(h, g).is_ok());
    Ok(Some(emb))
}

fn search_order(h: &Graph, deg: &[usize]) -> Vec<usize> {
    let mut placed = vec![false; h.n()];
    let mut links = vec![0usize; h.n()];
    let mut order = Vec::new();
    let active: Vec<usize> = (0..h.n()).filter(|&v| deg[v] > 0).collect();
    for _ in 0..active.len() {
        let next = active
            .iter()
            .copied()
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                links[a]
                    .cmp(&links[b])
                    .then(deg[a].cmp(&deg[b]))
                    .then(b.cmp(&a))
            })
            .expect("an unplaced active vertex remains");
        placed[next] = true;
        order.push(next);
        for u in h.neighbors(next) {
            links[u] += 1;
        }
    }
    order
}

struct Search<'a> {
    h_deg: &'a [usize],
    g: &'a Graph,
    g_deg: &'a [usize],
    order: &'a [usize],
    earlier: &'a [Vec<usize>],
    assign: Vec<usize>,
    used: Vec<u64>,
    scratch: Vec<Vec<u64>>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let mut cand = std::mem::take(&mut self.scratch[depth]);
        if self.earlier[depth].is_empty() {
            cand.fill(u64::MAX);
        } else {
            cand.copy_from_slice(self.g.row(self.assign[self.earlier[depth][0]]));
            for &u in &self.earlier[depth][1..] {
                for (c, r) in cand.iter_mut().zip(self.g.row(self.assign[u])) {
                    *c &= r;
                }
            }
        }
        for (c, u) in cand.iter_mut().zip(&self.used) {
            *c &= !u;
        }
        let n = self.g.n();
        if !n.is_multiple_of(64) {
            if let Some(last) = cand.last_mut() {
                *last &= (1u64 << (n % 64)) - 1;
            }
        }
        let mut found = false;
        for x in iter_bits(&cand) {
            if self.g_deg[x] < self.h_deg[v] {
                continue;
            }
            self.assign[v] = x;
            self.used[x / 64] |= 1 << (x % 64);
            if self.extend(depth + 1) {
                found = true;
                break;
            }
            self.used[x / 64] &= !(1 << (x % 64));
            self.assign[v] = usize::MAX;
        }
        self.scratch[depth] = cand;
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Tries every injection of `h` into `g`.
    fn naive_contains(h: &Graph, g: &Graph) -> bool {
        fn go(h: &Graph, g: &Graph, v: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            if v == h.n() {
                return true;
            }
            for x in 0..g.n() {
                if used[x] {
                    continue;
                }
                if (0..v).any(|u| h.has_edge(u, v) && !g.has_edge(map[u], x)) {
                    continue;
                }
                used[x] = true;
                map.push(x);
                if go(h, g, v + 1, map, used) {
                    return true;
                }
                map.pop();
                used[x] = false;
            }
            false
        }
        go(h, g, 0, &mut Vec::new(), &mut vec![false; g.n()])
    }

    #[test]
    fn spec_examples() {
        let e = embed_subgraph_oracle(&Graph::path(4), &Graph::paw()).unwrap().unwrap();
        e.validate(&Graph::path(4), &Graph::paw()).unwrap();
        assert!(embed_subgraph_oracle(&Graph::complete(3), &Graph::path(4)).unwrap().is_none());
        let e = embed_subgraph_oracle(&Graph::empty(3), &Graph::cycle(5)).unwrap().unwrap();
        assert_eq!(e.as_slice(), &[0, 1, 2]);
        assert!(matches!(
            embed_subgraph_oracle(&Graph::empty(6), &Graph::cycle(5)),
            Err(Error::PatternTooLarge { pattern: 6, host: 5 })
        ));
    }

    #[test]
    fn agrees_with_naive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..3000 {
            let hn = rng.random_range(0..=6);
            let gn = rng.random_range(hn..=7);
            let mut h = Graph::empty(hn);
            let mut g = Graph::empty(gn);
            let ph = rng.random::<f64>();
            let pg = rng.random::<f64>();
            for u in 0..gn {
                for v in (u + 1)..gn {
                    if u < hn && v < hn && rng.random::<f64>() < ph {
                        h.add_edge(u, v).unwrap();
                    }
                    if rng.random::<f64>() < pg {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let got = embed_subgraph_oracle(&h, &g).unwrap();
            assert_eq!(got.is_some(), naive_contains(&h, &g), "h={h:?} g={g:?}");
            if let Some(e) = got {
                e.validate(&h, &g).unwrap();
            }
        }
    }

    #[test]
    fn wide_hosts() {
        let g = Graph::complete(70);
        let h = Graph::cycle(70);
        embed_subgraph_oracle(&h, &g).unwrap().unwrap().validate(&h, &g).unwrap();
        let h = Graph::complete(5).add_isolated_vertices(60);
        let e = embed_subgraph_oracle(&h, &Graph::cycle(70)).unwrap();
        assert!(e.is_none());
    }
}
