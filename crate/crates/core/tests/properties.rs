use proptest::prelude::*;
use unigraph::bounds::lower_bound_g;
use unigraph::constructor::{build, first_regime_host, BuildConfig, Mode};
use unigraph::domination::{
    check_domination_exact, find_dominating_pair, refute_domination_randomized, DominationParams,
};
use unigraph::embedder::{
    embed_first_regime, embed_subgraph_oracle, embed_via_full_vertices, peel_count, peel_min_degree, EmbedOptions,
};
use unigraph::io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
use unigraph::oracle::{exact_g, is_universal};
use unigraph::{Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn top_degree_deletion_bound(g in graph(40)) {
        for k in 1..=g.n() {
            let (rest, deleted) = g.delete_top_degree(k).unwrap();
            prop_assert_eq!(deleted.len(), k);
            prop_assert_eq!(rest.n(), g.n() - k);
            prop_assert!(rest.max_degree() <= 2 * g.m() / k);
        }
    }

    #[test]
    fn peeling_keeps_k_survivors(g in graph(24), frac in 0.0f64..1.0) {
        let k = ((g.n() as f64) * frac) as usize;
        let ell = peel_count(g.n(), g.m(), k);
        let res = peel_min_degree(&g, ell).unwrap();
        prop_assert_eq!(res.s.len(), ell);
        prop_assert!(res.survivors.len() >= k);
        prop_assert_eq!(res.survivors.len() + res.removed.len(), g.n());
        for (i, &a) in res.s.iter().enumerate() {
            for &b in &res.s[i + 1..] {
                prop_assert!(!g.has_edge(a, b));
            }
        }
        prop_assert_eq!(res.h_ell.n(), res.survivors.len());
    }

    #[test]
    fn full_vertex_embedding_is_valid(h in graph(10), frac in 0.0f64..1.0) {
        let k = ((h.n() as f64) * frac) as usize;
        let ell = peel_count(h.n(), h.m(), k);
        let inner = Graph::complete(k.saturating_sub(ell));
        let host = unigraph::embedder::full_vertex_host(&inner, k, h.n()).unwrap();
        let e = embed_via_full_vertices(&h, k, &inner, &mut |p, g| embed_subgraph_oracle(p, g)).unwrap();
        prop_assert!(e.validate(&h, &host).is_ok());
    }

    #[test]
    fn graph6_round_trip(g in graph(70)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn dominating_pair_is_sound(g in graph(10), r in 1usize..=3, s in 1usize..=3, t in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(r + s * t <= g.n());
        let d = DominationParams::new(r, s, t).unwrap();
        let exact = check_domination_exact(&g, d).unwrap();
        if let Some(cx) = refute_domination_randomized(&g, d, 200, seed).unwrap() {
            prop_assert!(!exact.holds());
            prop_assert_eq!(find_dominating_pair(&g, &cx.r_set, &cx.families).unwrap(), None);
        }
        let r_set: VertexSet = (0..r).collect();
        let families: Vec<VertexSet> = (0..t).map(|i| (r + i * s..r + (i + 1) * s).collect()).collect();
        if let Some((v, i)) = find_dominating_pair(&g, &r_set, &families).unwrap() {
            prop_assert!(r_set.contains(v));
            prop_assert!(families[i].iter().all(|u| g.has_edge(v, u)));
        }
    }

    #[test]
    fn universality_is_monotone(g in graph(6), m in 0usize..6, extra in any::<u64>()) {
        let n = g.n();
        let before = is_universal(&g, n, m).unwrap().verdict;
        let mut bigger = g.clone();
        if n >= 2 {
            let u = (extra % n as u64) as usize;
            let v = ((extra >> 32) % n as u64) as usize;
            if u != v {
                bigger.add_edge(u, v).unwrap();
            }
        }
        if before {
            prop_assert!(is_universal(&bigger, n, m).unwrap().verdict);
        }
    }

    #[test]
    fn oracle_embedding_agrees_with_permutation_search(h in graph(6), g in graph(6)) {
        prop_assume!(h.n() <= g.n());
        let found = embed_subgraph_oracle(&h, &g).unwrap();
        if let Some(e) = &found {
            prop_assert!(e.validate(&h, &g).is_ok());
        }
        prop_assert_eq!(found.is_some(), brute_contains(&h, &g));
    }
}

fn brute_contains(h: &Graph, g: &Graph) -> bool {
    fn go(h: &Graph, g: &Graph, assign: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let v = assign.len();
        if v == h.n() {
            return true;
        }
        for x in 0..g.n() {
            if used[x] || (0..v).any(|u| h.has_edge(u, v) && !g.has_edge(assign[u], x)) {
                continue;
            }
            used[x] = true;
            assign.push(x);
            if go(h, g, assign, used) {
                return true;
            }
            assign.pop();
            used[x] = false;
        }
        false
    }
    go(h, g, &mut Vec::new(), &mut vec![false; g.n()])
}

#[test]
fn lower_bound_below_exact_value() {
    for n in 2..=5 {
        for m in 0..=n * (n - 1) / 2 {
            let (g, _) = exact_g(n, m).unwrap();
            let lower = lower_bound_g(n as u64, m as u128);
            assert!(lower <= num_rational::BigRational::from_integer(g.into()), "n={n} m={m}");
        }
    }
}

#[test]
fn first_regime_embeddings_are_confirmed() {
    let cfg = BuildConfig::new(Mode::Scaled, 0.25, 5);
    let (host, params, _) = first_regime_host(32, 60, &cfg, 5).unwrap();
    assert_eq!(params.k, host.graph.n());
    let mut rng_state = 1u64;
    let mut placed = 0;
    for _ in 0..40 {
        let mut h = Graph::empty(host.capacity());
        while h.m() < 6 {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let u = (rng_state >> 33) as usize % h.n();
            let v = (rng_state >> 13) as usize % h.n();
            if u != v {
                h.add_edge(u, v).unwrap();
            }
        }
        if let Ok(out) = embed_first_regime(&h, &host, EmbedOptions::default()) {
            out.embedding.validate(&h, &host.graph).unwrap();
            assert!(embed_subgraph_oracle(&h, &host.graph).unwrap().is_some());
            placed += 1;
        }
    }
    assert!(placed > 0);
}

#[test]
fn constructions_contain_random_targets() {
    for (n, m) in [(12, 8), (16, 20), (20, 15)] {
        let report = build(n, m, &BuildConfig::new(Mode::Scaled, 0.25, 9)).unwrap();
        assert!(report.verification.as_ref().unwrap().verdict, "({n}, {m})");
        assert_eq!(report.graph.n(), n);
    }
}
