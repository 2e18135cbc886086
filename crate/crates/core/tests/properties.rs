//! Randomized invariants over small graphs.

use std::io::Write as _;

use bitvec::prelude::*;
use num_rational::Ratio;
use proptest::prelude::*;

use densest::adjacency::Adjacency;
use densest::bounds::{pass_bound_at_least_k, pass_bound_undirected, sheds_enough};
use densest::directed::{densest_directed, DirectedPeelState, Refresh, Side};
use densest::exact::{brute_force_profile, brute_force_undirected, exact_flow_undirected};
use densest::fixtures::gen_erdos_renyi;
use densest::graph_io::{Direction, DuplicatePolicy};
use densest::mr::{mr_densest_undirected, MrConfig};
use densest::peel::{
    d_core, densest_at_least_k, densest_at_least_k_in_memory, densest_undirected,
    densest_undirected_in_memory, induced_total, refresh_degrees, Degree, DenseResult, PeelState,
};
use densest::sketch::{densest_undirected_sketched, CountSketch, SketchParams};
use densest::{open_edge_stream, EdgeStream, Epsilon, NodeId, StreamOptions};

fn graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(NodeId, NodeId)>)> {
    (2..=max_n).prop_flat_map(|n| {
        let pair = (0..n as NodeId, 0..n as NodeId);
        (Just(n), prop::collection::vec(pair, 1..=3 * n))
    })
}

fn simple(n: usize, edges: &[(NodeId, NodeId)]) -> Option<EdgeStream> {
    let s = EdgeStream::undirected(n, edges).unwrap();
    (s.edge_count() > 0).then_some(s)
}

fn pairs(s: &EdgeStream) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    s.scan(|r| out.push((r.u, r.v))).unwrap();
    out
}

fn weighted(n: usize, edges: &[(NodeId, NodeId, f64)]) -> EdgeStream {
    EdgeStream::from_edges(
        n,
        edges.iter().copied(),
        Direction::Undirected,
        true,
        DuplicatePolicy::Dedupe,
    )
    .unwrap()
}

fn epsilon() -> impl Strategy<Value = Epsilon> {
    prop_oneof![
        Just(Epsilon::ZERO),
        (1u64..=4, 1u64..=4).prop_map(|(p, q)| Epsilon::new(p, q).unwrap()),
    ]
}

fn positive_epsilon() -> impl Strategy<Value = Epsilon> {
    (1u64..=4, 1u64..=4).prop_map(|(p, q)| Epsilon::new(p, q).unwrap())
}

fn members(n: usize, ids: &[NodeId]) -> BitVec {
    let mut m = bitvec![0; n];
    for &v in ids {
        m.set(v as usize, true);
    }
    m
}

fn check_result<D: Degree>(s: &EdgeStream, r: &DenseResult<D>) {
    let max = r
        .trace
        .iter()
        .map(|t| t.density)
        .fold(None, |acc: Option<D::Density>, d| match acc {
            Some(a) if a >= d => Some(a),
            _ => Some(d),
        })
        .unwrap();
    assert_eq!(max, r.best_density);
    let m = members(s.node_count(), &r.best_set);
    let recount: D = induced_total(s, &m).unwrap();
    assert_eq!(D::density_of(recount, r.best_set.len()), r.best_density);
    assert_eq!(r.passes, r.trace.len());
    for w in r.trace.windows(2) {
        assert!(w[1].n_alive < w[0].n_alive);
        assert_eq!(w[1].n_alive, w[0].n_alive - w[0].removed);
    }
    for t in &r.trace {
        assert!(t.removed >= 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn handshake_after_refresh((n, edges) in graph(16), keep in prop::collection::vec(any::<bool>(), 16)) {
        let s = EdgeStream::undirected(n, &edges).unwrap();
        let mut state = PeelState::<u64>::with_alive(keep[..n].iter().copied().collect());
        refresh_degrees(&s, &mut state).unwrap();
        state.check_handshake().unwrap();
        let alive: Vec<NodeId> = state.alive_ids().collect();
        let m = members(n, &alive);
        prop_assert_eq!(state.edges_alive, induced_total::<u64>(&s, &m).unwrap());
    }

    #[test]
    fn weighted_handshake(
        (n, edges) in graph(12),
        ws in prop::collection::vec(0.01f64..100.0, 36),
        keep in prop::collection::vec(any::<bool>(), 12),
    ) {
        let edges: Vec<_> = edges.iter().zip(&ws).map(|(&(u, v), &w)| (u, v, w)).collect();
        let s = weighted(n, &edges);
        let mut state = PeelState::<f64>::with_alive(keep[..n].iter().copied().collect());
        refresh_degrees(&s, &mut state).unwrap();
        state.check_handshake().unwrap();
    }

    #[test]
    fn stream_and_memory_traces_agree((n, edges) in graph(16), eps in epsilon()) {
        let Some(s) = simple(n, &edges) else { return Ok(()) };
        let a = densest_undirected::<u64>(&s, eps).unwrap();
        let b = densest_undirected_in_memory::<u64>(&s, eps).unwrap();
        prop_assert_eq!(&a, &b);
        check_result(&s, &a);
    }

    #[test]
    fn weighted_stream_and_memory_traces_agree(
        (n, edges) in graph(12),
        ws in prop::collection::vec(1u32..50, 36),
        eps in epsilon(),
    ) {
        let edges: Vec<_> = edges
            .iter()
            .zip(&ws)
            .filter(|(e, _)| e.0 != e.1)
            .map(|(&(u, v), &w)| (u, v, w as f64 / 4.0))
            .collect();
        if edges.is_empty() {
            return Ok(());
        }
        let s = weighted(n, &edges);
        let a = densest_undirected::<f64>(&s, eps).unwrap();
        let b = densest_undirected_in_memory::<f64>(&s, eps).unwrap();
        prop_assert_eq!(&a.trace, &b.trace);
        prop_assert_eq!(&a.best_set, &b.best_set);
        check_result(&s, &a);
    }

    #[test]
    fn plain_peeling_sheds_and_approximates((n, edges) in graph(14), eps in positive_epsilon()) {
        let Some(s) = simple(n, &edges) else { return Ok(()) };
        let r = densest_undirected::<u64>(&s, eps).unwrap();
        for t in &r.trace {
            prop_assert!(sheds_enough(t.removed, t.n_alive, eps));
        }
        prop_assert!(r.passes as u64 <= pass_bound_undirected(n, eps).unwrap());
        let adj = Adjacency::from_stream(&s).unwrap();
        let opt = brute_force_undirected(&adj, None).unwrap().optimum;
        let factor = Ratio::new(2 * (eps.num() + eps.den()), eps.den());
        prop_assert!(factor * r.best_density >= opt);
    }

    #[test]
    fn at_least_k_peeling((n, edges) in graph(14), k in 1usize..=14, eps in positive_epsilon()) {
        let Some(s) = simple(n, &edges) else { return Ok(()) };
        let k = k.min(n);
        let r = densest_at_least_k::<u64>(&s, k, eps).unwrap();
        prop_assert_eq!(&r, &densest_at_least_k_in_memory::<u64>(&s, k, eps).unwrap());
        check_result(&s, &r);
        prop_assert!(r.best_set.len() >= k);
        prop_assert!(r.passes as u64 <= pass_bound_at_least_k(n, k, eps).unwrap());
        let adj = Adjacency::from_stream(&s).unwrap();
        let opt = brute_force_profile(&adj).unwrap().at_least(k).unwrap();
        let factor = Ratio::new(3 * (eps.num() + eps.den()), eps.den());
        prop_assert!(factor * r.best_density >= opt.optimum);
        if opt.witness.len() > k {
            let factor = Ratio::new(2 * (eps.num() + eps.den()), eps.den());
            prop_assert!(factor * r.best_density >= opt.optimum);
        }
    }

    #[test]
    fn d_core_is_idempotent((n, edges) in graph(20), d in 1u64..5) {
        let s = EdgeStream::undirected(n, &edges).unwrap();
        let adj = Adjacency::from_stream(&s).unwrap();
        let core = d_core(&adj, d);
        let inside = members(n, &core);
        let kept: Vec<_> = pairs(&s)
            .into_iter()
            .filter(|&(u, v)| inside[u as usize] && inside[v as usize])
            .collect();
        let sub = Adjacency::from_edges(n, &kept).unwrap();
        prop_assert_eq!(d_core(&sub, d), core.clone());
        for &v in &core {
            prop_assert!(sub.degree(v) as u64 >= d);
        }
    }

    #[test]
    fn mr_matches_streaming(
        (n, edges) in graph(24),
        eps in epsilon(),
        shards in 1usize..9,
        salt in any::<u64>(),
        literal in any::<bool>(),
    ) {
        let Some(s) = simple(n, &edges) else { return Ok(()) };
        let config = MrConfig { literal_marks: literal, salt, ..MrConfig::new(shards) };
        let mr = mr_densest_undirected(&s, eps, &config).unwrap();
        prop_assert_eq!(mr.result, densest_undirected::<u64>(&s, eps).unwrap());
    }

    #[test]
    fn oracles_agree_and_witnesses_are_honest((n, edges) in graph(12)) {
        let Some(s) = simple(n, &edges) else { return Ok(()) };
        let adj = Adjacency::from_stream(&s).unwrap();
        let brute = brute_force_undirected(&adj, None).unwrap();
        let flow = exact_flow_undirected(&adj).unwrap();
        prop_assert_eq!(brute.optimum, flow.optimum);
        for w in [&brute.witness, &flow.witness] {
            let e = adj.induced_edges(&members(n, w).iter().by_vals().collect::<Vec<_>>());
            prop_assert_eq!(Ratio::new(e, w.len() as u64), brute.optimum);
        }
        let m = adj.edge_count();
        prop_assert!(brute.optimum >= Ratio::new(m, n as u64));
        prop_assert!(brute.optimum <= Ratio::new(n as u64 - 1, 2));
    }

    #[test]
    fn size_floored_optimum_is_monotone((n, edges) in graph(12)) {
        let Some(s) = simple(n, &edges) else { return Ok(()) };
        let adj = Adjacency::from_stream(&s).unwrap();
        let profile = brute_force_profile(&adj).unwrap();
        let opts: Vec<_> = (1..=n).map(|k| profile.at_least(k).unwrap().optimum).collect();
        for w in opts.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
        prop_assert_eq!(opts[0], brute_force_undirected(&adj, None).unwrap().optimum);
        prop_assert_eq!(opts[n - 1], Ratio::new(adj.edge_count(), n as u64));
    }

    #[test]
    fn directed_degree_sums_match(
        (n, edges) in graph(12),
        keep_s in prop::collection::vec(any::<bool>(), 12),
        keep_t in prop::collection::vec(any::<bool>(), 12),
    ) {
        let s = EdgeStream::directed(n, &edges).unwrap();
        let mut state = DirectedPeelState::new(n);
        for v in 0..n {
            if !keep_s[v] {
                state.remove(Side::S, v as NodeId);
            }
            if !keep_t[v] {
                state.remove(Side::T, v as NodeId);
            }
        }
        state.refresh(&s, Refresh::Both).unwrap();
        let out: u64 = state.outdeg.iter().sum();
        let inn: u64 = state.indeg.iter().sum();
        prop_assert_eq!(out, state.est);
        prop_assert_eq!(inn, state.est);
        for v in 0..n {
            if !state.alive_s[v] {
                prop_assert_eq!(state.outdeg[v], 0);
            }
            if !state.alive_t[v] {
                prop_assert_eq!(state.indeg[v], 0);
            }
        }
    }

    #[test]
    fn directed_result_recounts((n, edges) in graph(12), c in 0.2f64..5.0, eps in epsilon()) {
        let s = EdgeStream::directed(n, &edges).unwrap();
        if s.edge_count() == 0 {
            return Ok(());
        }
        let r = densest_directed(&s, c, eps).unwrap();
        let (ms, mt) = (members(n, &r.best_s), members(n, &r.best_t));
        let e = pairs(&s).iter().filter(|&&(u, v)| ms[u as usize] && mt[v as usize]).count();
        let expect = e as f64 / ((r.best_s.len() * r.best_t.len()) as f64).sqrt();
        prop_assert!((r.density_f64() - expect).abs() <= 1e-12 * expect.max(1.0));
        for w in r.trace.windows(2) {
            prop_assert!(w[1].n_s < w[0].n_s || w[1].n_t < w[0].n_t);
        }
    }

    #[test]
    fn isolated_nodes_are_estimated_exactly((n, edges) in graph(30), seed in any::<u64>()) {
        let s = EdgeStream::undirected(n, &edges).unwrap();
        let adj = Adjacency::from_stream(&s).unwrap();
        let mut sketch = CountSketch::new(3, 64, seed).unwrap();
        s.scan(|r| sketch.update(r.u, r.v)).unwrap();
        for x in 0..n as NodeId {
            if sketch.is_isolated(x, 0..n as NodeId) {
                prop_assert_eq!(sketch.estimate(x), adj.degree(x) as i64);
            }
        }
    }

    #[test]
    fn sketched_density_is_honest((n, edges) in graph(40), eps in epsilon(), b in 4usize..64, seed in any::<u64>()) {
        let Some(s) = simple(n, &edges) else { return Ok(()) };
        let params = SketchParams::new(b, seed);
        let r = densest_undirected_sketched(&s, eps, params).unwrap();
        let m = members(n, &r.result.best_set);
        let e: u64 = induced_total(&s, &m).unwrap();
        prop_assert_eq!(Ratio::new(e, r.result.best_set.len() as u64), r.result.best_density);
        prop_assert_eq!(r, densest_undirected_sketched(&s, eps, params).unwrap());
    }

    #[test]
    fn edge_list_files_round_trip(
        (n, edges) in graph(15),
        comments in 0usize..4,
    ) {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for _ in 0..comments {
            writeln!(f, "# note").unwrap();
        }
        for &(u, v) in &edges {
            writeln!(f, "n{u} n{v}").unwrap();
        }
        f.flush().unwrap();
        let s = open_edge_stream(f.path(), &StreamOptions::default()).unwrap();
        let loops = edges.iter().filter(|e| e.0 == e.1).count() as u64;
        prop_assert_eq!(
            s.edge_count(),
            edges.len() as u64 - loops - s.duplicates_collapsed()
        );
        prop_assert_eq!(s.self_loops(), loops);
        prop_assert!(s.node_count() <= n);
        for id in 0..s.node_count() as NodeId {
            prop_assert_eq!(s.nodes().id(s.label(id)), Some(id));
        }
        let first = pairs(&s);
        prop_assert_eq!(&first, &pairs(&s));
        for &(u, v) in &first {
            prop_assert!(u != v && (u as usize) < s.node_count() && (v as usize) < s.node_count());
        }
    }
}

#[test]
fn sketch_estimates_are_unbiased() {
    let g = gen_erdos_renyi(300, 0.1, 11);
    let s = g.to_stream().unwrap();
    let adj = Adjacency::from_stream(&s).unwrap();
    for tables in [1, 5] {
        for x in [0, 17, 150] {
            let d = adj.degree(x) as f64;
            let samples: Vec<f64> = (0..1000u64)
                .map(|seed| {
                    let mut sk = CountSketch::new(tables, 64, seed).unwrap();
                    s.scan(|r| sk.update(r.u, r.v)).unwrap();
                    sk.estimate(x) as f64
                })
                .collect();
            let mean = samples.iter().sum::<f64>() / 1000.0;
            let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 999.0;
            let se = (var / 1000.0).sqrt();
            assert!(
                (mean - d).abs() <= 3.0 * se,
                "t={tables} node {x}: mean {mean:.2}, degree {d}, se {se:.2}"
            );
        }
    }
}

#[test]
fn shard_residency_stays_near_ideal() {
    for seed in 0..5 {
        let s = gen_erdos_renyi(1500, 0.01, 300 + seed).to_stream().unwrap();
        for shards in [2, 4, 8] {
            let config = MrConfig { salt: seed, ..MrConfig::new(shards) };
            let eps = Epsilon::new(1, 2).unwrap();
            let r = mr_densest_undirected(&s, eps, &config).unwrap();
            for p in &r.metrics.phases {
                if p.ideal_shard_edges >= 100 {
                    assert!(
                        p.max_shard_edges <= 2 * p.ideal_shard_edges,
                        "R={shards} {}: {} vs ideal {}",
                        p.phase,
                        p.max_shard_edges,
                        p.ideal_shard_edges
                    );
                }
            }
        }
    }
}
