//! Small worked instances with hand-checked answers.

use num_rational::Ratio;

use densest::adjacency::Adjacency;
use densest::directed::{c_grid, densest_directed, density_directed, sweep_c};
use densest::exact::{brute_force_directed, brute_force_undirected, exact_flow_undirected};
use densest::fixtures::{
    clique_plus_star_optimum, gen_clique_plus_star, gen_lemma5, gen_lemma6_pa,
};
use densest::graph_io::DuplicatePolicy;
use densest::mr::{
    mr_degree_phase, mr_densest_undirected, mr_filter_phase, MrConfig, RemovalMark, ShardSet,
};
use densest::peel::{
    d_core, densest_at_least_k, densest_undirected, density, peel_pass, refresh_degrees, PeelState,
};
use densest::sketch::CountSketch;
use densest::{EdgeStream, Epsilon, NodeId, StreamOptions};

fn eps(s: &str) -> Epsilon {
    s.parse().unwrap()
}

fn parse(text: &str, options: &StreamOptions) -> EdgeStream {
    EdgeStream::from_reader(text.as_bytes(), "<text>", options).unwrap()
}

fn clique(q: NodeId) -> Vec<(NodeId, NodeId)> {
    let mut e = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            e.push((a, b));
        }
    }
    e
}

fn k4_pendant() -> EdgeStream {
    let mut e = clique(4);
    e.push((3, 4));
    EdgeStream::undirected(5, &e).unwrap()
}

fn hub() -> EdgeStream {
    let e: Vec<_> = (1..10).map(|leaf| (leaf, 0)).collect();
    EdgeStream::directed(10, &e).unwrap()
}

#[test]
fn edge_list_accounting() {
    let opts = StreamOptions::default();
    let s = parse("a b\nb c\n", &opts);
    assert_eq!((s.node_count(), s.edge_count(), s.total_weight()), (3, 2, 2.0));
    let s = parse("a a\na b\n", &opts);
    assert_eq!((s.node_count(), s.edge_count(), s.self_loops()), (2, 1, 1));
    assert_eq!(parse("a b\na b\n", &opts).edge_count(), 1);
    let multi = StreamOptions {
        duplicates: DuplicatePolicy::Multigraph,
        ..StreamOptions::default()
    };
    assert_eq!(parse("a b\na b\n", &multi).edge_count(), 2);

    let s = parse("a b\nb c\n", &opts);
    assert_eq!(s.scan(|_| {}).unwrap().edges, 2);
    let mut calls = 0;
    assert_eq!(parse("", &opts).scan(|_| calls += 1).unwrap().edges, 0);
    assert_eq!(calls, 0);
}

#[test]
fn densities_and_degrees() {
    assert_eq!(density::<u64>(6, 4).unwrap(), Ratio::new(3, 2));
    assert_eq!(density::<u64>(1, 2).unwrap(), Ratio::new(1, 2));
    assert_eq!(density::<u64>(2, 3).unwrap(), Ratio::new(2, 3));
    assert!(density::<u64>(0, 0).is_err());

    let k4 = EdgeStream::undirected(4, &clique(4)).unwrap();
    let mut st = PeelState::<u64>::new(4);
    refresh_degrees(&k4, &mut st).unwrap();
    assert_eq!((st.deg.clone(), st.edges_alive), (vec![3; 4], 6));
    assert_eq!(peel_pass(&st, Epsilon::ZERO).unwrap(), vec![0, 1, 2, 3]);
    st.remove(0);
    refresh_degrees(&k4, &mut st).unwrap();
    assert_eq!((st.deg.clone(), st.edges_alive), (vec![0, 2, 2, 2], 3));
    for v in 1..4 {
        st.remove(v);
    }
    refresh_degrees(&k4, &mut st).unwrap();
    assert_eq!(st.edges_alive, 0);
}

#[test]
fn star_threshold() {
    let star = EdgeStream::undirected(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    let mut st = PeelState::<u64>::new(5);
    refresh_degrees(&star, &mut st).unwrap();
    assert_eq!(peel_pass(&st, Epsilon::ZERO).unwrap(), vec![1, 2, 3, 4]);
}

#[test]
fn clique_and_star_peeling() {
    let s = gen_clique_plus_star(5, 100).unwrap().to_stream().unwrap();
    let mut st = PeelState::<u64>::new(s.node_count());
    refresh_degrees(&s, &mut st).unwrap();
    assert_eq!(st.density().unwrap(), Ratio::new(110, 106));
    let first = peel_pass(&st, eps("0.1")).unwrap();
    assert_eq!(first, (6..106).collect::<Vec<_>>());

    let r = densest_undirected::<u64>(&s, eps("0.1")).unwrap();
    assert_eq!(r.best_set, vec![0, 1, 2, 3, 4]);
    assert_eq!(r.best_density, Ratio::from_integer(2));
    let removed: Vec<_> = r.trace.iter().map(|t| t.removed).collect();
    assert_eq!(removed, vec![100, 1, 5]);
}

#[test]
fn regular_graph_peels_in_one_pass() {
    let k4 = EdgeStream::undirected(4, &clique(4)).unwrap();
    for e in ["0", "0.1", "1", "3"] {
        let r = densest_undirected::<u64>(&k4, eps(e)).unwrap();
        assert_eq!((r.best_set.len(), r.best_density, r.passes), (4, Ratio::new(3, 2), 1));
    }
}

#[test]
fn size_floored_examples() {
    let mut e = clique(5);
    e.extend([(5, 6), (5, 7), (6, 7)]);
    let s = EdgeStream::undirected(8, &e).unwrap();
    let r = densest_at_least_k::<u64>(&s, 4, eps("1/2")).unwrap();
    assert_eq!(r.trace[0].density, Ratio::new(13, 8));
    assert_eq!(r.trace[0].removed, 3);
    assert_eq!(r.best_set, vec![0, 1, 2, 3, 4]);
    assert_eq!(r.best_density, Ratio::from_integer(2));

    let k4 = EdgeStream::undirected(4, &clique(4)).unwrap();
    let r = densest_at_least_k::<u64>(&k4, 4, eps("1/2")).unwrap();
    assert_eq!((r.best_set.len(), r.best_density), (4, Ratio::new(3, 2)));

    let padded = EdgeStream::undirected(6, &clique(4)).unwrap();
    let r = densest_at_least_k::<u64>(&padded, 6, eps("1/3")).unwrap();
    assert_eq!((r.best_set.len(), r.best_density), (6, Ratio::from_integer(1)));
}

#[test]
fn cores() {
    let k4 = Adjacency::from_edges(4, &clique(4)).unwrap();
    assert_eq!(d_core(&k4, 3), vec![0, 1, 2, 3]);
    let adj = Adjacency::from_stream(&k4_pendant()).unwrap();
    assert_eq!(d_core(&adj, 3), vec![0, 1, 2, 3]);
    assert_eq!(d_core(&adj, 0), vec![0, 1, 2, 3, 4]);
}

#[test]
fn directed_examples() {
    assert_eq!(density_directed(2, 2, 2).unwrap(), 1.0);
    assert_eq!(density_directed(1, 1, 1).unwrap(), 1.0);
    assert_eq!(density_directed(9, 9, 1).unwrap(), 3.0);

    let cycle = EdgeStream::directed(2, &[(0, 1), (1, 0)]).unwrap();
    let r = densest_directed(&cycle, 1.0, Epsilon::ZERO).unwrap();
    assert_eq!((r.best_s.clone(), r.best_t.clone()), (vec![0, 1], vec![0, 1]));
    assert_eq!(r.density_f64(), 1.0);

    let r = densest_directed(&hub(), 9.0, Epsilon::ZERO).unwrap();
    assert_eq!(r.density_f64(), 3.0);
    assert_eq!((r.best_s, r.best_t), ((1..10).collect::<Vec<_>>(), vec![0]));

    let edge = EdgeStream::directed(2, &[(0, 1)]).unwrap();
    let r = densest_directed(&edge, 1.0, Epsilon::ZERO).unwrap();
    assert_eq!(r.density_f64(), 1.0);
}

#[test]
fn sweep_examples() {
    assert_eq!(c_grid(10, 2.0).unwrap(), (-3..=3).collect::<Vec<_>>());

    let sweep = sweep_c(&hub(), 2.0, Epsilon::ZERO).unwrap();
    let got = sweep.best.density_f64();
    assert!(got >= 3.0 / 4.0);
    let opt = brute_force_directed(&hub()).unwrap().optimum.value();
    assert!(opt / got <= 4.0);

    let cycle = EdgeStream::directed(2, &[(0, 1), (1, 0)]).unwrap();
    let sweep = sweep_c(&cycle, 2.0, Epsilon::ZERO).unwrap();
    assert_eq!((sweep.best.density_f64(), sweep.best.c_used), (1.0, 1.0));
}

#[test]
fn sketch_examples() {
    let apart = |b: usize, xs: &[NodeId]| {
        (0..)
            .map(|seed| CountSketch::new(1, b, seed).unwrap())
            .find(|sk| sk.is_isolated(xs[0], xs.iter().copied()))
            .unwrap()
    };
    let mut sk = apart(16, &[0, 1]);
    assert!((0..10).all(|x| sk.estimate(x) == 0));
    sk.update(0, 1);
    let changed: Vec<i64> = sk.counters().iter().copied().filter(|&c| c != 0).collect();
    assert_eq!(changed.len(), 2);
    assert!(changed.iter().all(|c| c.abs() == 1));

    let mut sk = apart(16, &[0, 1, 2]);
    sk.update(0, 1);
    sk.update(0, 2);
    assert_eq!(sk.counters()[sk.bucket_of(0, 0)], 2 * sk.sign_of(0, 0));

    let edges: Vec<_> = (1..=5).map(|y| (0, y)).collect();
    let seed = (0..)
        .find(|&seed| CountSketch::new(5, 1024, seed).unwrap().is_isolated(0, 0..6))
        .unwrap();
    let mut sk = CountSketch::new(5, 1024, seed).unwrap();
    let mut twin = CountSketch::new(5, 1024, seed).unwrap();
    for &(x, y) in &edges {
        sk.update(x, y);
        twin.update(x, y);
    }
    assert_eq!(sk.estimate(0), 5);
    assert_eq!(sk.counters(), twin.counters());
}

#[test]
fn single_counter_sketch() {
    let s = k4_pendant();
    let adj = Adjacency::from_stream(&s).unwrap();
    for seed in 0..20 {
        let mut sk = CountSketch::new(1, 1, seed).unwrap();
        s.scan(|r| sk.update(r.u, r.v)).unwrap();
        let total: i64 = (0..5)
            .map(|v| sk.sign_of(0, v) * adj.degree(v) as i64)
            .sum();
        for x in 0..5 {
            assert_eq!(sk.estimate(x), sk.sign_of(0, x) * total);
        }
    }
}

#[test]
fn oracle_examples() {
    let adj = Adjacency::from_stream(&k4_pendant()).unwrap();
    for r in [brute_force_undirected(&adj, None).unwrap(), exact_flow_undirected(&adj).unwrap()] {
        assert_eq!((r.optimum, r.witness), (Ratio::new(3, 2), vec![0, 1, 2, 3]));
    }
    let tri = Adjacency::from_edges(3, &clique(3)).unwrap();
    let r = brute_force_undirected(&tri, None).unwrap();
    assert_eq!((r.optimum, r.witness), (Ratio::from_integer(1), vec![0, 1, 2]));
    let edge = Adjacency::from_edges(2, &[(0, 1)]).unwrap();
    assert_eq!(exact_flow_undirected(&edge).unwrap().optimum, Ratio::new(1, 2));

    let r = brute_force_directed(&hub()).unwrap();
    assert_eq!(r.optimum.value(), 3.0);
    assert_eq!((r.s, r.t), ((1..10).collect::<Vec<_>>(), vec![0]));
    let cycle = EdgeStream::directed(2, &[(0, 1), (1, 0)]).unwrap();
    assert_eq!(brute_force_directed(&cycle).unwrap().optimum.value(), 1.0);
    let r = brute_force_directed(&EdgeStream::directed(2, &[(0, 1)]).unwrap()).unwrap();
    assert_eq!((r.optimum.value(), r.s, r.t), (1.0, vec![0], vec![1]));
}

#[test]
fn shard_examples() {
    let config = MrConfig::new(2);
    let shards = ShardSet::from_edges(clique(4), &config).unwrap();
    let (table, _) = mr_degree_phase(&shards, 4).unwrap();
    assert_eq!((table.degrees, table.edges), (vec![3; 4], 6));

    let shards = ShardSet::from_edges([(0, 1)], &config).unwrap();
    assert_eq!(mr_degree_phase(&shards, 2).unwrap().0.degrees, vec![1, 1]);

    for literal in [false, true] {
        let mut shards = ShardSet::from_edges(clique(4), &config).unwrap();
        mr_filter_phase(&mut shards, &RemovalMark::new(4, &[0]), literal).unwrap();
        let mut left = shards.collect_edges().unwrap();
        left.sort_unstable();
        assert_eq!(left, vec![(1, 2), (1, 3), (2, 3)]);

        mr_filter_phase(&mut shards, &RemovalMark::new(4, &[]), literal).unwrap();
        assert_eq!(shards.edge_count(), 3);
        mr_filter_phase(&mut shards, &RemovalMark::new(4, &[0, 1, 2, 3]), literal).unwrap();
        assert_eq!(shards.edge_count(), 0);
    }

    let s = gen_clique_plus_star(5, 100).unwrap().to_stream().unwrap();
    let e = eps("0.1");
    for shards in [1, 4] {
        let mr = mr_densest_undirected(&s, e, &MrConfig::new(shards)).unwrap();
        assert_eq!(mr.result, densest_undirected::<u64>(&s, e).unwrap());
        assert_eq!(mr.result.best_density, Ratio::from_integer(2));
    }
}

#[test]
fn generator_examples() {
    let g = gen_lemma5(2).unwrap();
    assert_eq!((g.n, g.m()), (24, 16));
    assert_eq!(
        g.layers.iter().map(|l| (l.size, l.degree)).collect::<Vec<_>>(),
        vec![(16, 1), (8, 2)]
    );
    let g = gen_lemma5(1).unwrap();
    assert_eq!((g.n, g.m()), (4, 2));

    let g = gen_lemma6_pa(2).unwrap();
    assert_eq!(g.m(), 1);
    assert_eq!(g.edges[0].0.min(g.edges[0].1), 0);
    assert_eq!(g.edges[0].2, 1.0);
    let g = gen_lemma6_pa(3).unwrap();
    let from_third: Vec<_> = g.edges.iter().filter(|e| e.0 == 2 || e.1 == 2).collect();
    assert_eq!(from_third.len(), 2);
    assert!(from_third.iter().all(|e| (e.2 - 0.5).abs() < 1e-12));

    assert_eq!(clique_plus_star_optimum(5, 100), Ratio::from_integer(2));
    assert_eq!(clique_plus_star_optimum(2, 10), Ratio::new(10, 11));
    let g = gen_clique_plus_star(3, 0).unwrap();
    let adj = Adjacency::from_stream(&g.to_stream().unwrap()).unwrap();
    assert_eq!(brute_force_undirected(&adj, None).unwrap().optimum, Ratio::from_integer(1));
}
