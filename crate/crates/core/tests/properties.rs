//! Cross-implementation and structural properties: the verifier against
//! classical checks, the generators against their postconditions, and the
//! oracle against the coloring bound on the small-graph atlas.

mod common;

use brooks_core::graph::generators;
use brooks_core::{
    brooks_color, oracle, ColorSystem, Coloring, Graph, OracleBudget, SignedGraph, Vertex,
};
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn regular_generator_postconditions_over_many_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=40);
        let d = feasible_degree(n, rng.gen_range(0..=(n - 1).min(8)));
        let g = generators::random_regular(n, d, rng.gen()).unwrap();
        assert!(g.invariants_hold());
        assert!((0..n as Vertex).all(|v| g.degree(v) == d));
    }
}

#[test]
fn gnm_generator_postconditions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6A17);
    for _ in 0..300 {
        let n = rng.gen_range(1..=30);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let g = generators::gnm(n, m, rng.gen()).unwrap();
        assert!(g.invariants_hold());
        assert_eq!(g.m(), m);
    }
}

#[test]
fn nonadjacent_neighbor_probe_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9E1);
    for _ in 0..300 {
        let n = rng.gen_range(1..=12);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let g = generators::gnm(n, m, rng.gen()).unwrap();
        for v in 0..n as Vertex {
            let nbrs = g.neighbors(v);
            let closed_clique = nbrs
                .iter()
                .enumerate()
                .all(|(i, &x)| nbrs[i + 1..].iter().all(|&y| g.has_edge(x, y)));
            match g.find_nonadjacent_neighbors(v) {
                None => assert!(closed_clique),
                Some((x, y)) => {
                    assert!(!closed_clique);
                    assert!(g.has_edge(v, x) && g.has_edge(v, y) && !g.has_edge(x, y));
                    // First pair in lexicographic order.
                    'outer: for (i, &a) in nbrs.iter().enumerate() {
                        for &b in &nbrs[i + 1..] {
                            if (a, b) == (x, y) {
                                break 'outer;
                            }
                            assert!(g.has_edge(a, b));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn clique_probe_negative_means_whole_component_is_a_clique() {
    for d in 2..=5 {
        let g = generators::clique(d + 1).unwrap();
        for v in 0..(d + 1) as Vertex {
            assert_eq!(g.find_nonadjacent_neighbors(v), None);
        }
        assert_eq!(g.m(), d * (d + 1) / 2);
    }
}

#[test]
fn plain_respects_agrees_with_classical_properness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let g = generators::gnm(n, m, rng.gen()).unwrap();
        let k = rng.gen_range(1..=4);
        let sys = ColorSystem::plain(&g, k);
        let indices: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        let mut c = Coloring::uncolored(n);
        for (v, &i) in indices.iter().enumerate() {
            c.assign(v as Vertex, i);
        }
        assert_eq!(sys.respects(&c).unwrap(), proper_plain(&g, &indices));
    }
}

#[test]
fn signed_respects_agrees_with_direct_arithmetic_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51E7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=9);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let g = generators::gnm(n, m, rng.gen()).unwrap();
        let k = rng.gen_range(1..=4);
        let signs = random_signs(g.m(), &mut rng);
        let lists = random_signed_lists(n, k, &mut rng);
        let signed = SignedGraph::new(&g, signs.clone()).unwrap();
        let sys = ColorSystem::from_signed(&signed, &lists).unwrap();
        let indices: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        let mut c = Coloring::uncolored(n);
        for (v, &i) in indices.iter().enumerate() {
            c.assign(v as Vertex, i);
        }
        let labels: Vec<i32> = (0..n)
            .map(|v| lists[v][indices[v]])
            .collect();
        assert_eq!(
            sys.respects(&c).unwrap(),
            signed_proper(&g, &signs, &labels),
            "n={n} k={k}"
        );
    }
}

#[test]
fn identical_lists_agree_with_plain_on_every_coloring() {
    let k = 3usize;
    let mut targets: Vec<Graph> = Vec::new();
    for n in 1..=4 {
        for_each_graph(n, false, |g| targets.push(g.clone()));
    }
    targets.push(generators::cycle(5).unwrap());
    targets.push(generators::cycle(6).unwrap());
    targets.push(petersen_prism());
    for g in &targets {
        let n = g.n();
        let lists = vec![(0..k as i32).collect::<Vec<_>>(); n];
        let listed = ColorSystem::from_lists(g, &lists).unwrap();
        let plain = ColorSystem::plain(g, k);
        let mut indices = vec![0usize; n];
        loop {
            let mut c = Coloring::uncolored(n);
            for (v, &i) in indices.iter().enumerate() {
                c.assign(v as Vertex, i);
            }
            assert_eq!(listed.respects(&c).unwrap(), plain.respects(&c).unwrap());
            // Odometer over all k^n assignments.
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                indices[pos] += 1;
                if indices[pos] < k {
                    break;
                }
                indices[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
}

fn petersen_prism() -> Graph {
    Graph::build(
        6,
        &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap()
}

#[test]
fn blocked_indices_bounded_by_colored_neighbors() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xB10C);
    for _ in 0..300 {
        let n = rng.gen_range(1..=9);
        let k = rng.gen_range(1..=4);
        let g = random_bounded_degree(n, k.max(2), &mut rng);
        let sys = oracle::random_correspondence(&g, k, rng.gen());
        let mut c = Coloring::uncolored(n);
        for v in 0..n as Vertex {
            if rng.gen_bool(0.5) {
                c.assign(v, rng.gen_range(0..k));
            }
        }
        for v in 0..n as Vertex {
            let colored_neighbors = g.neighbors(v).iter().filter(|&&u| c.is_assigned(u)).count();
            let blocked = sys.blocked_indices(v, &c);
            assert!(blocked.len() <= colored_neighbors);
            assert!(colored_neighbors <= g.degree(v));
        }
    }
}

#[test]
fn oracle_chromatic_number_obeys_the_coloring_bound_on_the_atlas() {
    let budget = OracleBudget::default();
    for n in 1..=6 {
        for_each_graph(n, false, |g| {
            let chi = oracle::chromatic_number(g, &budget).unwrap();
            let delta = g.max_degree();
            assert!(chi <= delta + 1, "chi {chi} > {delta}+1");
            let has_big_clique = oracle::contains_clique(g, delta + 1, &budget).unwrap();
            let has_odd_cycle_component = g.components().components().iter().any(|comp| {
                comp.len() % 2 == 1 && comp.iter().all(|&v| g.degree(v) == 2)
            });
            if !has_big_clique && !has_odd_cycle_component {
                assert!(chi <= delta, "chi {chi} > {delta} without an excuse");
            }
        });
    }
}

#[test]
fn identity_permutation_correspondence_matches_list_system() {
    let g = generators::cycle(6).unwrap();
    let k = 3usize;
    let lists = vec![(0..k as i32).collect::<Vec<_>>(); g.n()];
    let identity = vec![(0..k).map(|i| (i, i)).collect::<Vec<_>>(); g.m()];
    let parts = ColorSystem::from_parts(&g, k, &lists, &identity).unwrap();
    let listed = ColorSystem::from_lists(&g, &lists).unwrap();
    for e in 0..g.m() as u32 {
        let (u, v) = g.edge_endpoints(e);
        for i in 0..k {
            assert_eq!(parts.matched_index(e, u, i), listed.matched_index(e, u, i));
            assert_eq!(parts.matched_index(e, v, i), listed.matched_index(e, v, i));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn built_graphs_always_satisfy_invariants(
        raw in prop::collection::vec((0u32..12, 0u32..12), 0..40)
    ) {
        let mut edges: Vec<(Vertex, Vertex)> = raw
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let g = Graph::build(12, &edges).unwrap();
        prop_assert!(g.invariants_hold());
        prop_assert_eq!(g.m(), edges.len());
        let degree_sum: usize = (0..12).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.m());
    }

    #[test]
    fn engine_colors_every_clique_free_bounded_instance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(3..=5usize);
        let n = rng.gen_range(1..=9usize);
        let g = random_bounded_degree(n, k, &mut rng);
        let budget = OracleBudget::default();
        prop_assume!(!oracle::contains_clique(&g, k + 1, &budget).unwrap());
        let sys = ColorSystem::plain(&g, k);
        let outcome = brooks_color(&sys).unwrap();
        let c = outcome.coloring().expect("theorem guarantees a coloring");
        prop_assert!(sys.respects(c).unwrap());
    }
}
