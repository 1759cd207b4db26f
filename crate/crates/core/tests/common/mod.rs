//! Shared helpers for the integration suites: named graphs, independent
//! correctness checks, instance samplers, and a small-graph enumerator.
#![allow(dead_code)]

use brooks_core::graph::generators;
use brooks_core::{Graph, Sign, Vertex};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn petersen() -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + ((i + 2) % 5)));
        edges.push((i, i + 5));
    }
    Graph::build(10, &edges).unwrap()
}

/// Classical properness: no edge joins equal color indices. Written against
/// the edge list directly, independent of the matching machinery.
pub fn proper_plain(g: &Graph, indices: &[usize]) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| indices[u as usize] != indices[v as usize])
}

/// Direct signed properness: labels differ across '+' edges and never sum to
/// zero across '-' edges.
pub fn signed_proper(g: &Graph, signs: &[Sign], labels: &[i32]) -> bool {
    g.edges().iter().enumerate().all(|(e, &(u, v))| {
        let (a, b) = (labels[u as usize] as i64, labels[v as usize] as i64);
        match signs[e] {
            Sign::Plus => a != b,
            Sign::Minus => a + b != 0,
        }
    })
}

/// Largest d <= wanted with an n-vertex d-regular graph (even degree sum).
pub fn feasible_degree(n: usize, wanted: usize) -> usize {
    let d = wanted.min(n.saturating_sub(1));
    if n % 2 == 1 && d % 2 == 1 {
        d - 1
    } else {
        d
    }
}

/// Random graph with maximum degree at most k: a random regular graph,
/// biased toward degree k, with a random fifth of its edges dropped.
pub fn random_bounded_degree(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Graph {
    let max_d = k.min(n.saturating_sub(1));
    let d = feasible_degree(n, rng.gen_range(0..=max_d).max(rng.gen_range(0..=max_d)));
    let g = generators::random_regular(n, d, rng.gen()).unwrap();
    let kept: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.8))
        .collect();
    Graph::build(n, &kept).unwrap()
}

/// Per-vertex lists of k distinct labels drawn from [0, 3k).
pub fn random_lists(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i32>> {
    (0..n)
        .map(|_| {
            let mut pool: Vec<i32> = (0..3 * k as i32).collect();
            pool.shuffle(rng);
            pool.truncate(k);
            pool
        })
        .collect()
}

/// Per-vertex lists of k distinct labels drawn from [-2k, 2k], so negated
/// pairs and zero show up.
pub fn random_signed_lists(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i32>> {
    let span = 2 * k as i32;
    (0..n)
        .map(|_| {
            let mut pool: Vec<i32> = (-span..=span).collect();
            pool.shuffle(rng);
            pool.truncate(k);
            pool
        })
        .collect()
}

pub fn random_signs(m: usize, rng: &mut ChaCha8Rng) -> Vec<Sign> {
    (0..m)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect()
}

/// Calls `f` on every labeled graph with n vertices (n <= 7), connected ones
/// only when `connected_only` is set.
pub fn for_each_graph(n: usize, connected_only: bool, mut f: impl FnMut(&Graph)) {
    assert!((1..=7).contains(&n));
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            pairs.push((u, v));
        }
    }
    let mut edges = Vec::with_capacity(pairs.len());
    for mask in 0u32..1u32 << pairs.len() {
        let mut adj = [0u8; 7];
        edges.clear();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u as usize] |= 1 << v;
                adj[v as usize] |= 1 << u;
                edges.push((u, v));
            }
        }
        if connected_only {
            let mut seen: u8 = 1;
            loop {
                let mut next = seen;
                for v in 0..n {
                    if seen >> v & 1 == 1 {
                        next |= adj[v];
                    }
                }
                if next == seen {
                    break;
                }
                seen = next;
            }
            if seen != (1u8 << n) - 1 {
                continue;
            }
        }
        let g = Graph::build(n, &edges).unwrap();
        f(&g);
    }
}

pub fn for_each_connected_graph(n: usize, f: impl FnMut(&Graph)) {
    for_each_graph(n, true, f)
}
