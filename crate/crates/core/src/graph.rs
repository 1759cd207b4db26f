//! Immutable simple undirected graphs in compressed adjacency form, plus
//! deterministic generators.
//!
//! Vertices are dense ids `0..n`. Neighbor lists are sorted ascending and
//! adjacency is symmetric. The canonical edge list stores every edge once as
//! `(u, v)` with `u < v`, sorted lexicographically; `edge_ids` maps every
//! adjacency slot back to its canonical edge so per-edge payloads attach in
//! O(1).

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::scratch::EpochSet;

/// Vertex id; always a dense integer in `[0, n)`.
pub type Vertex = u32;

/// Canonical edge index into [`Graph::edges`].
pub type EdgeId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("{family} graph needs at least {min} vertices, got {n}")]
    TooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("no simple {d}-regular graph on {n} vertices exists")]
    InfeasibleDegreeSequence { n: usize, d: usize },
    #[error("regular graph generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },
    #[error("requested {m} edges but a simple graph on {n} vertices has at most {max}")]
    TooManyEdges { n: usize, m: usize, max: u64 },
}

/// Immutable simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<Vertex>,
    edge_ids: Vec<EdgeId>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph from an unordered edge list. Input pairs may appear in
    /// either orientation; self-loops and duplicates are rejected.
    pub fn build(n: usize, input_edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(input_edges.len());
        for &(a, b) in input_edges {
            for v in [a, b] {
                if v as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            edges.push(if a < b { (a, b) } else { (b, a) });
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        assert!(edges.len() < u32::MAX as usize, "edge count exceeds u32 range");

        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor: Vec<usize> = offsets[..n].to_vec();
        let mut neighbors = vec![0 as Vertex; 2 * edges.len()];
        let mut edge_ids = vec![0 as EdgeId; 2 * edges.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            neighbors[cursor[u as usize]] = v;
            edge_ids[cursor[u as usize]] = e as EdgeId;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            edge_ids[cursor[v as usize]] = e as EdgeId;
            cursor[v as usize] += 1;
        }

        let g = Graph {
            offsets,
            neighbors,
            edge_ids,
            edges,
        };
        debug_assert!(g.invariants_hold());
        Ok(g)
    }

    /// Checks the representation invariants: sorted neighbor lists, symmetric
    /// adjacency, and degree sum equal to 2m.
    pub fn invariants_hold(&self) -> bool {
        if self.neighbors.len() != 2 * self.m() {
            return false;
        }
        for v in 0..self.n() as Vertex {
            let nbrs = self.neighbors(v);
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            if nbrs
                .iter()
                .any(|&u| u == v || self.neighbors(u).binary_search(&v).is_err())
            {
                return false;
            }
        }
        true
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Neighbors of `v` paired with the id of the connecting edge.
    pub fn neighbor_arcs(&self, v: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        let range = self.offsets[v as usize]..self.offsets[v as usize + 1];
        self.neighbors[range.clone()]
            .iter()
            .copied()
            .zip(self.edge_ids[range].iter().copied())
    }

    /// Canonical edge list: `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.edges[e as usize]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search(&key)
            .ok()
            .map(|i| i as EdgeId)
    }

    /// Maximum degree; 0 for an edgeless or empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n() as Vertex)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Connected components, numbered by smallest contained vertex id.
    /// Each component's vertex list is sorted ascending.
    pub fn components(&self) -> ComponentPartition {
        let n = self.n();
        let mut component_of = vec![u32::MAX; n];
        let mut queue: Vec<Vertex> = Vec::new();
        let mut count = 0u32;
        for s in 0..n as Vertex {
            if component_of[s as usize] != u32::MAX {
                continue;
            }
            component_of[s as usize] = count;
            queue.push(s);
            while let Some(v) = queue.pop() {
                for &u in self.neighbors(v) {
                    if component_of[u as usize] == u32::MAX {
                        component_of[u as usize] = count;
                        queue.push(u);
                    }
                }
            }
            count += 1;
        }
        let mut components = vec![Vec::new(); count as usize];
        for v in 0..n {
            components[component_of[v] as usize].push(v as Vertex);
        }
        ComponentPartition {
            component_of,
            components,
        }
    }

    /// First pair of non-adjacent neighbors of `v`, scanning pairs in
    /// lexicographic order of vertex id. `None` means the closed neighborhood
    /// of `v` induces a clique.
    pub fn find_nonadjacent_neighbors(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        let mut mark = EpochSet::new(self.n());
        self.find_nonadjacent_neighbors_in(v, &mut mark)
    }

    pub(crate) fn find_nonadjacent_neighbors_in(
        &self,
        v: Vertex,
        mark: &mut EpochSet,
    ) -> Option<(Vertex, Vertex)> {
        let nbrs = self.neighbors(v);
        for (i, &x) in nbrs.iter().enumerate() {
            mark.clear();
            for &w in self.neighbors(x) {
                mark.insert(w as usize);
            }
            for &y in &nbrs[i + 1..] {
                if !mark.contains(y as usize) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// Partition of the vertices into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    component_of: Vec<u32>,
    components: Vec<Vec<Vertex>>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.component_of[v as usize] as usize
    }

    /// Component vertex lists, each sorted ascending, ordered by smallest
    /// contained vertex id.
    pub fn components(&self) -> &[Vec<Vertex>] {
        &self.components
    }
}

/// Deterministic graph generators. All randomness comes from the `seed`
/// argument.
pub mod generators {
    use super::*;

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        if n < 1 {
            return Err(GraphError::TooSmall {
                family: "path",
                min: 1,
                n,
            });
        }
        let edges: Vec<_> = (0..n as Vertex - 1).map(|i| (i, i + 1)).collect();
        Graph::build(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::TooSmall {
                family: "cycle",
                min: 3,
                n,
            });
        }
        let edges: Vec<_> = (0..n as Vertex)
            .map(|i| (i, (i + 1) % n as Vertex))
            .collect();
        Graph::build(n, &edges)
    }

    pub fn clique(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::TooSmall {
                family: "clique",
                min: 3,
                n,
            });
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                edges.push((u, v));
            }
        }
        Graph::build(n, &edges)
    }

    /// Simple d-regular graph via the stub-pairing model. Colliding pairs are
    /// repaired by rewiring against random good pairs; if a round cannot be
    /// repaired within its proposal budget the pairing restarts, up to 100
    /// attempts. Degrees above half density are generated as the complement
    /// of an (n-1-d)-regular graph, where the pairing stays sparse.
    pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
        if n * d % 2 == 1 || d >= n {
            return Err(GraphError::InfeasibleDegreeSequence { n, d });
        }
        let complement_degree = n - 1 - d;
        if d > complement_degree {
            // n(n-1) is even, so the complement degree is feasible too.
            return Ok(complement(&random_regular(n, complement_degree, seed)?));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        const ATTEMPTS: usize = 100;
        for _ in 0..ATTEMPTS {
            if let Some(edges) = try_pairing(n, d, &mut rng) {
                return Graph::build(n, &edges);
            }
        }
        Err(GraphError::GenerationFailed { attempts: ATTEMPTS })
    }

    fn complement(g: &Graph) -> Graph {
        let n = g.n();
        let mut edges = Vec::with_capacity(n * (n - 1) / 2 - g.m());
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                if !g.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::build(n, &edges).expect("complement of a simple graph is simple")
    }

    fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(Vertex, Vertex)>> {
        let mut stubs: Vec<Vertex> = (0..n as Vertex)
            .flat_map(|v| std::iter::repeat(v).take(d))
            .collect();
        stubs.shuffle(rng);

        let m = n * d / 2;
        let mut pairs: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
        let mut seen: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(m);
        let mut bad: Vec<usize> = Vec::new();
        let mut is_bad = vec![false; m];
        for i in 0..m {
            let (a, b) = (stubs[2 * i], stubs[2 * i + 1]);
            let pair = if a < b { (a, b) } else { (b, a) };
            if a == b || !seen.insert(pair) {
                bad.push(i);
                is_bad[i] = true;
            }
            pairs.push(pair);
        }

        let mut budget = 200 + 100 * bad.len();
        while let Some(&i) = bad.last() {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let j = rng.gen_range(0..m);
            if i == j || is_bad[j] {
                continue;
            }
            let (a, b) = pairs[i];
            let (c, e) = pairs[j];
            let first_swap = rng.gen_bool(0.5);
            let rewirings = if first_swap {
                [[(a, c), (b, e)], [(a, e), (b, c)]]
            } else {
                [[(a, e), (b, c)], [(a, c), (b, e)]]
            };
            for [p, q] in rewirings {
                let p = if p.0 < p.1 { p } else { (p.1, p.0) };
                let q = if q.0 < q.1 { q } else { (q.1, q.0) };
                if p.0 == p.1 || q.0 == q.1 || p == q || seen.contains(&p) || seen.contains(&q) {
                    continue;
                }
                seen.remove(&(c, e));
                seen.insert(p);
                seen.insert(q);
                pairs[i] = p;
                pairs[j] = q;
                is_bad[i] = false;
                bad.pop();
                break;
            }
        }
        Some(pairs)
    }

    /// Uniform random simple graph with exactly `m` edges, sampled with
    /// Floyd's algorithm over the edge-index space.
    pub fn gnm(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
        let total = n as u64 * (n as u64).saturating_sub(1) / 2;
        if m as u64 > total {
            return Err(GraphError::TooManyEdges { n, m, max: total });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut chosen: HashSet<u64> = HashSet::with_capacity(m);
        let mut picks: Vec<u64> = Vec::with_capacity(m);
        for t in (total - m as u64)..total {
            let x = rng.gen_range(0..=t);
            if chosen.insert(x) {
                picks.push(x);
            } else {
                chosen.insert(t);
                picks.push(t);
            }
        }
        let edges: Vec<_> = picks
            .into_iter()
            .map(|idx| pair_from_index(n as u64, idx))
            .collect();
        Graph::build(n, &edges)
    }

    /// Decodes a row-major index over all pairs (u, v), u < v.
    fn pair_from_index(n: u64, idx: u64) -> (Vertex, Vertex) {
        let base = |u: u64| u * (2 * n - u - 1) / 2;
        let mut lo = 0u64;
        let mut hi = n - 1;
        while lo < hi {
            let mid = (lo + hi + 1) / 2;
            if base(mid) <= idx {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let u = lo;
        let v = u + 1 + (idx - base(u));
        (u as Vertex, v as Vertex)
    }
}
