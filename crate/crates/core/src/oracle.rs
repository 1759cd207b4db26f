//! Brute-force ground truth for small instances: exhaustive coloring search,
//! chromatic number, clique detection, and a random correspondence sampler.
//!
//! The search explores vertices in id order with no ordering heuristics; the
//! point is to be obviously correct, not fast.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::color::{ColorSystem, Coloring};
use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, over the oracle limit of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("search exceeded the budget of {max} states")]
    BudgetExceeded { max: u64 },
}

/// Guard rails for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_states: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 12,
            max_states: 100_000_000,
        }
    }
}

/// Finds a respecting full coloring by backtracking over color indices in
/// vertex-id order, or proves none exists.
pub fn exhaustive_respecting_coloring(
    sys: &ColorSystem,
    budget: &OracleBudget,
) -> Result<Option<Coloring>, OracleError> {
    let g = sys.graph();
    let n = g.n();
    if n > budget.max_vertices {
        return Err(OracleError::TooManyVertices {
            n,
            max: budget.max_vertices,
        });
    }
    let mut c = Coloring::uncolored(n);
    let mut states = 0u64;
    if search(sys, &mut c, 0, &mut states, budget)? {
        debug_assert!(sys.respects(&c).unwrap());
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

fn search(
    sys: &ColorSystem,
    c: &mut Coloring,
    v: Vertex,
    states: &mut u64,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    let g = sys.graph();
    if v as usize == g.n() {
        return Ok(true);
    }
    'candidates: for i in 0..sys.k() {
        *states += 1;
        if *states > budget.max_states {
            return Err(OracleError::BudgetExceeded {
                max: budget.max_states,
            });
        }
        for (u, e) in g.neighbor_arcs(v) {
            if let Some(cu) = c.get(u) {
                if sys.matched_index(e, u, cu) == Some(i) {
                    continue 'candidates;
                }
            }
        }
        c.assign(v, i);
        if search(sys, c, v + 1, states, budget)? {
            return Ok(true);
        }
        c.unassign(v);
    }
    Ok(false)
}

/// Smallest k for which a plain k-coloring exists.
pub fn chromatic_number(g: &Graph, budget: &OracleBudget) -> Result<usize, OracleError> {
    if g.n() == 0 {
        return Ok(0);
    }
    for k in 1..=g.n() {
        let sys = ColorSystem::plain(g, k);
        if exhaustive_respecting_coloring(&sys, budget)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("n colors always suffice")
}

/// Whether the graph contains a clique on `size` vertices.
pub fn contains_clique(
    g: &Graph,
    size: usize,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    if size == 0 {
        return Ok(true);
    }
    if size == 1 {
        return Ok(g.n() > 0);
    }
    let candidates: Vec<Vertex> = (0..g.n() as Vertex).collect();
    let mut states = 0u64;
    extend_clique(g, &candidates, size, &mut states, budget)
}

fn extend_clique(
    g: &Graph,
    candidates: &[Vertex],
    need: usize,
    states: &mut u64,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    if need == 0 {
        return Ok(true);
    }
    for (i, &v) in candidates.iter().enumerate() {
        if candidates.len() - i < need {
            break;
        }
        *states += 1;
        if *states > budget.max_states {
            return Err(OracleError::BudgetExceeded {
                max: budget.max_states,
            });
        }
        // Remaining candidates must be neighbors of v; both slices are
        // sorted, so intersect by merge.
        let mut narrowed = Vec::new();
        let mut nbrs = g.neighbors(v).iter().copied().peekable();
        for &w in &candidates[i + 1..] {
            while nbrs.peek().is_some_and(|&x| x < w) {
                nbrs.next();
            }
            if nbrs.peek() == Some(&w) {
                narrowed.push(w);
            }
        }
        if narrowed.len() >= need - 1 && extend_clique(g, &narrowed, need - 1, states, budget)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Correspondence system with lists `[0, k)` and, on every edge, an
/// independently sampled random partial matching: a uniform permutation with
/// each matched pair kept with probability 1/2.
pub fn random_correspondence(g: &Graph, k: usize, seed: u64) -> ColorSystem<'_> {
    random_correspondence_biased(g, k, seed, 0.5)
}

/// Same sampler with an explicit keep probability; 1.0 keeps the whole
/// permutation (a perfect matching on every edge).
pub fn random_correspondence_biased(
    g: &Graph,
    k: usize,
    seed: u64,
    keep_probability: f64,
) -> ColorSystem<'_> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists: Vec<Vec<i32>> = vec![(0..k as i32).collect(); g.n()];
    let mut matchings: Vec<Vec<(usize, usize)>> = Vec::with_capacity(g.m());
    let mut perm: Vec<usize> = (0..k).collect();
    for _ in 0..g.m() as EdgeId {
        perm.shuffle(&mut rng);
        let mut pairs = Vec::new();
        for (i, &j) in perm.iter().enumerate() {
            if rng.gen_bool(keep_probability) {
                pairs.push((i, j));
            }
        }
        matchings.push(pairs);
    }
    ColorSystem::from_parts(g, k, &lists, &matchings).expect("sampled matchings are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    #[test]
    fn k4_is_not_3_colorable() {
        let g = generators::clique(4).unwrap();
        let sys = ColorSystem::plain(&g, 3);
        let budget = OracleBudget::default();
        assert_eq!(exhaustive_respecting_coloring(&sys, &budget).unwrap(), None);
    }

    #[test]
    fn c5_is_3_colorable() {
        let g = generators::cycle(5).unwrap();
        let sys = ColorSystem::plain(&g, 3);
        let budget = OracleBudget::default();
        let c = exhaustive_respecting_coloring(&sys, &budget)
            .unwrap()
            .unwrap();
        assert!(sys.respects(&c).unwrap());
    }

    #[test]
    fn chromatic_number_examples() {
        let budget = OracleBudget::default();
        assert_eq!(
            chromatic_number(&generators::clique(4).unwrap(), &budget).unwrap(),
            4
        );
        assert_eq!(
            chromatic_number(&generators::cycle(5).unwrap(), &budget).unwrap(),
            3
        );
        assert_eq!(
            chromatic_number(&Graph::build(4, &[]).unwrap(), &budget).unwrap(),
            1
        );
    }

    #[test]
    fn clique_detection_examples() {
        let budget = OracleBudget::default();
        assert!(contains_clique(&generators::clique(4).unwrap(), 4, &budget).unwrap());
        assert!(!contains_clique(&generators::cycle(5).unwrap(), 3, &budget).unwrap());
        assert!(contains_clique(&generators::cycle(5).unwrap(), 2, &budget).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let g = generators::clique(6).unwrap();
        let sys = ColorSystem::plain(&g, 5);
        let budget = OracleBudget {
            max_vertices: 12,
            max_states: 10,
        };
        assert_eq!(
            exhaustive_respecting_coloring(&sys, &budget),
            Err(OracleError::BudgetExceeded { max: 10 })
        );
        let tiny = OracleBudget {
            max_vertices: 3,
            max_states: 10,
        };
        assert!(matches!(
            exhaustive_respecting_coloring(&sys, &tiny),
            Err(OracleError::TooManyVertices { n: 6, max: 3 })
        ));
    }

    #[test]
    fn random_correspondence_is_deterministic_and_valid() {
        let g = generators::cycle(6).unwrap();
        let a = random_correspondence(&g, 3, 42);
        let b = random_correspondence(&g, 3, 42);
        assert!(a.matchings_are_injective());
        for e in 0..g.m() as EdgeId {
            let (u, _) = g.edge_endpoints(e);
            for i in 0..3 {
                assert_eq!(a.matched_index(e, u, i), b.matched_index(e, u, i));
            }
        }
    }

    #[test]
    fn all_kept_variant_is_a_perfect_matching() {
        let g = generators::clique(3).unwrap();
        let sys = random_correspondence_biased(&g, 4, 7, 1.0);
        for e in 0..g.m() as EdgeId {
            let (u, _) = g.edge_endpoints(e);
            for i in 0..4 {
                assert!(sys.matched_index(e, u, i).is_some());
            }
        }
    }

    #[test]
    fn single_color_sampler_keeps_invariants() {
        let g = generators::clique(3).unwrap();
        let sys = random_correspondence(&g, 1, 9);
        assert!(sys.matchings_are_injective());
    }
}
