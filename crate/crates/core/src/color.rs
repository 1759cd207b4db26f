//! Color systems: per-vertex lists of k labels with a partial matching on
//! every edge.
//!
//! One representation covers plain k-coloring, list coloring, correspondence
//! coloring, and signed-graph coloring. A color is addressed by its index
//! into the vertex's list; matchings are stored on indices, in both
//! directions per edge, so conflict queries are O(1).

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("expected {expected} vertex lists, got {got}")]
    ListCountMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} has {got} labels, expected {expected}")]
    RaggedLists {
        vertex: Vertex,
        expected: usize,
        got: usize,
    },
    #[error("duplicate label {label} in the list of vertex {vertex}")]
    DuplicateLabelInList { vertex: Vertex, label: i32 },
    #[error("expected {expected} matchings (one per edge), got {got}")]
    MatchingCountMismatch { expected: usize, got: usize },
    #[error("matching on edge ({u}, {v}) uses color index {index}, but k = {k}")]
    MatchingIndexOutOfRange {
        u: Vertex,
        v: Vertex,
        index: usize,
        k: usize,
    },
    #[error("matching on edge ({u}, {v}) is not injective")]
    MatchingNotInjective { u: Vertex, v: Vertex },
    #[error("expected {expected} edge signs, got {got}")]
    SignCountMismatch { expected: usize, got: usize },
    #[error("coloring is partial: vertex {0} is unassigned")]
    PartialColoring(Vertex),
    #[error("all {k} color indices at vertex {vertex} are blocked")]
    NoFreeColor { vertex: Vertex, k: usize },
}

const UNASSIGNED: u32 = u32::MAX;

/// Partial vertex coloring: for each vertex, an optional index into that
/// vertex's color list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    slots: Vec<u32>,
}

impl Coloring {
    pub fn uncolored(n: usize) -> Self {
        Coloring {
            slots: vec![UNASSIGNED; n],
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<usize> {
        let raw = self.slots[v as usize];
        (raw != UNASSIGNED).then(|| raw as usize)
    }

    pub fn is_assigned(&self, v: Vertex) -> bool {
        self.slots[v as usize] != UNASSIGNED
    }

    /// Assigns a color index to a fresh vertex. The engine never recolors;
    /// assigning twice is a bug.
    pub fn assign(&mut self, v: Vertex, index: usize) {
        debug_assert!(!self.is_assigned(v), "vertex {v} recolored");
        self.slots[v as usize] = index as u32;
    }

    /// Removes an assignment. Backtracking searches use this; the engine
    /// does not.
    pub fn unassign(&mut self, v: Vertex) {
        self.slots[v as usize] = UNASSIGNED;
    }

    pub fn is_full(&self) -> bool {
        self.slots.iter().all(|&s| s != UNASSIGNED)
    }

    pub fn first_unassigned(&self) -> Option<Vertex> {
        self.slots
            .iter()
            .position(|&s| s == UNASSIGNED)
            .map(|v| v as Vertex)
    }
}

/// Edge sign for signed-graph coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// A graph together with one sign per canonical edge.
#[derive(Debug, Clone)]
pub struct SignedGraph<'g> {
    graph: &'g Graph,
    signs: Vec<Sign>,
}

impl<'g> SignedGraph<'g> {
    /// `signs[e]` labels the canonical edge with id `e`.
    pub fn new(graph: &'g Graph, signs: Vec<Sign>) -> Result<Self, SystemError> {
        if signs.len() != graph.m() {
            return Err(SystemError::SignCountMismatch {
                expected: graph.m(),
                got: signs.len(),
            });
        }
        Ok(SignedGraph { graph, signs })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.signs[e as usize]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }
}

const UNMATCHED: u32 = u32::MAX;

/// Matching storage. Plain systems put the identity on every edge, which
/// needs no per-edge memory and keeps conflict queries off the heap.
#[derive(Debug, Clone)]
enum MatchingStore {
    /// Every edge carries the full identity matching on indices.
    Identity,
    /// Flattened m*2k array. For edge e with canonical endpoints (a, b),
    /// a < b: slots `[e*2k, e*2k+k)` map a-indices to b-indices and slots
    /// `[e*2k+k, e*2k+2k)` map b-indices back to a-indices.
    Explicit(Vec<u32>),
}

/// Per-vertex color lists of uniform size k plus a partial matching between
/// the endpoint lists of every edge.
#[derive(Debug, Clone)]
pub struct ColorSystem<'g> {
    graph: &'g Graph,
    k: usize,
    /// Flattened n*k label array; the list of v is `labels[v*k..(v+1)*k]`.
    labels: Vec<i32>,
    matching: MatchingStore,
}

impl<'g> ColorSystem<'g> {
    /// Every list is `[0, k)` and every edge carries the identity matching:
    /// ordinary proper k-coloring.
    pub fn plain(graph: &'g Graph, k: usize) -> Self {
        let mut labels = Vec::with_capacity(graph.n() * k);
        for _ in 0..graph.n() {
            labels.extend(0..k as i32);
        }
        ColorSystem {
            graph,
            k,
            labels,
            matching: MatchingStore::Identity,
        }
    }

    /// List coloring: indices are matched exactly when their labels are
    /// equal.
    pub fn from_lists(graph: &'g Graph, lists: &[Vec<i32>]) -> Result<Self, SystemError> {
        let (k, labels, sorted) = validate_lists(graph.n(), lists)?;
        let mut sys = ColorSystem {
            graph,
            k,
            labels,
            matching: MatchingStore::Explicit(vec![UNMATCHED; graph.m() * 2 * k]),
        };
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            let u_sorted = &sorted[u as usize];
            let v_sorted = &sorted[v as usize];
            let (mut i, mut j) = (0, 0);
            while i < k && j < k {
                let (lu, iu) = u_sorted[i];
                let (lv, iv) = v_sorted[j];
                match lu.cmp(&lv) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        sys.set_match(e as EdgeId, iu as usize, iv as usize);
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        Ok(sys)
    }

    /// Signed coloring: a '+' edge matches equal labels (forbidding
    /// c(u) = c(v)), a '−' edge matches label a to label −a (forbidding
    /// c(u) + c(v) = 0).
    pub fn from_signed(signed: &SignedGraph<'g>, lists: &[Vec<i32>]) -> Result<Self, SystemError> {
        let graph = signed.graph();
        let (k, labels, sorted) = validate_lists(graph.n(), lists)?;
        let mut sys = ColorSystem {
            graph,
            k,
            labels,
            matching: MatchingStore::Explicit(vec![UNMATCHED; graph.m() * 2 * k]),
        };
        for (e, &(u, v)) in graph.edges().iter().enumerate() {
            let u_sorted = &sorted[u as usize];
            let v_sorted = &sorted[v as usize];
            match signed.sign(e as EdgeId) {
                Sign::Plus => {
                    let (mut i, mut j) = (0, 0);
                    while i < k && j < k {
                        let (lu, iu) = u_sorted[i];
                        let (lv, iv) = v_sorted[j];
                        match lu.cmp(&lv) {
                            std::cmp::Ordering::Less => i += 1,
                            std::cmp::Ordering::Greater => j += 1,
                            std::cmp::Ordering::Equal => {
                                sys.set_match(e as EdgeId, iu as usize, iv as usize);
                                i += 1;
                                j += 1;
                            }
                        }
                    }
                }
                Sign::Minus => {
                    // a + b = 0 pairs: ascending a against descending b.
                    let (mut i, mut j) = (0, k);
                    while i < k && j > 0 {
                        let (lu, iu) = u_sorted[i];
                        let (lv, iv) = v_sorted[j - 1];
                        let sum = lu as i64 + lv as i64;
                        match sum.cmp(&0) {
                            std::cmp::Ordering::Less => i += 1,
                            std::cmp::Ordering::Greater => j -= 1,
                            std::cmp::Ordering::Equal => {
                                sys.set_match(e as EdgeId, iu as usize, iv as usize);
                                i += 1;
                                j -= 1;
                            }
                        }
                    }
                }
            }
        }
        Ok(sys)
    }

    /// Raw correspondence system: one explicit matching per canonical edge,
    /// given as (u-index, v-index) pairs for the edge's canonical endpoints
    /// (u, v) with u < v.
    pub fn from_parts(
        graph: &'g Graph,
        k: usize,
        lists: &[Vec<i32>],
        matchings: &[Vec<(usize, usize)>],
    ) -> Result<Self, SystemError> {
        let (got_k, labels, _) = validate_lists(graph.n(), lists)?;
        if graph.n() > 0 && got_k != k {
            return Err(SystemError::RaggedLists {
                vertex: 0,
                expected: k,
                got: got_k,
            });
        }
        if matchings.len() != graph.m() {
            return Err(SystemError::MatchingCountMismatch {
                expected: graph.m(),
                got: matchings.len(),
            });
        }
        let mut sys = ColorSystem {
            graph,
            k,
            labels,
            matching: MatchingStore::Explicit(vec![UNMATCHED; graph.m() * 2 * k]),
        };
        for (e, pairs) in matchings.iter().enumerate() {
            let (u, v) = graph.edge_endpoints(e as EdgeId);
            for &(iu, iv) in pairs {
                if iu >= k || iv >= k {
                    return Err(SystemError::MatchingIndexOutOfRange {
                        u,
                        v,
                        index: iu.max(iv),
                        k,
                    });
                }
                if sys.matched_index(e as EdgeId, u, iu).is_some()
                    || sys.matched_index(e as EdgeId, v, iv).is_some()
                {
                    return Err(SystemError::MatchingNotInjective { u, v });
                }
                sys.set_match(e as EdgeId, iu, iv);
            }
        }
        Ok(sys)
    }

    fn set_match(&mut self, e: EdgeId, low_index: usize, high_index: usize) {
        let MatchingStore::Explicit(matching) = &mut self.matching else {
            unreachable!("set_match on an identity store");
        };
        let base = e as usize * 2 * self.k;
        debug_assert_eq!(matching[base + low_index], UNMATCHED);
        debug_assert_eq!(matching[base + self.k + high_index], UNMATCHED);
        matching[base + low_index] = high_index as u32;
        matching[base + self.k + high_index] = low_index as u32;
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The ordered label list of `v`.
    pub fn list(&self, v: Vertex) -> &[i32] {
        &self.labels[v as usize * self.k..(v as usize + 1) * self.k]
    }

    pub fn label(&self, v: Vertex, index: usize) -> i32 {
        self.list(v)[index]
    }

    /// The index of the opposite endpoint's list that `index` at `from` is
    /// matched to across edge `e`, if any.
    pub fn matched_index(&self, e: EdgeId, from: Vertex, index: usize) -> Option<usize> {
        let MatchingStore::Explicit(matching) = &self.matching else {
            return Some(index);
        };
        let (a, b) = self.graph.edge_endpoints(e);
        debug_assert!(from == a || from == b);
        let base = e as usize * 2 * self.k;
        let slot = if from == a {
            matching[base + index]
        } else {
            matching[base + self.k + index]
        };
        (slot != UNMATCHED).then(|| slot as usize)
    }

    /// True when every edge carries the identity matching, letting hot loops
    /// skip edge-id lookups entirely.
    pub(crate) fn identity_matchings(&self) -> bool {
        matches!(self.matching, MatchingStore::Identity)
    }

    /// Indices of L(v) blocked by the colored neighbors of `v`, sorted and
    /// deduplicated. At most one index per colored neighbor.
    pub fn blocked_indices(&self, v: Vertex, c: &Coloring) -> Vec<usize> {
        let mut blocked: Vec<usize> = self
            .graph
            .neighbor_arcs(v)
            .filter_map(|(u, e)| c.get(u).and_then(|cu| self.matched_index(e, u, cu)))
            .collect();
        blocked.sort_unstable();
        blocked.dedup();
        blocked
    }

    /// Smallest index of L(v) not blocked by any colored neighbor.
    pub fn first_free_index(&self, v: Vertex, c: &Coloring) -> Result<usize, SystemError> {
        let mut used = vec![false; self.k];
        for (u, e) in self.graph.neighbor_arcs(v) {
            if let Some(i) = c.get(u).and_then(|cu| self.matched_index(e, u, cu)) {
                used[i] = true;
            }
        }
        used.iter()
            .position(|&b| !b)
            .ok_or(SystemError::NoFreeColor { vertex: v, k: self.k })
    }

    /// First edge whose assigned index pair lies in the edge's matching, or
    /// `None` if the full coloring respects the system.
    pub fn first_violation(&self, c: &Coloring) -> Result<Option<(Vertex, Vertex)>, SystemError> {
        if let Some(v) = c.first_unassigned() {
            return Err(SystemError::PartialColoring(v));
        }
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            let cu = c.get(u).expect("full coloring");
            let cv = c.get(v).expect("full coloring");
            if self.matched_index(e as EdgeId, u, cu) == Some(cv) {
                return Ok(Some((u, v)));
            }
        }
        Ok(None)
    }

    /// True iff no edge's assigned index pair is matched.
    pub fn respects(&self, c: &Coloring) -> Result<bool, SystemError> {
        Ok(self.first_violation(c)?.is_none())
    }

    /// The label assigned to each vertex under a full coloring.
    pub fn labels_of(&self, c: &Coloring) -> Result<Vec<i32>, SystemError> {
        if let Some(v) = c.first_unassigned() {
            return Err(SystemError::PartialColoring(v));
        }
        Ok((0..self.graph.n() as Vertex)
            .map(|v| self.label(v, c.get(v).expect("full coloring")))
            .collect())
    }

    /// Matching bidirectional-injectivity check, used by construction
    /// assertions and tests.
    pub fn matchings_are_injective(&self) -> bool {
        let MatchingStore::Explicit(matching) = &self.matching else {
            return true;
        };
        let k = self.k;
        for e in 0..self.graph.m() {
            let base = e * 2 * k;
            let fwd = &matching[base..base + k];
            let inv = &matching[base + k..base + 2 * k];
            for (i, &j) in fwd.iter().enumerate() {
                if j != UNMATCHED && inv[j as usize] != i as u32 {
                    return false;
                }
            }
            for (j, &i) in inv.iter().enumerate() {
                if i != UNMATCHED && fwd[i as usize] != j as u32 {
                    return false;
                }
            }
        }
        true
    }
}

/// Validates list count, uniform length, and within-list distinctness.
/// Returns (k, flattened labels, per-vertex lists sorted by label).
#[allow(clippy::type_complexity)]
fn validate_lists(
    n: usize,
    lists: &[Vec<i32>],
) -> Result<(usize, Vec<i32>, Vec<Vec<(i32, u32)>>), SystemError> {
    if lists.len() != n {
        return Err(SystemError::ListCountMismatch {
            expected: n,
            got: lists.len(),
        });
    }
    let k = lists.first().map_or(0, |l| l.len());
    let mut labels = Vec::with_capacity(n * k);
    let mut sorted = Vec::with_capacity(n);
    for (v, list) in lists.iter().enumerate() {
        if list.len() != k {
            return Err(SystemError::RaggedLists {
                vertex: v as Vertex,
                expected: k,
                got: list.len(),
            });
        }
        let mut by_label: Vec<(i32, u32)> = list
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as u32))
            .collect();
        by_label.sort_unstable();
        for w in by_label.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SystemError::DuplicateLabelInList {
                    vertex: v as Vertex,
                    label: w[0].0,
                });
            }
        }
        labels.extend_from_slice(list);
        sorted.push(by_label);
    }
    Ok((k, labels, sorted))
}
