//! The coloring engine.
//!
//! A connected component with maximum degree at most k is colored with k
//! colors from any color system, unless it is a clique on k+1 vertices or
//! (for k = 2) an odd cycle:
//!
//! * a component with a vertex of degree < k is colored greedily in
//!   decreasing DFS-label order from that vertex, so every vertex still has
//!   an uncolored neighbor when its turn comes;
//! * a k-regular component grows a maximal path from a pair of non-adjacent
//!   neighbors and finishes either along a spanning path ([`color_case1`])
//!   or by deleting the cycle at the path's end, coloring the rest first,
//!   and closing the cycle through a bridge vertex ([`color_case2`]).
//!
//! Cycle removal is driven by an explicit work stack instead of call
//! recursion, and deleted subgraphs are tracked by membership marks over the
//! original graph.

use thiserror::Error;

use crate::color::{ColorSystem, Coloring};
use crate::graph::{Graph, Vertex};
use crate::scratch::{EpochMap, EpochSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("maximum degree {max_degree} exceeds k = {k}; refusing to color")]
    DegreeExceedsK { max_degree: usize, k: usize },
    #[error("no free color index at vertex {vertex}; coloring invariant violated")]
    NoFreeColor { vertex: Vertex },
    #[error("component containing vertex {vertex} admits no respecting coloring with k = {k} (k <= 2 lies outside the k-coloring guarantee)")]
    SmallKUncolorable { vertex: Vertex, k: usize },
}

/// Counters recorded while a run assigns colors.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct RunStats {
    /// Total color assignments performed.
    pub assignments: u64,
    /// Largest blocked-index count observed at the moment of any greedy
    /// assignment. Stays at most k-1 on every successful run.
    pub max_blocked: usize,
    /// Number of path-coloring invocations.
    pub path_color_calls: u64,
    /// Times a path terminal was found colored when it had to be uncolored.
    pub terminal_violations: u64,
}

/// Exceptional component reported instead of a coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentException {
    /// The component is a clique on k+1 vertices.
    Clique { vertices: Vec<Vertex> },
    /// k = 2 and the component is an odd cycle.
    OddCycle { vertices: Vec<Vertex> },
}

impl ComponentException {
    pub fn vertices(&self) -> &[Vertex] {
        match self {
            ComponentException::Clique { vertices } => vertices,
            ComponentException::OddCycle { vertices } => vertices,
        }
    }
}

/// Result of a full engine run: every non-exceptional component is colored,
/// and exceptional components are reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrooksOutcome {
    coloring: Coloring,
    exceptions: Vec<ComponentException>,
}

impl BrooksOutcome {
    /// The full coloring, when no component was exceptional.
    pub fn coloring(&self) -> Option<&Coloring> {
        self.exceptions.is_empty().then_some(&self.coloring)
    }

    /// The coloring of all non-exceptional components; vertices of
    /// exceptional components stay unassigned.
    pub fn partial_coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn exceptions(&self) -> &[ComponentException] {
        &self.exceptions
    }

    pub fn is_fully_colored(&self) -> bool {
        self.exceptions.is_empty()
    }
}

/// The maximal path grown from three seed vertices, with the anchor index of
/// the cycle at its end.
#[derive(Debug, Clone)]
pub struct PathState {
    order: Vec<Vertex>,
    position: Vec<u32>,
    j: usize,
}

impl PathState {
    /// Path vertices in order.
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    /// Number of vertices on the path.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    /// Position of the endpoint's smallest-position neighbor. The endpoint's
    /// neighbors all lie on the path, so `order[j..]` closes into a cycle
    /// (or a single edge when the endpoint has degree 1).
    pub fn j(&self) -> usize {
        self.j
    }

    /// The cycle `order[j..]`.
    pub fn cycle(&self) -> &[Vertex] {
        &self.order[self.j..]
    }

    pub fn position_of(&self, v: Vertex) -> Option<usize> {
        let raw = self.position[v as usize];
        (raw != u32::MAX).then(|| raw as usize)
    }
}

/// Grows the path x, v, y, w₄, w₅, … by repeatedly appending the smallest-id
/// neighbor of the endpoint not yet on the path, until the endpoint's
/// neighbors all lie on the path.
///
/// `x` and `y` must be non-adjacent neighbors of `v`.
pub fn grow_maximal_path(g: &Graph, x: Vertex, v: Vertex, y: Vertex) -> PathState {
    debug_assert!(g.has_edge(x, v) && g.has_edge(v, y) && !g.has_edge(x, y));
    let mut position = vec![u32::MAX; g.n()];
    let mut order = vec![x, v, y];
    for (i, &w) in order.iter().enumerate() {
        position[w as usize] = i as u32;
    }
    loop {
        let end = *order.last().unwrap();
        match g
            .neighbors(end)
            .iter()
            .copied()
            .find(|&w| position[w as usize] == u32::MAX)
        {
            Some(w) => {
                position[w as usize] = order.len() as u32;
                order.push(w);
            }
            None => break,
        }
    }
    let end = *order.last().unwrap();
    let j = g
        .neighbors(end)
        .iter()
        .map(|&u| position[u as usize])
        .min()
        .expect("the path endpoint has a neighbor") as usize;
    PathState { order, position, j }
}

/// DFS preorder of `root`'s component, exploring neighbors in ascending id
/// order. Coloring greedily in decreasing label order keeps every non-root
/// vertex's tree parent uncolored until after the vertex itself, so a root
/// of degree < k makes the whole component greedily k-colorable.
pub fn low_degree_dfs_order(g: &Graph, root: Vertex) -> Vec<Vertex> {
    let mut seen = EpochSet::new(g.n());
    let mut out = Vec::new();
    dfs_preorder_filtered(g, root, |_| true, &mut seen, &mut out);
    out
}

fn dfs_preorder_filtered(
    g: &Graph,
    root: Vertex,
    in_set: impl Fn(usize) -> bool,
    seen: &mut EpochSet,
    out: &mut Vec<Vertex>,
) {
    debug_assert!(in_set(root as usize));
    seen.insert(root as usize);
    out.push(root);
    let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
    loop {
        let Some(frame) = stack.last_mut() else { break };
        let nbrs = g.neighbors(frame.0);
        let mut next = None;
        while frame.1 < nbrs.len() {
            let w = nbrs[frame.1];
            frame.1 += 1;
            if in_set(w as usize) && seen.insert(w as usize) {
                next = Some(w);
                break;
            }
        }
        match next {
            Some(w) => {
                out.push(w);
                stack.push((w, 0));
            }
            None => {
                stack.pop();
            }
        }
    }
}

/// Colors `seq` greedily in order and leaves `terminal` uncolored. The
/// elements of `seq` followed by `terminal` must form a path in the graph,
/// all uncolored: each vertex then still has its successor uncolored when it
/// is colored, so at most k-1 of its list is blocked.
pub fn path_color(
    sys: &ColorSystem,
    coloring: &mut Coloring,
    seq: &[Vertex],
    terminal: Vertex,
) -> Result<(), EngineError> {
    let mut stats = RunStats::default();
    let mut blocked = EpochSet::new(sys.k());
    path_color_impl(sys, coloring, seq, terminal, &mut stats, &mut blocked)?;
    debug_assert_eq!(stats.terminal_violations, 0, "terminal must stay uncolored");
    Ok(())
}

fn path_color_impl(
    sys: &ColorSystem,
    coloring: &mut Coloring,
    seq: &[Vertex],
    terminal: Vertex,
    stats: &mut RunStats,
    blocked: &mut EpochSet,
) -> Result<(), EngineError> {
    stats.path_color_calls += 1;
    if coloring.is_assigned(terminal) {
        stats.terminal_violations += 1;
    }
    debug_assert!(!seq.contains(&terminal));
    debug_assert!(is_chain(sys.graph(), seq, terminal));
    for &v in seq {
        debug_assert!(!coloring.is_assigned(v));
        greedy_assign(sys, coloring, v, stats, blocked)?;
    }
    Ok(())
}

fn is_chain(g: &Graph, seq: &[Vertex], terminal: Vertex) -> bool {
    let mut prev = None;
    for &v in seq.iter().chain(std::iter::once(&terminal)) {
        if let Some(p) = prev {
            if !g.has_edge(p, v) {
                return false;
            }
        }
        prev = Some(v);
    }
    true
}

/// Computes the blocked indices of `v`, records stats, and assigns the first
/// free index.
fn greedy_assign(
    sys: &ColorSystem,
    coloring: &mut Coloring,
    v: Vertex,
    stats: &mut RunStats,
    blocked: &mut EpochSet,
) -> Result<usize, EngineError> {
    blocked.clear();
    let mut blocked_count = 0usize;
    if sys.identity_matchings() {
        for &u in sys.graph().neighbors(v) {
            if let Some(cu) = coloring.get(u) {
                if blocked.insert(cu) {
                    blocked_count += 1;
                }
            }
        }
    } else {
        for (u, e) in sys.graph().neighbor_arcs(v) {
            if let Some(cu) = coloring.get(u) {
                if let Some(i) = sys.matched_index(e, u, cu) {
                    if blocked.insert(i) {
                        blocked_count += 1;
                    }
                }
            }
        }
    }
    stats.assignments += 1;
    if blocked_count > stats.max_blocked {
        stats.max_blocked = blocked_count;
    }
    let k = sys.k();
    if blocked_count >= k {
        return Err(EngineError::NoFreeColor { vertex: v });
    }
    let index = (0..k)
        .find(|&i| !blocked.contains(i))
        .expect("a free index exists");
    coloring.assign(v, index);
    Ok(index)
}

/// Picks color indices for the non-adjacent first and third path vertices so
/// that together they block at most one index of the middle vertex's list.
///
/// With identity matchings this is "give both the same color"; the general
/// rule prefers an index unmatched toward the middle, and otherwise pairs
/// both assignments up through the same middle index.
pub fn choose_case1_pair(
    sys: &ColorSystem,
    v1: Vertex,
    v2: Vertex,
    v3: Vertex,
) -> (usize, usize) {
    let g = sys.graph();
    debug_assert!(!g.has_edge(v1, v3));
    let e12 = g.edge_id(v1, v2).expect("v1 is a neighbor of v2");
    let e32 = g.edge_id(v3, v2).expect("v3 is a neighbor of v2");
    let k = sys.k();
    if let Some(a) = (0..k).find(|&i| sys.matched_index(e12, v1, i).is_none()) {
        (a, 0)
    } else if let Some(b) = (0..k).find(|&i| sys.matched_index(e32, v3, i).is_none()) {
        (0, b)
    } else {
        // Both matchings are perfect: route index 0 of v1 through v2's list
        // to the v3 index matched to the same slot.
        let t = sys.matched_index(e12, v1, 0).expect("matching is perfect");
        let b = sys
            .matched_index(e32, v2, t)
            .expect("a perfect matching is surjective");
        (0, b)
    }
}

/// Picks an index for the uncolored bridge vertex `v_next` so that it and
/// the already-colored vertex `u` together block at most one index of
/// `v_last`'s list. With identity matchings this returns u's own index.
pub fn choose_bridge_color(
    sys: &ColorSystem,
    coloring: &Coloring,
    u: Vertex,
    v_last: Vertex,
    v_next: Vertex,
) -> usize {
    let g = sys.graph();
    let e_ul = g.edge_id(u, v_last).expect("u is a neighbor of v_last");
    let e_nl = g.edge_id(v_next, v_last).expect("v_next is a neighbor of v_last");
    let cu = coloring.get(u).expect("u is colored");
    let k = sys.k();
    if let Some(t) = sys.matched_index(e_ul, u, cu) {
        if let Some(b) = sys.matched_index(e_nl, v_last, t) {
            return b;
        }
    }
    if let Some(b) = (0..k).find(|&i| sys.matched_index(e_nl, v_next, i).is_none()) {
        return b;
    }
    0
}

/// Number of distinct indices of `target`'s list blocked by the two given
/// vertex/index assignments.
#[allow(dead_code)]
fn pair_blocks_at(sys: &ColorSystem, target: Vertex, sources: [(Vertex, usize); 2]) -> usize {
    let g = sys.graph();
    let mut seen: Option<usize> = None;
    let mut count = 0;
    for (w, i) in sources {
        if let Some(t) = g
            .edge_id(w, target)
            .and_then(|e| sys.matched_index(e, w, i))
        {
            if seen != Some(t) {
                count += 1;
                seen = Some(t);
            }
        }
    }
    count
}

/// Colors a component spanned entirely by the grown path: the first and
/// third vertices get a pair blocking at most one index at the second, two
/// path-coloring sweeps meet at the second vertex's anchor neighbor, and the
/// second vertex is colored last.
///
/// Requires k >= 3, a k-regular component, and the path spanning it, all
/// uncolored.
pub fn color_case1(
    sys: &ColorSystem,
    coloring: &mut Coloring,
    path: &PathState,
) -> Result<(), EngineError> {
    let mut stats = RunStats::default();
    let mut blocked = EpochSet::new(sys.k());
    color_case1_impl(sys, coloring, path, &mut stats, &mut blocked)
}

fn color_case1_impl(
    sys: &ColorSystem,
    coloring: &mut Coloring,
    path: &PathState,
    stats: &mut RunStats,
    blocked: &mut EpochSet,
) -> Result<(), EngineError> {
    let order = path.order();
    debug_assert!(order.len() >= 4);
    let (v1, v2, v3) = (order[0], order[1], order[2]);
    // Smallest-id neighbor of v2 other than v1 and v3; it exists since
    // deg(v2) = k >= 3, and it lies on the spanning path at position >= 3.
    let anchor = sys
        .graph()
        .neighbors(v2)
        .iter()
        .copied()
        .find(|&u| u != v1 && u != v3)
        .expect("k >= 3 leaves v2 a third neighbor");
    let j = path
        .position_of(anchor)
        .expect("a spanning path holds every neighbor of v2");
    debug_assert!(j >= 3);
    let (a, b) = choose_case1_pair(sys, v1, v2, v3);
    coloring.assign(v1, a);
    coloring.assign(v3, b);
    stats.assignments += 2;
    debug_assert!(pair_blocks_at(sys, v2, [(v1, a), (v3, b)]) <= 1);
    path_color_impl(sys, coloring, &order[3..j], order[j], stats, blocked)?;
    let tail: Vec<Vertex> = order[j..].iter().rev().copied().collect();
    path_color_impl(sys, coloring, &tail, v2, stats, blocked)?;
    greedy_assign(sys, coloring, v2, stats, blocked)?;
    Ok(())
}

/// What [`color_case2`] did with the cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case2Outcome {
    /// The cycle had a colored neighbor and was colored through the bridge.
    Completed,
    /// No cycle vertex has a colored neighbor; the cycle is an independent
    /// sub-instance and the caller colors it separately.
    DetachedCycle,
}

/// Colors the cycle at the end of a non-spanning path, assuming everything
/// else in the component is already colored.
///
/// The highest-position cycle vertex with a colored neighbor is colored
/// last: its successor takes a bridge color so that successor and neighbor
/// together block at most one of its indices, and the rest of the cycle is
/// path-colored around.
pub fn color_case2(
    sys: &ColorSystem,
    coloring: &mut Coloring,
    path: &PathState,
) -> Result<Case2Outcome, EngineError> {
    let mut stats = RunStats::default();
    let mut blocked = EpochSet::new(sys.k());
    finish_cycle_impl(sys, coloring, path.cycle(), &mut stats, &mut blocked)
}

fn finish_cycle_impl(
    sys: &ColorSystem,
    coloring: &mut Coloring,
    cycle: &[Vertex],
    stats: &mut RunStats,
    blocked: &mut EpochSet,
) -> Result<Case2Outcome, EngineError> {
    let g = sys.graph();
    let mut anchor = None;
    'scan: for idx in (0..cycle.len()).rev() {
        for &u in g.neighbors(cycle[idx]) {
            if coloring.is_assigned(u) {
                anchor = Some((idx, u));
                break 'scan;
            }
        }
    }
    let Some((l, u)) = anchor else {
        return Ok(Case2Outcome::DetachedCycle);
    };
    // The path endpoint keeps all neighbors on the cycle, so l < len - 1.
    debug_assert!(l + 1 < cycle.len());
    let v_last = cycle[l];
    let v_next = cycle[l + 1];
    // Vertices after position l have no colored neighbors, so any index is
    // safe for v_next itself.
    debug_assert!(sys.blocked_indices(v_next, coloring).is_empty());
    let cu = coloring.get(u).expect("anchor neighbor is colored");
    let b = choose_bridge_color(sys, coloring, u, v_last, v_next);
    coloring.assign(v_next, b);
    stats.assignments += 1;
    debug_assert!(pair_blocks_at(sys, v_last, [(u, cu), (v_next, b)]) <= 1);
    let mut seq = Vec::with_capacity(cycle.len().saturating_sub(2));
    seq.extend_from_slice(cycle.get(l + 2..).unwrap_or(&[]));
    seq.extend_from_slice(&cycle[..l]);
    path_color_impl(sys, coloring, &seq, v_last, stats, blocked)?;
    greedy_assign(sys, coloring, v_last, stats, blocked)?;
    Ok(Case2Outcome::Completed)
}

/// Colors the graph with the system's k colors, processing connected
/// components independently. Components that are cliques on k+1 vertices (or
/// odd cycles when k = 2) are reported as exceptions; every other component
/// is fully colored.
///
/// Refuses to run when the maximum degree exceeds k.
pub fn brooks_color(sys: &ColorSystem) -> Result<BrooksOutcome, EngineError> {
    run(sys).map(|(outcome, _)| outcome)
}

/// Like [`brooks_color`], also returning the per-run instrumentation
/// counters.
pub fn brooks_color_with_stats(sys: &ColorSystem) -> Result<(BrooksOutcome, RunStats), EngineError> {
    run(sys)
}

enum Task {
    /// Color the sub-instance induced on these vertices (sorted; possibly
    /// disconnected).
    Solve(Vec<Vertex>),
    /// All of the enclosing instance outside the cycle is colored; close the
    /// cycle.
    FinishCycle { cycle: Vec<Vertex> },
}

/// Whether a dispatched sub-instance is a whole component of the original
/// graph. Whole components need no membership marks: every neighbor is in.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Membership {
    WholeComponent,
    Marked,
}

struct Driver<'s, 'g> {
    sys: &'s ColorSystem<'g>,
    coloring: Coloring,
    stats: RunStats,
    exceptions: Vec<ComponentException>,
    in_set: EpochSet,
    seen: EpochSet,
    comp_of: EpochMap,
    blocked: EpochSet,
    queue: Vec<Vertex>,
    order_buf: Vec<Vertex>,
}

fn run(sys: &ColorSystem) -> Result<(BrooksOutcome, RunStats), EngineError> {
    let g = sys.graph();
    let k = sys.k();
    let max_degree = g.max_degree();
    if max_degree > k {
        return Err(EngineError::DegreeExceedsK { max_degree, k });
    }
    let mut driver = Driver {
        sys,
        coloring: Coloring::uncolored(g.n()),
        stats: RunStats::default(),
        exceptions: Vec::new(),
        in_set: EpochSet::new(g.n()),
        seen: EpochSet::new(g.n()),
        comp_of: EpochMap::new(g.n()),
        blocked: EpochSet::new(k),
        queue: Vec::new(),
        order_buf: Vec::new(),
    };
    for comp in g.components().components() {
        driver.solve_component(comp)?;
    }
    #[cfg(debug_assertions)]
    {
        let mut excluded = vec![false; g.n()];
        for exc in &driver.exceptions {
            for &v in exc.vertices() {
                excluded[v as usize] = true;
            }
        }
        for v in 0..g.n() as Vertex {
            debug_assert!(excluded[v as usize] || driver.coloring.is_assigned(v));
        }
    }
    Ok((
        BrooksOutcome {
            coloring: driver.coloring,
            exceptions: driver.exceptions,
        },
        driver.stats,
    ))
}

impl Driver<'_, '_> {
    fn solve_component(&mut self, comp: &[Vertex]) -> Result<(), EngineError> {
        if self.sys.k() <= 2 {
            return self.small_k_component(comp);
        }
        let mut tasks = Vec::new();
        // The partition hands over whole connected components, so the first
        // dispatch skips membership marking and re-splitting.
        self.dispatch(comp.to_vec(), Membership::WholeComponent, &mut tasks)?;
        while let Some(task) = tasks.pop() {
            match task {
                Task::Solve(set) => self.solve_set(&set, &mut tasks)?,
                Task::FinishCycle { cycle } => {
                    let outcome = finish_cycle_impl(
                        self.sys,
                        &mut self.coloring,
                        &cycle,
                        &mut self.stats,
                        &mut self.blocked,
                    )?;
                    if outcome == Case2Outcome::DetachedCycle {
                        let mut set = cycle;
                        set.sort_unstable();
                        tasks.push(Task::Solve(set));
                    }
                }
            }
        }
        Ok(())
    }

    /// Splits a working set into connected sub-components (within the set)
    /// and dispatches each.
    fn solve_set(&mut self, set: &[Vertex], tasks: &mut Vec<Task>) -> Result<(), EngineError> {
        let g = self.sys.graph();
        self.in_set.clear();
        for &v in set {
            self.in_set.insert(v as usize);
        }
        self.seen.clear();
        self.comp_of.clear();
        let mut count = 0u32;
        for &s in set {
            if self.seen.contains(s as usize) {
                continue;
            }
            self.seen.insert(s as usize);
            self.comp_of.insert(s as usize, count);
            self.queue.clear();
            self.queue.push(s);
            while let Some(v) = self.queue.pop() {
                for &u in g.neighbors(v) {
                    if self.in_set.contains(u as usize) && self.seen.insert(u as usize) {
                        self.comp_of.insert(u as usize, count);
                        self.queue.push(u);
                    }
                }
            }
            count += 1;
        }
        let mut comps: Vec<Vec<Vertex>> = vec![Vec::new(); count as usize];
        for &v in set {
            comps[self.comp_of.get(v as usize).expect("set member was visited") as usize].push(v);
        }
        for comp in comps {
            self.dispatch(comp, Membership::Marked, tasks)?;
        }
        Ok(())
    }

    /// Colors one connected sub-instance, or defers a cycle to the stack.
    /// With `Membership::Marked`, `self.in_set` must still mark the
    /// enclosing working set.
    fn dispatch(
        &mut self,
        comp: Vec<Vertex>,
        membership: Membership,
        tasks: &mut Vec<Task>,
    ) -> Result<(), EngineError> {
        let g = self.sys.graph();
        let k = self.sys.k();
        debug_assert!(!comp.is_empty());

        // Tiny instance: every vertex has at most |comp| - 1 <= k - 1
        // neighbors, greedy order does not matter.
        if comp.len() <= k {
            for &v in &comp {
                greedy_assign(self.sys, &mut self.coloring, v, &mut self.stats, &mut self.blocked)?;
            }
            return Ok(());
        }

        // Smallest-id vertex whose degree inside the working set is < k.
        let mut low_root = None;
        for &v in &comp {
            let alive_deg = match membership {
                Membership::WholeComponent => g.degree(v),
                Membership::Marked => g
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| self.in_set.contains(u as usize))
                    .count(),
            };
            if alive_deg < k {
                low_root = Some(v);
                break;
            }
        }

        if let Some(root) = low_root {
            let Driver {
                in_set,
                seen,
                order_buf,
                ..
            } = self;
            seen.clear();
            order_buf.clear();
            match membership {
                Membership::WholeComponent => {
                    dfs_preorder_filtered(g, root, |_| true, seen, order_buf)
                }
                Membership::Marked => {
                    dfs_preorder_filtered(g, root, |v| in_set.contains(v), seen, order_buf)
                }
            }
            debug_assert_eq!(self.order_buf.len(), comp.len());
            for i in (0..self.order_buf.len()).rev() {
                let v = self.order_buf[i];
                greedy_assign(self.sys, &mut self.coloring, v, &mut self.stats, &mut self.blocked)?;
            }
            return Ok(());
        }

        // k-regular inside the working set. A vertex with all k of its
        // neighbors alive has no deleted neighbors at all, so this instance
        // is a whole component of the original graph.
        debug_assert!(comp.iter().all(|&v| g.degree(v) == k));
        let v = comp[0];
        let Some((x, y)) = g.find_nonadjacent_neighbors_in(v, &mut self.seen) else {
            // The closed neighborhood of v is a clique; with k-regularity
            // the component is exactly a clique on k+1 vertices.
            debug_assert_eq!(comp.len(), k + 1);
            self.exceptions.push(ComponentException::Clique { vertices: comp });
            return Ok(());
        };
        let path = grow_maximal_path(g, x, v, y);
        if path.len() == comp.len() {
            color_case1_impl(self.sys, &mut self.coloring, &path, &mut self.stats, &mut self.blocked)
        } else {
            let cycle = path.cycle().to_vec();
            let rest: Vec<Vertex> = comp
                .iter()
                .copied()
                .filter(|&w| match path.position_of(w) {
                    Some(p) => p < path.j(),
                    None => true,
                })
                .collect();
            tasks.push(Task::FinishCycle { cycle });
            tasks.push(Task::Solve(rest));
            Ok(())
        }
    }

    /// k <= 2: components are isolated vertices, single edges, paths, or
    /// cycles. Cliques on k+1 vertices and odd cycles are the exceptions.
    fn small_k_component(&mut self, comp: &[Vertex]) -> Result<(), EngineError> {
        let g = self.sys.graph();
        match self.sys.k() {
            0 => {
                // Max degree 0: the component is one vertex, a clique on 1.
                debug_assert_eq!(comp.len(), 1);
                self.exceptions.push(ComponentException::Clique {
                    vertices: comp.to_vec(),
                });
                Ok(())
            }
            1 => {
                if comp.len() == 1 {
                    greedy_assign(
                        self.sys,
                        &mut self.coloring,
                        comp[0],
                        &mut self.stats,
                        &mut self.blocked,
                    )?;
                    Ok(())
                } else {
                    // Max degree 1: the component is a single edge, K_2.
                    debug_assert_eq!(comp.len(), 2);
                    self.exceptions.push(ComponentException::Clique {
                        vertices: comp.to_vec(),
                    });
                    Ok(())
                }
            }
            2 => {
                if let Some(&start) = comp.iter().find(|&&v| g.degree(v) <= 1) {
                    // A path: walk from the smallest-id endpoint, so each
                    // vertex has at most one colored neighbor when colored.
                    let mut prev = None;
                    let mut cur = start;
                    loop {
                        greedy_assign(
                            self.sys,
                            &mut self.coloring,
                            cur,
                            &mut self.stats,
                            &mut self.blocked,
                        )?;
                        match g.neighbors(cur).iter().copied().find(|&u| Some(u) != prev) {
                            Some(u) => {
                                prev = Some(cur);
                                cur = u;
                            }
                            None => break,
                        }
                    }
                    Ok(())
                } else {
                    let cyc = cycle_order(g, comp[0]);
                    debug_assert_eq!(cyc.len(), comp.len());
                    if cyc.len() % 2 == 1 {
                        self.exceptions.push(ComponentException::OddCycle {
                            vertices: comp.to_vec(),
                        });
                        Ok(())
                    } else {
                        self.color_cycle_exact(&cyc)
                    }
                }
            }
            _ => unreachable!("small_k_component requires k <= 2"),
        }
    }

    /// Complete search over cycle colorings via feasible-set propagation:
    /// fix the start color, push feasible index sets around the cycle, and
    /// read a witness back. Succeeds on every even cycle under plain and
    /// list systems; twisted correspondence systems may be uncolorable.
    fn color_cycle_exact(&mut self, cyc: &[Vertex]) -> Result<(), EngineError> {
        let sys = self.sys;
        let g = sys.graph();
        let k = sys.k();
        debug_assert!(k <= 64 && cyc.len() >= 3);
        let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let len = cyc.len();
        let edge_on: Vec<_> = (0..len)
            .map(|i| g.edge_id(cyc[i], cyc[(i + 1) % len]).expect("cycle edge"))
            .collect();
        'starts: for s in 0..k {
            // feas[i-1] = feasible indices for cyc[i], given cyc[0] = s.
            let mut feas: Vec<u64> = Vec::with_capacity(len - 1);
            let mut prev = 1u64 << s;
            for i in 1..len {
                let mask = successor_mask(sys, edge_on[i - 1], cyc[i - 1], prev, full);
                if mask == 0 {
                    continue 'starts;
                }
                feas.push(mask);
                prev = mask;
            }
            // Close the cycle against the fixed start color.
            let last_mask = *feas.last().expect("cycle has length >= 3");
            let Some(mut pick) = (0..k).find(|&a| {
                last_mask >> a & 1 == 1
                    && sys.matched_index(edge_on[len - 1], cyc[len - 1], a) != Some(s)
            }) else {
                continue 'starts;
            };
            let mut colors = vec![0usize; len];
            colors[0] = s;
            colors[len - 1] = pick;
            for i in (1..len - 1).rev() {
                let mask = feas[i - 1];
                pick = (0..k)
                    .find(|&a| {
                        mask >> a & 1 == 1
                            && sys.matched_index(edge_on[i], cyc[i], a) != Some(colors[i + 1])
                    })
                    .expect("feasible-set construction guarantees a predecessor");
                colors[i] = pick;
            }
            for (i, &v) in cyc.iter().enumerate() {
                self.coloring.assign(v, colors[i]);
                self.stats.assignments += 1;
            }
            return Ok(());
        }
        Err(EngineError::SmallKUncolorable {
            vertex: cyc[0],
            k,
        })
    }
}

/// Indices at the far end of `e` reachable without conflict from some index
/// in `prev` at `from`. With an injective matching, two or more options in
/// `prev` already reach everything.
fn successor_mask(sys: &ColorSystem, e: crate::graph::EdgeId, from: Vertex, prev: u64, full: u64) -> u64 {
    if prev == 0 {
        return 0;
    }
    if prev.count_ones() >= 2 {
        return full;
    }
    let a = prev.trailing_zeros() as usize;
    match sys.matched_index(e, from, a) {
        Some(b) => full & !(1u64 << b),
        None => full,
    }
}

/// Cyclic vertex order of a 2-regular component, starting at `start` and
/// stepping first to its smaller neighbor.
fn cycle_order(g: &Graph, start: Vertex) -> Vec<Vertex> {
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.neighbors(start)[0];
    while cur != start {
        order.push(cur);
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&u| u != prev)
            .expect("cycle vertices have two neighbors");
        prev = cur;
        cur = next;
    }
    order
}
