//! Brute-force ground truth: exhaustive spanning-tree enumeration and a
//! Held–Karp Hamiltonian-path test.
//!
//! Nothing here shares code with the fast solvers beyond the graph type and
//! tree validation, so agreement between the two is meaningful.

use std::ops::ControlFlow;

use crate::error::{require_connected, SolveError};
use crate::graph::{Edge, Graph};
use crate::tree::{validate_spanning_tree, DisjointSets, SpanningTree};

/// Default recursion-node budget for the enumerators.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Default bitmask width for [`has_hamiltonian_path`].
pub const DEFAULT_HP_WIDTH: usize = 24;

#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Maximum number of internal vertices over all spanning trees.
    pub value: usize,
    /// One spanning tree attaining `value`.
    pub witness: SpanningTree,
    pub trees_enumerated: u64,
}

/// Include/exclude enumeration over the edge list. Excluding an edge is only
/// allowed while the non-excluded edges still connect the graph; including
/// one is only allowed while the included edges stay acyclic.
struct Enumerator<'a, F> {
    g: &'a Graph,
    budget: u64,
    nodes: u64,
    trees: u64,
    excluded: Vec<bool>,
    chosen: Vec<Edge>,
    visit: F,
}

impl<F> Enumerator<'_, F>
where
    F: FnMut(&[Edge]) -> ControlFlow<()>,
{
    fn available_connected(&self) -> bool {
        let n = self.g.n();
        let mut sets = DisjointSets::new(n);
        let mut components = n;
        for (i, &(u, v)) in self.g.edges().iter().enumerate() {
            if !self.excluded[i] && sets.union(u, v) {
                components -= 1;
            }
        }
        components == 1
    }

    fn recurse(&mut self, index: usize, sets: &DisjointSets) -> Result<ControlFlow<()>, SolveError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolveError::BudgetExceeded(self.budget));
        }
        if self.chosen.len() + 1 == self.g.n() {
            self.trees += 1;
            return Ok((self.visit)(&self.chosen));
        }
        let Some(&(u, v)) = self.g.edges().get(index) else {
            return Ok(ControlFlow::Continue(()));
        };
        let mut with = sets.clone();
        if with.union(u, v) {
            self.chosen.push((u, v));
            let flow = self.recurse(index + 1, &with)?;
            self.chosen.pop();
            if flow.is_break() {
                return Ok(flow);
            }
            self.excluded[index] = true;
            let flow =
                if self.available_connected() { self.recurse(index + 1, sets)? } else { ControlFlow::Continue(()) };
            self.excluded[index] = false;
            Ok(flow)
        } else {
            // Endpoints already joined: the edge can only be left out, and
            // leaving it out cannot disconnect anything.
            self.excluded[index] = true;
            let flow = self.recurse(index + 1, sets)?;
            self.excluded[index] = false;
            Ok(flow)
        }
    }
}

/// Calls `visit` with the edge set of every spanning tree of `g` (each
/// exactly once) until it breaks. Returns the number of trees visited.
pub fn for_each_spanning_tree<F>(g: &Graph, budget: u64, visit: F) -> Result<u64, SolveError>
where
    F: FnMut(&[Edge]) -> ControlFlow<()>,
{
    require_connected(g, 1)?;
    let mut e = Enumerator {
        g,
        budget,
        nodes: 0,
        trees: 0,
        excluded: vec![false; g.m()],
        chosen: Vec::with_capacity(g.n()),
        visit,
    };
    let _ = e.recurse(0, &DisjointSets::new(g.n()))?;
    Ok(e.trees)
}

fn internal_of(n: usize, edges: &[Edge]) -> usize {
    let mut degree = vec![0u8; n];
    for &(u, v) in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    degree.iter().filter(|&&d| d >= 2).count()
}

/// Maximum internal spanning tree by exhaustive enumeration.
pub fn oracle_mist(g: &Graph, budget: u64) -> Result<OracleResult, SolveError> {
    require_connected(g, 2)?;
    let n = g.n();
    let mut best: Option<(usize, Vec<Edge>)> = None;
    let ceiling = n.saturating_sub(2);
    let trees = for_each_spanning_tree(g, budget, |edges| {
        let value = internal_of(n, edges);
        if best.as_ref().is_none_or(|(b, _)| value > *b) {
            best = Some((value, edges.to_vec()));
        }
        // A Hamiltonian path cannot be beaten.
        if value == ceiling {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    let (value, edges) = best.expect("connected graphs have a spanning tree");
    let witness = validate_spanning_tree(g, edges).expect("enumerated trees are spanning trees");
    Ok(OracleResult { value, witness, trees_enumerated: trees })
}

/// True iff some spanning tree has at least `k` internal vertices. Stops at
/// the first such tree.
pub fn oracle_decide(g: &Graph, k: usize, budget: u64) -> Result<bool, SolveError> {
    require_connected(g, 2)?;
    if k == 0 {
        return Ok(true);
    }
    if k + 2 > g.n() {
        return Ok(false);
    }
    let n = g.n();
    let mut found = false;
    for_each_spanning_tree(g, budget, |edges| {
        if internal_of(n, edges) >= k {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Held–Karp table: `reach[mask]` is the set of vertices `v` such that some
/// path visits exactly `mask` and ends at `v`.
fn held_karp(g: &Graph, width: usize) -> Result<Vec<u32>, SolveError> {
    let n = g.n();
    let limit = width.min(32);
    if n > limit {
        return Err(SolveError::TooLarge { n, limit });
    }
    let masks: Vec<u32> = (0..n).map(|v| g.neighbor_mask(v) as u32).collect();
    let mut reach = vec![0u32; 1usize << n];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for mask in 1..reach.len() {
        let mut ends = reach[mask];
        while ends != 0 {
            let v = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let mut next = masks[v] & !(mask as u32);
            while next != 0 {
                let u = next.trailing_zeros();
                next &= next - 1;
                reach[mask | (1 << u)] |= 1 << u;
            }
        }
    }
    Ok(reach)
}

/// Bitmask dynamic program over (visited set, end vertex).
pub fn has_hamiltonian_path(g: &Graph) -> Result<bool, SolveError> {
    has_hamiltonian_path_with_width(g, DEFAULT_HP_WIDTH)
}

pub fn has_hamiltonian_path_with_width(g: &Graph, width: usize) -> Result<bool, SolveError> {
    Ok(hamiltonian_path_with_width(g, width)?.is_some())
}

/// A Hamiltonian path as a vertex sequence, if one exists.
pub fn hamiltonian_path_with_width(g: &Graph, width: usize) -> Result<Option<Vec<usize>>, SolveError> {
    let n = g.n();
    if n == 0 {
        return Ok(None);
    }
    if n > width.min(32) {
        return Err(SolveError::TooLarge { n, limit: width.min(32) });
    }
    // Cheap necessary conditions before the exponential table.
    if !g.is_connected() || (0..n).filter(|&v| g.degree(v) == 1).count() > 2 {
        return Ok(None);
    }
    let reach = held_karp(g, width)?;
    let full = (1usize << n) - 1;
    if reach[full] == 0 {
        return Ok(None);
    }
    let mut path = Vec::with_capacity(n);
    let mut mask = full;
    let mut end = reach[full].trailing_zeros() as usize;
    loop {
        path.push(end);
        let rest = mask & !(1 << end);
        if rest == 0 {
            break;
        }
        let prev = reach[rest] & g.neighbor_mask(end) as u32;
        debug_assert!(prev != 0, "Held-Karp table inconsistent");
        end = prev.trailing_zeros() as usize;
        mask = rest;
    }
    Ok(Some(path))
}
