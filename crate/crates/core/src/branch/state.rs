//! Solver state for the subcubic branch-and-reduce algorithm.
//!
//! The working graph and the committed edge set `F` are stored as per-vertex
//! bitmasks over the original vertex ids (so at most 64 vertices). `F` splits
//! into the tree `T`, the component of `F` containing `root`, and the
//! pending tree edges `P`, which hang off vertices outside `T` and end in a
//! degree-1 vertex.

use std::collections::BTreeSet;

use crate::graph::{edge, Adjacency, Edge, Graph};
use crate::tree::{validate_spanning_tree, DisjointSets, SpanningTree};

pub(crate) type Mask = u64;

/// Largest graph the engine can represent.
pub const MAX_ENGINE_ORDER: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1 << v
}

/// Bits strictly above `v`.
#[inline]
pub(crate) fn above(v: usize) -> Mask {
    if v >= 63 {
        0
    } else {
        !((bit(v) << 1) - 1)
    }
}

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(v)
    })
}

/// Information needed to turn a spanning tree of the reduced graph back into
/// one of the graph the record was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftRecord {
    /// Path `v - w - z` was replaced by the edge `{v, z}`.
    Contracted { v: usize, w: usize, z: usize },
    /// Degree-1 `leaf` was removed together with its pending edge to `owner`.
    PendingLeaf { owner: usize, leaf: usize },
}

/// Derived per-state data that every rule needs; recomputed on demand.
#[derive(Debug, Clone)]
pub struct Snapshot {
    /// `V(T)`.
    pub tree: Mask,
    /// Tree degree of each vertex (0 outside `V(T)`).
    pub tree_degree: Vec<u32>,
    /// Number of pending edges each vertex is the inner end of.
    pub pending: Vec<u32>,
    /// Outer (degree-1) ends of pending edges.
    pub pending_leaves: Mask,
}

impl Snapshot {
    pub fn in_tree(&self, v: usize) -> bool {
        self.tree & bit(v) != 0
    }

    pub fn has_pending(&self, v: usize) -> bool {
        self.pending[v] > 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    order: usize,
    alive: Mask,
    adjacency: Vec<Mask>,
    forced: Vec<Mask>,
    root: Option<usize>,
    banked: usize,
    k_remaining: Option<i64>,
    log: Vec<LiftRecord>,
}

impl SolverState {
    /// Fresh state: the whole graph, nothing committed, `T` empty.
    pub fn new(g: &Graph) -> SolverState {
        assert!(g.n() <= MAX_ENGINE_ORDER, "engine supports at most {MAX_ENGINE_ORDER} vertices");
        SolverState {
            order: g.n(),
            alive: if g.n() == 64 { Mask::MAX } else { bit(g.n()) - 1 },
            adjacency: (0..g.n()).map(|v| g.neighbor_mask(v)).collect(),
            forced: vec![0; g.n()],
            root: None,
            banked: 0,
            k_remaining: None,
            log: Vec::new(),
        }
    }

    /// Fresh state in decision mode with parameter `k`.
    pub fn with_parameter(g: &Graph, k: usize) -> SolverState {
        let mut s = SolverState::new(g);
        s.k_remaining = Some(k as i64);
        s
    }

    /// Commits `edges` to `T`, growing it from `root`. Intended for building
    /// states by hand; every edge must touch the tree built so far.
    pub fn with_tree(mut self, root: usize, edges: &[(usize, usize)]) -> SolverState {
        self.root = Some(root);
        for &(u, v) in edges {
            self.add_forced(u, v);
        }
        self
    }

    /// Commits edges to `F` without touching the root, e.g. pending edges.
    pub fn with_committed(mut self, edges: &[(usize, usize)]) -> SolverState {
        for &(u, v) in edges {
            self.add_forced(u, v);
        }
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alive(&self) -> Mask {
        self.alive
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive & bit(v) != 0
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.count_ones() as usize
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> Mask {
        self.adjacency[v]
    }

    pub fn forced_neighbors(&self, v: usize) -> Mask {
        self.forced[v]
    }

    pub fn forced_degree(&self, v: usize) -> usize {
        self.forced[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u] & bit(v) != 0
    }

    pub fn is_forced(&self, u: usize, v: usize) -> bool {
        self.forced[u] & bit(v) != 0
    }

    /// Internal vertices already guaranteed outside the working graph.
    pub fn banked(&self) -> usize {
        self.banked
    }

    /// Residual parameter in decision mode.
    pub fn k_remaining(&self) -> Option<i64> {
        self.k_remaining
    }

    pub fn log(&self) -> &[LiftRecord] {
        &self.log
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in bits(self.alive) {
            for v in bits(self.adjacency[u] & above(u)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        bits(self.alive).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// `V(T)`: the vertices reachable from the root through `F`, or empty if
    /// the root carries no committed edge.
    pub fn tree_mask(&self) -> Mask {
        let Some(root) = self.root else { return 0 };
        if self.forced[root] == 0 {
            return 0;
        }
        let mut seen = bit(root);
        let mut frontier = bit(root);
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.forced[v];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen
    }

    pub fn snapshot(&self) -> Snapshot {
        let tree = self.tree_mask();
        let mut tree_degree = vec![0; self.order];
        let mut pending = vec![0; self.order];
        let mut pending_leaves = 0;
        for v in bits(self.alive) {
            if tree & bit(v) != 0 {
                tree_degree[v] = self.forced[v].count_ones();
            } else if self.degree(v) == 1 && self.forced[v] != 0 {
                let owner = self.forced[v].trailing_zeros() as usize;
                if tree & bit(owner) == 0 && self.degree(owner) > 1 {
                    pending[owner] += 1;
                    pending_leaves |= bit(v);
                }
            }
        }
        Snapshot { tree, tree_degree, pending, pending_leaves }
    }

    /// `∂E(T)` as `(a, b)` pairs with `a ∈ V(T)`, in canonical edge order.
    pub fn boundary_edges(&self, snap: &Snapshot) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in bits(snap.tree) {
            for b in bits(self.adjacency[a] & !self.forced[a]) {
                out.push((a, b));
            }
        }
        out.sort_by_key(|&(a, b)| (edge(a, b), a));
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.alive == 0 {
            return true;
        }
        let start = self.alive.trailing_zeros() as usize;
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adjacency[v];
            }
            frontier = next & !seen;
            seen |= frontier;
        }
        seen == self.alive
    }

    // --- mutation -------------------------------------------------------

    pub(crate) fn add_forced(&mut self, u: usize, v: usize) {
        debug_assert!(self.has_edge(u, v), "forcing a non-edge {{{u}, {v}}}");
        debug_assert!(!self.is_forced(u, v), "edge {{{u}, {v}}} already forced");
        self.forced[u] |= bit(v);
        self.forced[v] |= bit(u);
    }

    pub(crate) fn delete_edge(&mut self, u: usize, v: usize) {
        debug_assert!(self.has_edge(u, v), "deleting a non-edge {{{u}, {v}}}");
        debug_assert!(!self.is_forced(u, v), "deleting committed edge {{{u}, {v}}}");
        self.adjacency[u] &= !bit(v);
        self.adjacency[v] &= !bit(u);
    }

    pub(crate) fn remove_pending_leaf(&mut self, owner: usize, leaf: usize) {
        self.forced[owner] &= !bit(leaf);
        self.forced[leaf] = 0;
        self.adjacency[owner] &= !bit(leaf);
        self.adjacency[leaf] = 0;
        self.alive &= !bit(leaf);
        self.log.push(LiftRecord::PendingLeaf { owner, leaf });
    }

    /// Replaces the path `v - w - z` by the edge `{v, z}`.
    pub(crate) fn contract(&mut self, v: usize, w: usize, z: usize) {
        debug_assert!(!self.has_edge(v, z));
        self.delete_edge(v, w);
        self.delete_edge(w, z);
        self.alive &= !bit(w);
        self.adjacency[v] |= bit(z);
        self.adjacency[z] |= bit(v);
        self.log.push(LiftRecord::Contracted { v, w, z });
    }

    /// Records one more internal vertex outside the working graph.
    pub(crate) fn bank(&mut self) {
        self.banked += 1;
        if let Some(k) = self.k_remaining.as_mut() {
            *k -= 1;
        }
    }

    // --- completion and lifting -------------------------------------------

    /// Extends `F` greedily (canonical edge order) to a spanning tree of the
    /// working graph. Requires a connected working graph and acyclic `F`.
    pub fn complete_greedily(&self) -> Vec<Edge> {
        let mut sets = DisjointSets::new(self.order);
        let mut chosen = Vec::with_capacity(self.vertex_count());
        let all = self.edges();
        for &(u, v) in all.iter().filter(|&&(u, v)| self.is_forced(u, v)) {
            let joined = sets.union(u, v);
            debug_assert!(joined, "F contains a cycle");
            chosen.push((u, v));
        }
        for &(u, v) in all.iter().filter(|&&(u, v)| !self.is_forced(u, v)) {
            if sets.union(u, v) {
                chosen.push((u, v));
            }
        }
        chosen
    }

    /// Maps a spanning tree of the working graph back to the original graph
    /// by undoing the log in reverse.
    pub fn lift(&self, reduced: &[Edge]) -> BTreeSet<Edge> {
        let mut tree: BTreeSet<Edge> = reduced.iter().map(|&(u, v)| edge(u, v)).collect();
        for record in self.log.iter().rev() {
            match *record {
                LiftRecord::Contracted { v, w, z } => {
                    if tree.remove(&edge(v, z)) {
                        tree.insert(edge(v, w));
                    }
                    // Either way w hangs on z; when {v, z} was unused, z was a
                    // leaf of the reduced tree and becomes internal.
                    tree.insert(edge(w, z));
                }
                LiftRecord::PendingLeaf { owner, leaf } => {
                    tree.insert(edge(owner, leaf));
                }
            }
        }
        tree
    }

    /// Lifts a spanning tree of the working graph and validates it against
    /// the original graph.
    pub fn lift_to(&self, original: &Graph, reduced: &[Edge]) -> SpanningTree {
        validate_spanning_tree(original, self.lift(reduced)).expect("lifted edge set is a spanning tree of the input")
    }

    // --- invariants -----------------------------------------------------

    /// Checks the structural invariants; `at_fixpoint` adds the ones that
    /// only hold once no reduction rule applies. Returns a description of
    /// the first violation.
    pub fn check_invariants(&self, at_fixpoint: bool) -> Result<(), String> {
        for v in 0..self.order {
            let alive = self.is_alive(v);
            if !alive && (self.adjacency[v] != 0 || self.forced[v] != 0) {
                return Err(format!("removed vertex {v} still has edges"));
            }
            if self.adjacency[v] & bit(v) != 0 {
                return Err(format!("self-loop at {v}"));
            }
            if self.adjacency[v] & !self.alive != 0 {
                return Err(format!("vertex {v} adjacent to a removed vertex"));
            }
            if self.forced[v] & !self.adjacency[v] != 0 {
                return Err(format!("committed edge at {v} missing from the graph"));
            }
            if self.degree(v) > 3 {
                return Err(format!("vertex {v} has degree {}", self.degree(v)));
            }
            for u in bits(self.adjacency[v]) {
                if self.adjacency[u] & bit(v) == 0 {
                    return Err(format!("asymmetric adjacency {v} -> {u}"));
                }
            }
        }
        let mut sets = DisjointSets::new(self.order);
        for (u, v) in self.edges() {
            if self.is_forced(u, v) && !sets.union(u, v) {
                return Err("F contains a cycle".into());
            }
        }
        let snap = self.snapshot();
        for (u, v) in self.edges().into_iter().filter(|&(u, v)| self.is_forced(u, v)) {
            if snap.in_tree(u) {
                continue;
            }
            let leafish = |x: usize| self.degree(x) == 1;
            if !(leafish(u) || leafish(v)) {
                return Err(format!("pending edge {{{u}, {v}}} has no degree-1 end"));
            }
        }
        if at_fixpoint {
            let pending_edges: u32 = snap.pending.iter().sum();
            if snap.pending.iter().any(|&p| p > 1) {
                return Err("a vertex carries two pending edges at a fixpoint".into());
            }
            if snap.tree != 0 {
                let mut components = 0;
                let mut sets = DisjointSets::new(self.order);
                let f_vertices: Mask = bits(self.alive).filter(|&v| self.forced[v] != 0).fold(0, |m, v| m | bit(v));
                let mut count = f_vertices.count_ones();
                for (u, v) in self.edges() {
                    if self.is_forced(u, v) && sets.union(u, v) {
                        count -= 1;
                    }
                }
                components += count;
                if components != 1 + pending_edges {
                    return Err(format!("G[T ∪ P] has {components} components, expected {}", 1 + pending_edges));
                }
            }
            for (a, _) in self.boundary_edges(&snap) {
                if self.degree(a) != 3 {
                    return Err(format!("boundary vertex {a} has degree {}", self.degree(a)));
                }
            }
        }
        Ok(())
    }
}

impl Adjacency for SolverState {
    fn order(&self) -> usize {
        self.order
    }

    fn neighbors_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adjacency[v])
    }
}
