//! Validated spanning trees and their internal-vertex accounting.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{edge, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("edge {{{0}, {1}}} is not an edge of the host graph")]
    NotSubgraph(usize, usize),
    #[error("a spanning tree on {vertices} vertices has {expected} edges, got {found}")]
    WrongCardinality { vertices: usize, expected: usize, found: usize },
    #[error("edge set contains a cycle")]
    Cyclic,
    #[error("edge set does not span the graph")]
    NotSpanning,
}

/// A spanning tree of some host graph, with its tree-degree profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    host_order: usize,
    edges: Vec<Edge>,
    degrees: Vec<usize>,
    /// `profile[i]` = number of vertices with tree degree `i`.
    profile: Vec<usize>,
}

/// Minimal union-find used for acyclicity checks.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Checks that `edges` form a spanning tree of `g` and builds it.
pub fn validate_spanning_tree(
    g: &Graph,
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> Result<SpanningTree, TreeError> {
    let edges: Vec<Edge> = edges.into_iter().map(|(u, v)| edge(u, v)).collect();
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !g.has_edge(u, v)) {
        return Err(TreeError::NotSubgraph(u, v));
    }
    let n = g.n();
    let expected = n.saturating_sub(1);
    if edges.len() != expected {
        return Err(TreeError::WrongCardinality { vertices: n, expected, found: edges.len() });
    }
    let mut sets = DisjointSets::new(n);
    for &(u, v) in &edges {
        if !sets.union(u, v) {
            return Err(TreeError::Cyclic);
        }
    }
    if n > 0 && (0..n).any(|v| sets.find(v) != sets.find(0)) {
        return Err(TreeError::NotSpanning);
    }
    Ok(SpanningTree::from_checked(n, edges))
}

impl SpanningTree {
    fn from_checked(n: usize, mut edges: Vec<Edge>) -> SpanningTree {
        edges.sort_unstable();
        let mut degrees = vec![0; n];
        for &(u, v) in &edges {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        let top = degrees.iter().copied().max().unwrap_or(0);
        let mut profile = vec![0; top + 1];
        for &d in &degrees {
            profile[d] += 1;
        }
        SpanningTree { host_order: n, edges, degrees, profile }
    }

    /// Number of vertices of the host graph.
    pub fn order(&self) -> usize {
        self.host_order
    }

    /// Tree edges, canonical and sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn tree_degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// `t_i` counts: entry `i` is the number of vertices of tree degree `i`.
    pub fn degree_profile(&self) -> &[usize] {
        &self.profile
    }

    fn t(&self, i: usize) -> usize {
        self.profile.get(i).copied().unwrap_or(0)
    }

    /// Vertices of tree degree at least two.
    pub fn internal_count(&self) -> usize {
        self.degrees.iter().filter(|&&d| d >= 2).count()
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.host_order).filter(|&v| self.degrees[v] == 1)
    }

    /// The leaf-count identity `2 + sum_{i>=3} (i-2) t_i = t_1`, valid for
    /// every tree on at least two vertices.
    pub fn check_prop1(&self) -> bool {
        let lhs = 2 + (3..self.profile.len()).map(|i| (i - 2) * self.t(i)).sum::<usize>();
        lhs == self.t(1)
    }

    pub fn is_hamiltonian_path(&self) -> bool {
        self.host_order <= 1 || self.degrees.iter().all(|&d| d <= 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};

    fn path(n: usize) -> Graph {
        generate(GraphKind::Path, n, 0, None).unwrap()
    }

    #[test]
    fn path_is_its_own_tree() {
        let g = path(4);
        let t = validate_spanning_tree(&g, g.edges().to_vec()).unwrap();
        assert_eq!(t.internal_count(), 2);
        assert_eq!(t.degree_profile(), &[0, 2, 2]);
        assert!(t.check_prop1());
        assert!(t.is_hamiltonian_path());
    }

    #[test]
    fn star_counts() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = validate_spanning_tree(&g, g.edges().to_vec()).unwrap();
        assert_eq!(t.internal_count(), 1);
        assert_eq!(t.degree_profile(), &[0, 3, 0, 1]);
        assert!(t.check_prop1());
        assert!(!t.is_hamiltonian_path());
    }

    #[test]
    fn subdivided_star() {
        let g = Graph::new(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        let t = validate_spanning_tree(&g, g.edges().to_vec()).unwrap();
        assert_eq!(t.internal_count(), 4);
        assert!(t.check_prop1());
    }

    #[test]
    fn cycle_cases() {
        let c4 = generate(GraphKind::Cycle, 4, 0, None).unwrap();
        let three: Vec<_> = c4.edges()[..3].to_vec();
        assert_eq!(validate_spanning_tree(&c4, three).unwrap().internal_count(), 2);
        assert!(matches!(
            validate_spanning_tree(&c4, c4.edges().to_vec()),
            Err(TreeError::WrongCardinality { expected: 3, found: 4, .. })
        ));
    }

    #[test]
    fn error_kinds_are_distinguished() {
        let p4 = path(4);
        assert!(matches!(validate_spanning_tree(&p4, [(0, 1), (2, 3)]), Err(TreeError::WrongCardinality { .. })));
        assert_eq!(validate_spanning_tree(&p4, [(0, 2), (1, 2), (2, 3)]), Err(TreeError::NotSubgraph(0, 2)));
        let k4 = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(validate_spanning_tree(&k4, [(0, 1), (1, 2), (0, 2)]), Err(TreeError::Cyclic));
        assert_eq!(validate_spanning_tree(&k4, [(0, 1), (1, 0), (2, 3)]), Err(TreeError::Cyclic));
    }
}
