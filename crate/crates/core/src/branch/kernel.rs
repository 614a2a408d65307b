//! The linear kernel for the decision problem on subcubic graphs.

use crate::error::{require_connected, SolveError};
use crate::graph::Graph;
use crate::tree::{validate_spanning_tree, SpanningTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kernel {
    /// An arbitrary spanning tree already has `k` internal vertices.
    YesWithTree(SpanningTree),
    /// The instance is unchanged and has at most `2k` vertices.
    Reduced,
}

/// Depth-first spanning tree from vertex 0, visiting neighbors in
/// increasing order.
pub fn arbitrary_spanning_tree(g: &Graph) -> SpanningTree {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut stack = vec![(0usize, 0usize)];
    if n > 0 {
        seen[0] = true;
    }
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        match g.neighbors(v).get(*next) {
            Some(&u) => {
                *next += 1;
                if !seen[u] {
                    seen[u] = true;
                    edges.push((v, u));
                    stack.push((u, 0));
                }
            }
            None => {
                stack.pop();
            }
        }
    }
    validate_spanning_tree(g, edges).expect("depth-first search of a connected graph spans it")
}

pub fn kernelize(g: &Graph, k: usize) -> Result<Kernel, SolveError> {
    require_connected(g, 1)?;
    if g.max_degree() > 3 {
        return Err(SolveError::DegreeTooHigh { found: g.max_degree(), limit: 3 });
    }
    let tree = arbitrary_spanning_tree(g);
    if tree.internal_count() >= k {
        return Ok(Kernel::YesWithTree(tree));
    }
    assert!(g.n() <= 2 * k, "subcubic instance without a {k}-tree has {} > 2k vertices", g.n());
    Ok(Kernel::Reduced)
}
