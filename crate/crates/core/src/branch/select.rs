//! Choice of the branching edge at a reduced node.

use std::fmt;

use super::state::{bit, bits, Snapshot, SolverState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchCase {
    /// Another boundary edge `{b, c}` exists.
    Case4a,
    /// `d_G(b) = 2`.
    Case4b,
    /// `b` carries a pending edge.
    Case4c,
    /// `d_T(a) = 1`.
    Case4d,
    Case5,
}

impl BranchCase {
    pub const ALL: [BranchCase; 5] =
        [BranchCase::Case4a, BranchCase::Case4b, BranchCase::Case4c, BranchCase::Case4d, BranchCase::Case5];

    pub fn name(self) -> &'static str {
        match self {
            BranchCase::Case4a => "4a",
            BranchCase::Case4b => "4b",
            BranchCase::Case4c => "4c",
            BranchCase::Case4d => "4d",
            BranchCase::Case5 => "5",
        }
    }
}

impl fmt::Display for BranchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Selection {
    pub case: BranchCase,
    /// Tree endpoint of the branching edge.
    pub a: usize,
    pub b: usize,
    /// Case 5 only: the two other neighbors of `b`, `c < x`.
    pub c: Option<usize>,
    pub x: Option<usize>,
}

/// Picks the branching edge by priority, lowest canonical edge first within
/// a priority. `None` when the boundary is empty.
pub fn select_branch_edge(s: &SolverState) -> Option<Selection> {
    let snap = s.snapshot();
    select_with(s, &snap)
}

type EdgeTest<'a> = &'a dyn Fn(usize, usize) -> bool;

pub(crate) fn select_with(s: &SolverState, snap: &Snapshot) -> Option<Selection> {
    let boundary = s.boundary_edges(snap);
    let first = *boundary.first()?;
    let tests: [(BranchCase, EdgeTest<'_>); 4] = [
        (BranchCase::Case4a, &|a, b| {
            bits(s.neighbors(b) & !s.forced_neighbors(b) & snap.tree & !bit(a)).next().is_some()
        }),
        (BranchCase::Case4b, &|_, b| s.degree(b) == 2),
        (BranchCase::Case4c, &|_, b| snap.has_pending(b)),
        (BranchCase::Case4d, &|a, _| snap.tree_degree[a] == 1),
    ];
    for (case, test) in tests {
        if let Some(&(a, b)) = boundary.iter().find(|&&(a, b)| test(a, b)) {
            return Some(Selection { case, a, b, c: None, x: None });
        }
    }
    let (a, b) = first;
    let mut others = bits(s.neighbors(b) & !bit(a));
    let c = others.next();
    let x = others.next();
    Some(Selection { case: BranchCase::Case5, a, b, c, x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn shared_outside_vertex_is_case_a() {
        // T = 0-1-2 path; 3 is adjacent to both ends.
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 3), (2, 3), (3, 4), (1, 4)]).unwrap();
        let s = SolverState::new(&g).with_tree(1, &[(0, 1), (1, 2)]);
        let sel = select_branch_edge(&s).unwrap();
        assert_eq!(sel.case, BranchCase::Case4a);
    }

    #[test]
    fn degree_two_neighbor_is_case_b() {
        let g = Graph::new(7, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (5, 6)]).unwrap();
        let s = SolverState::new(&g).with_tree(0, &[(0, 1), (0, 2)]);
        let sel = select_branch_edge(&s).unwrap();
        assert_eq!((sel.case, sel.a, sel.b), (BranchCase::Case4b, 0, 3));
    }

    #[test]
    fn fall_through_is_case_5() {
        // T = 1 - 0 - 2 with 1, 2 of degree 1; the only boundary edge is {0, 3}.
        let g = Graph::new(7, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)]).unwrap();
        let s = SolverState::new(&g).with_tree(0, &[(0, 1), (0, 2)]);
        let sel = select_branch_edge(&s).unwrap();
        assert_eq!(sel, Selection { case: BranchCase::Case5, a: 0, b: 3, c: Some(4), x: Some(5) });
    }
}
