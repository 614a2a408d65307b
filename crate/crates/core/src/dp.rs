//! Stage-wise dynamic program over disjoint (internal, leaf) vertex sets.
//!
//! A state `(I, L)` records that `G[I ∪ L]` has a tree whose internal
//! vertices are exactly `I`. Stage `i` holds the states with `|I| + |L| = i`;
//! stage 2 is seeded with every edge and each later stage is produced by
//! attaching one new leaf `x` to a state of the previous stage, either
//!
//! * next to an internal vertex: `(I, L + x)`, or
//! * next to a leaf `y`, which becomes internal: `(I + y, L - y + x)`.
//!
//! Growing trees leaf by leaf only ever visits connected vertex sets, which
//! is what keeps the state count well below `3^n` on bounded-degree graphs.

use std::collections::HashSet;

use crate::error::{require_connected, SolveError};
use crate::graph::{Edge, Graph};
use crate::tree::{validate_spanning_tree, SpanningTree};

/// Default and hard cap on `n` (states are packed into two `u32` masks).
pub const DEFAULT_DP_WIDTH: usize = 24;
const HARD_WIDTH: usize = 32;

/// A disjoint pair of vertex bitmasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DpState {
    pub internal: u32,
    pub leaves: u32,
}

impl DpState {
    fn key(self) -> u64 {
        self.internal as u64 | (self.leaves as u64) << 32
    }

    fn from_key(key: u64) -> DpState {
        DpState { internal: key as u32, leaves: (key >> 32) as u32 }
    }

    pub fn size(self) -> u32 {
        self.internal.count_ones() + self.leaves.count_ones()
    }
}

#[derive(Debug, Clone)]
pub struct DpSolution {
    pub value: usize,
    pub tree: Option<SpanningTree>,
    /// Distinct states stored over all stages.
    pub states: u64,
}

/// Per-stage state sets; `stages[i]` holds states of size `i`.
struct StageTable {
    masks: Vec<u32>,
    stages: Vec<HashSet<u64>>,
    stored: u64,
}

fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let v = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(v)
    })
}

impl StageTable {
    fn build(g: &Graph, keep_all: bool) -> StageTable {
        let n = g.n();
        let masks: Vec<u32> = (0..n).map(|v| g.neighbor_mask(v) as u32).collect();
        let mut stages = vec![HashSet::new(); n + 1];
        for &(u, v) in g.edges() {
            stages[2].insert(DpState { internal: 0, leaves: 1 << u | 1 << v }.key());
        }
        let mut stored = stages[2].len() as u64;
        for size in 3..=n {
            let mut next = HashSet::new();
            for &key in &stages[size - 1] {
                let DpState { internal, leaves } = DpState::from_key(key);
                let span = internal | leaves;
                let frontier = bits(span).fold(0, |acc, v| acc | masks[v]) & !span;
                for x in bits(frontier) {
                    let bit = 1u32 << x;
                    if masks[x] & internal != 0 {
                        next.insert(DpState { internal, leaves: leaves | bit }.key());
                    }
                    for y in bits(masks[x] & leaves) {
                        let y_bit = 1u32 << y;
                        next.insert(DpState { internal: internal | y_bit, leaves: (leaves & !y_bit) | bit }.key());
                    }
                }
            }
            stored += next.len() as u64;
            stages[size] = next;
            if !keep_all {
                stages[size - 1] = HashSet::new();
            }
        }
        StageTable { masks, stages, stored }
    }

    fn best_terminal(&self, n: usize) -> Option<DpState> {
        self.stages[n]
            .iter()
            .map(|&k| DpState::from_key(k))
            .max_by_key(|s| (s.internal.count_ones(), std::cmp::Reverse(s.key())))
    }

    fn contains(&self, s: DpState) -> bool {
        self.stages[s.size() as usize].contains(&s.key())
    }

    /// Peels leaves off `state` by undoing one of the two attachment cases
    /// against the retained previous stage.
    fn reconstruct(&self, mut state: DpState) -> Vec<Edge> {
        let mut edges = Vec::new();
        while state.size() > 2 {
            let mut step = None;
            'leaf: for x in bits(state.leaves) {
                let rest = state.leaves & !(1 << x);
                let anchors = self.masks[x] & state.internal;
                if anchors != 0 {
                    let prev = DpState { internal: state.internal, leaves: rest };
                    if self.contains(prev) {
                        step = Some((x, anchors.trailing_zeros() as usize, prev));
                        break 'leaf;
                    }
                }
                for y in bits(anchors) {
                    let prev = DpState { internal: state.internal & !(1 << y), leaves: rest | 1 << y };
                    if self.contains(prev) {
                        step = Some((x, y, prev));
                        break 'leaf;
                    }
                }
            }
            let (x, y, prev) = step.expect("every stored state has a stored predecessor");
            edges.push((x, y));
            state = prev;
        }
        let mut ends = bits(state.leaves);
        let (u, v) = (ends.next().unwrap(), ends.next().unwrap());
        edges.push((u, v));
        edges
    }
}

fn check_input(g: &Graph, width: usize) -> Result<(), SolveError> {
    require_connected(g, 2)?;
    let limit = width.min(HARD_WIDTH);
    if g.n() > limit {
        return Err(SolveError::TooLarge { n: g.n(), limit });
    }
    Ok(())
}

/// Maximum internal spanning tree value, and a witness when `want_tree`.
pub fn dp_solve(g: &Graph, want_tree: bool) -> Result<DpSolution, SolveError> {
    dp_solve_with_width(g, want_tree, DEFAULT_DP_WIDTH)
}

pub fn dp_solve_with_width(g: &Graph, want_tree: bool, width: usize) -> Result<DpSolution, SolveError> {
    check_input(g, width)?;
    let n = g.n();
    let table = StageTable::build(g, want_tree);
    let best = table.best_terminal(n).expect("connected graphs have a spanning tree");
    let tree = want_tree.then(|| {
        let edges = table.reconstruct(best);
        validate_spanning_tree(g, edges).expect("reconstruction yields a spanning tree")
    });
    Ok(DpSolution { value: best.internal.count_ones() as usize, tree, states: table.stored })
}

/// Total number of distinct states the program stores.
pub fn dp_state_count(g: &Graph) -> Result<u64, SolveError> {
    check_input(g, DEFAULT_DP_WIDTH)?;
    Ok(StageTable::build(g, false).stored)
}

/// Every stored state, for invariant checks on small graphs.
pub fn dp_states(g: &Graph) -> Result<Vec<DpState>, SolveError> {
    check_input(g, DEFAULT_DP_WIDTH)?;
    let table = StageTable::build(g, true);
    let mut all: Vec<DpState> = table.stages.iter().flatten().map(|&k| DpState::from_key(k)).collect();
    all.sort_unstable_by_key(|s| s.key());
    Ok(all)
}
