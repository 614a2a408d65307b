//! Vertex classes used by the two running-time measures.

use super::state::{bit, bits, Mask, Snapshot, SolverState};

/// Class of a vertex for the exact measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MuClass {
    /// Degree 2, no tree edge.
    D2,
    /// Degree 3 with 0, 1, 2 or 3 tree edges.
    D3(u8),
    /// Degree 3, two tree edges, and the remaining neighbor has degree 2 and
    /// no tree edge.
    D3TwoStar,
    /// Everything else (weight zero).
    Other,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MuCounts {
    pub d2: usize,
    pub d3_0: usize,
    pub d3_1: usize,
    /// `D_3^2` without the starred vertices.
    pub d3_2: usize,
    pub d3_2_star: usize,
    pub d3_3: usize,
}

pub fn mu_class(s: &SolverState, snap: &Snapshot, v: usize) -> MuClass {
    let dt = snap.tree_degree[v];
    match (s.degree(v), dt) {
        (2, 0) => MuClass::D2,
        (3, 2) => {
            let rest = s.neighbors(v) & !s.forced_neighbors(v);
            let u = rest.trailing_zeros() as usize;
            if rest.count_ones() == 1 && s.degree(u) == 2 && snap.tree_degree[u] == 0 {
                MuClass::D3TwoStar
            } else {
                MuClass::D3(2)
            }
        }
        (3, dt) => MuClass::D3(dt as u8),
        _ => MuClass::Other,
    }
}

pub fn classify_mu(s: &SolverState) -> MuCounts {
    let snap = s.snapshot();
    let mut c = MuCounts::default();
    for v in bits(s.alive()) {
        match mu_class(s, &snap, v) {
            MuClass::D2 => c.d2 += 1,
            MuClass::D3(0) => c.d3_0 += 1,
            MuClass::D3(1) => c.d3_1 += 1,
            MuClass::D3(2) => c.d3_2 += 1,
            MuClass::D3TwoStar => c.d3_2_star += 1,
            MuClass::D3(_) => c.d3_3 += 1,
            MuClass::Other => {}
        }
    }
    c
}

/// The five-way vertex partition of the parameterized measure, as masks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KappaSets {
    /// Degree 3 with exactly two tree edges.
    pub x: Mask,
    /// Degree at least 2, every edge a tree edge.
    pub y: Mask,
    /// Degree 2, outside `W`, closed neighborhood disjoint from `X ∪ Y`.
    pub z: Mask,
    /// Outside `X ∪ Y`, degree at least 2, carrying a pending edge.
    pub w: Mask,
    pub u: Mask,
}

impl KappaSets {
    pub fn counts(&self) -> [usize; 5] {
        [self.x, self.y, self.z, self.w, self.u].map(|m| m.count_ones() as usize)
    }
}

pub fn classify_kappa(s: &SolverState) -> KappaSets {
    let snap = s.snapshot();
    classify_kappa_with(s, &snap)
}

pub(crate) fn classify_kappa_with(s: &SolverState, snap: &Snapshot) -> KappaSets {
    let mut sets = KappaSets::default();
    for v in bits(s.alive()) {
        let (dg, dt) = (s.degree(v), snap.tree_degree[v] as usize);
        if dg == 3 && dt == 2 {
            sets.x |= bit(v);
        } else if dg >= 2 && dg == dt {
            sets.y |= bit(v);
        }
    }
    let xy = sets.x | sets.y;
    for v in bits(s.alive() & !xy) {
        let dg = s.degree(v);
        if dg >= 2 && snap.has_pending(v) {
            sets.w |= bit(v);
        } else if dg == 2 && (s.neighbors(v) | bit(v)) & xy == 0 {
            sets.z |= bit(v);
        } else {
            sets.u |= bit(v);
        }
    }
    sets
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Graph, GraphKind};

    #[test]
    fn fresh_cubic_is_all_d3_0() {
        let g = generate(GraphKind::Petersen, 0, 0, None).unwrap();
        let c = classify_mu(&SolverState::new(&g));
        assert_eq!(c, MuCounts { d3_0: 10, ..MuCounts::default() });
    }

    #[test]
    fn fresh_cycle_is_all_d2_and_z() {
        let g = generate(GraphKind::Cycle, 7, 0, None).unwrap();
        let s = SolverState::new(&g);
        assert_eq!(classify_mu(&s).d2, 7);
        assert_eq!(classify_kappa(&s).counts(), [0, 0, 7, 0, 0]);
    }

    #[test]
    fn starred_vertex() {
        // 0 has tree edges to 1 and 2; its third neighbor 3 has degree 2.
        let g = Graph::new(6, [(0, 1), (0, 2), (0, 3), (3, 4), (1, 5), (2, 5), (4, 5)]).unwrap();
        let s = SolverState::new(&g).with_tree(0, &[(0, 1), (0, 2)]);
        let snap = s.snapshot();
        assert_eq!(mu_class(&s, &snap, 0), MuClass::D3TwoStar);
        assert_eq!(classify_mu(&s).d3_2_star, 1);
    }

    #[test]
    fn kappa_sets() {
        let g = Graph::new(6, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]).unwrap();
        // 4 - 3 is a pending edge: 4 has degree 1 and the edge is committed.
        let mut s = SolverState::new(&g).with_tree(0, &[(0, 1), (0, 2)]);
        s.add_forced(3, 4);
        let k = classify_kappa(&s);
        assert_eq!(k.x, bit(0));
        assert_eq!(k.w, bit(3));
    }
}
