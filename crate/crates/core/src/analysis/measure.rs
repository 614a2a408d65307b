//! Evaluation of the two measures on solver states.

use super::weights::{KappaWeights, MuWeights};
use crate::branch::{classify_kappa, classify_mu, KappaSets, MuCounts, SolverState};

pub fn mu_from_counts(c: &MuCounts, w: &MuWeights) -> f64 {
    w.w2 * c.d2 as f64
        + w.w3_1 * c.d3_1 as f64
        + w.w3_2 * c.d3_2 as f64
        + c.d3_0 as f64
        + w.w3_2star * c.d3_2_star as f64
}

pub fn mu(s: &SolverState, w: &MuWeights) -> f64 {
    mu_from_counts(&classify_mu(s), w)
}

/// `k - w1|X| - |Y| - w2|Z| - w3|W|`, or `k - w|X| - |Y|` when `simple`.
pub fn kappa_from_sets(sets: &KappaSets, k: i64, w: &KappaWeights, simple: bool) -> f64 {
    let [x, y, z, wc, _] = sets.counts().map(|c| c as f64);
    if simple {
        k as f64 - w.simple_w * x - y
    } else {
        k as f64 - w.w1 * x - y - w.w2 * z - w.w3 * wc
    }
}

pub fn kappa(s: &SolverState, k: i64, w: &KappaWeights, simple: bool) -> f64 {
    kappa_from_sets(&classify_kappa(s), k, w, simple)
}

/// The measure at the state's own residual parameter (0 outside decision
/// mode).
pub fn state_kappa(s: &SolverState, w: &KappaWeights, simple: bool) -> f64 {
    kappa(s, s.k_remaining().unwrap_or(0), w, simple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Graph, GraphKind};

    #[test]
    fn fresh_states() {
        let pet = generate(GraphKind::Petersen, 0, 0, None).unwrap();
        assert!((mu(&SolverState::new(&pet), &MuWeights::default()) - 10.0).abs() < 1e-12);
        let c9 = generate(GraphKind::Cycle, 9, 0, None).unwrap();
        let s = SolverState::new(&c9);
        assert!((mu(&s, &MuWeights::default()) - 0.3193 * 9.0).abs() < 1e-12);
        assert!((kappa(&s, 5, &KappaWeights::default(), false) - (5.0 - 0.4189 * 9.0)).abs() < 1e-12);
    }

    #[test]
    fn single_x_and_y() {
        // T = {0-1, 0-2, 1-4}: 0 has a third, non-tree edge (X) and 1 has
        // only tree edges (Y).
        let g = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (3, 5)]).unwrap();
        let s = SolverState::new(&g).with_tree(0, &[(0, 1), (0, 2), (1, 4)]);
        let w = KappaWeights::default();
        assert!((kappa(&s, 4, &w, true) - (4.0 - 0.45346 - 1.0)).abs() < 1e-12);
        assert!((kappa(&s, 4, &w, false) - (4.0 - 0.5485 - 1.0)).abs() < 1e-12);
    }
}
