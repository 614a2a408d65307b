//! Hooks for watching a search run.

use super::rules::ReductionStep;
use super::select::Selection;
use super::state::SolverState;

/// Callbacks invoked by the solver. All methods default to no-ops.
pub trait Observer {
    /// After every single reduction, with the states on both sides.
    fn on_reduction(&mut self, _step: &ReductionStep, _before: &SolverState, _after: &SolverState) {}

    /// At every search node once the reductions reached a fixpoint.
    fn on_node(&mut self, _state: &SolverState) {}

    /// When a node branches.
    fn on_branch(&mut self, _selection: &Selection, _parent: &SolverState) {}

    /// For a child of a branching node, after the child's own reductions.
    fn on_child(&mut self, _parent: &SolverState, _child: &SolverState) {}
}

/// Observer that ignores everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoObserver;

impl Observer for NoObserver {}
