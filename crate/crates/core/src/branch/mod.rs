//! Branch-and-reduce solver for subcubic graphs.

pub mod classify;
pub mod kernel;
pub mod observer;
pub mod rules;
pub mod select;
pub mod solver;
pub mod state;

pub use classify::{classify_kappa, classify_mu, mu_class, KappaSets, MuClass, MuCounts};
pub use kernel::{arbitrary_spanning_tree, kernelize, Kernel};
pub use observer::{NoObserver, Observer};
pub use rules::{
    apply_action, apply_all, apply_rule, find_instance, replay, Action, ReductionReport, ReductionStep, Rule, RuleSet,
};
pub use select::{select_branch_edge, BranchCase, Selection};
pub use solver::{
    branch_children, decide_k, decide_k_observed, initial_instances, kappa_completion, solve_max, solve_max_observed,
    DecideOutcome, MaxOutcome, Route, SearchStats, SolverOptions, OPTIONAL_RULES,
};
pub use state::{LiftRecord, Snapshot, SolverState, MAX_ENGINE_ORDER};
