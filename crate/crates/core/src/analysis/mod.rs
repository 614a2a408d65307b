//! Running-time analysis: measures, branching numbers, case tuples and
//! closed-form constants.

pub mod audit;
pub mod branching;
pub mod cases;
pub mod constants;
pub mod measure;
pub mod weights;

pub use audit::{
    audit_options, audit_run, audit_run_weighted, audit_run_with, AuditMode, AuditObserver, AuditReport, RuleDeltas,
    Violation, EXACT_BASE,
};
pub use branching::{branching_number, branching_number_of, AnalysisError, BranchVector, DEFAULT_TOL};
pub use cases::{
    exact_case_vectors, param_case_vectors, simple_case_vectors, tight_param_vectors, verify_bound, BoundReport,
    CaseVector, Family, Situation,
};
pub use constants::{
    beta, connected_set_base, epsilon, kernel_composed, naive_edge_base, naive_edge_bound, round_up_4, table1_bound,
};
pub use measure::{kappa, kappa_from_sets, mu, mu_from_counts, state_kappa};
pub use weights::{KappaWeights, MuDeltas, MuWeights};
