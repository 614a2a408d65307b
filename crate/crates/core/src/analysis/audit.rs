//! Runtime audit of measure monotonicity during a search.

use std::collections::BTreeMap;

use super::measure::{mu, state_kappa};
use super::weights::{KappaWeights, MuWeights};
use crate::branch::{
    decide_k_observed, solve_max_observed, Observer, ReductionStep, Rule, Selection, SolverOptions, SolverState,
};
use crate::error::SolveError;
use crate::graph::Graph;

const EPS: f64 = 1e-9;

/// Exact base used for the diagnostic node ratio.
pub const EXACT_BASE: f64 = 1.8669;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditMode {
    Max,
    Decide(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    MuIncrease {
        rule: Rule,
        before: f64,
        after: f64,
    },
    KappaIncrease {
        rule: Rule,
        before: f64,
        after: f64,
    },
    /// A child of a branching node does not have strictly smaller `mu`.
    BranchNotDecreasing {
        parent: f64,
        child: f64,
    },
    /// A branching node in decision mode with the measure outside `[0, k]`.
    KappaOutOfRange {
        kappa: f64,
        k: usize,
    },
}

/// Extremes of the measure change over all applications of one rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleDeltas {
    pub applications: u64,
    pub mu_min: f64,
    pub mu_max: f64,
    /// `None` outside decision mode.
    pub kappa_min: Option<f64>,
    pub kappa_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub mode: AuditMode,
    pub value: Option<usize>,
    pub answer: Option<bool>,
    pub per_rule: BTreeMap<Rule, RuleDeltas>,
    pub violations: Vec<Violation>,
    pub nodes: u64,
    pub branch_nodes: u64,
    pub children_checked: u64,
    /// `nodes / 1.8669^n`, for inspection only.
    pub node_ratio: f64,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Observer that evaluates both measures around every step.
#[derive(Debug, Clone)]
pub struct AuditObserver {
    pub mu_weights: MuWeights,
    pub kappa_weights: KappaWeights,
    pub kappa_simple: bool,
    /// Original parameter in decision mode.
    pub k: Option<usize>,
    /// Check the range of the measure at branching nodes.
    pub check_kappa_range: bool,
    pub per_rule: BTreeMap<Rule, RuleDeltas>,
    pub violations: Vec<Violation>,
    pub nodes: u64,
    pub branch_nodes: u64,
    pub children_checked: u64,
}

impl AuditObserver {
    pub fn new(k: Option<usize>, check_kappa_range: bool) -> Self {
        AuditObserver {
            mu_weights: MuWeights::default(),
            kappa_weights: KappaWeights::default(),
            kappa_simple: false,
            k,
            check_kappa_range,
            per_rule: BTreeMap::new(),
            violations: Vec::new(),
            nodes: 0,
            branch_nodes: 0,
            children_checked: 0,
        }
    }

    fn kappa(&self, s: &SolverState) -> Option<f64> {
        s.k_remaining().map(|_| state_kappa(s, &self.kappa_weights, self.kappa_simple))
    }
}

impl Observer for AuditObserver {
    fn on_reduction(&mut self, step: &ReductionStep, before: &SolverState, after: &SolverState) {
        let (mu0, mu1) = (mu(before, &self.mu_weights), mu(after, &self.mu_weights));
        let (k0, k1) = (self.kappa(before), self.kappa(after));
        let entry = self.per_rule.entry(step.rule).or_insert(RuleDeltas {
            applications: 0,
            mu_min: f64::INFINITY,
            mu_max: f64::NEG_INFINITY,
            kappa_min: None,
            kappa_max: None,
        });
        entry.applications += 1;
        entry.mu_min = entry.mu_min.min(mu1 - mu0);
        entry.mu_max = entry.mu_max.max(mu1 - mu0);
        if mu1 > mu0 + EPS {
            self.violations.push(Violation::MuIncrease { rule: step.rule, before: mu0, after: mu1 });
        }
        if let (Some(k0), Some(k1)) = (k0, k1) {
            let d = k1 - k0;
            entry.kappa_min = Some(entry.kappa_min.map_or(d, |m| m.min(d)));
            entry.kappa_max = Some(entry.kappa_max.map_or(d, |m| m.max(d)));
            if k1 > k0 + EPS {
                self.violations.push(Violation::KappaIncrease { rule: step.rule, before: k0, after: k1 });
            }
        }
    }

    fn on_node(&mut self, _state: &SolverState) {
        self.nodes += 1;
    }

    fn on_branch(&mut self, _selection: &Selection, parent: &SolverState) {
        self.branch_nodes += 1;
        if let (true, Some(k), Some(kappa)) = (self.check_kappa_range, self.k, self.kappa(parent)) {
            if kappa < -EPS || kappa > k as f64 + EPS {
                self.violations.push(Violation::KappaOutOfRange { kappa, k });
            }
        }
    }

    fn on_child(&mut self, parent: &SolverState, child: &SolverState) {
        self.children_checked += 1;
        let (p, c) = (mu(parent, &self.mu_weights), mu(child, &self.mu_weights));
        if c >= p - EPS {
            self.violations.push(Violation::BranchNotDecreasing { parent: p, child: c });
        }
    }
}

/// Options used by [`audit_run`]: the Hamiltonian shortcut is off so that
/// every instance exercises the search.
pub fn audit_options() -> SolverOptions {
    SolverOptions { hp_precheck: false, bound_pruning: false, ..SolverOptions::default() }
}

pub fn audit_run(g: &Graph, mode: AuditMode) -> Result<AuditReport, SolveError> {
    audit_run_with(g, mode, &audit_options())
}

pub fn audit_run_with(g: &Graph, mode: AuditMode, opts: &SolverOptions) -> Result<AuditReport, SolveError> {
    audit_run_weighted(g, mode, opts, &MuWeights::default())
}

/// As [`audit_run_with`], evaluating the exact measure with `mu`.
pub fn audit_run_weighted(
    g: &Graph,
    mode: AuditMode,
    opts: &SolverOptions,
    mu: &MuWeights,
) -> Result<AuditReport, SolveError> {
    let k = match mode {
        AuditMode::Max => None,
        AuditMode::Decide(k) => Some(k),
    };
    let mut obs = AuditObserver::new(k, opts.use_kappa_stop);
    obs.mu_weights = *mu;
    obs.kappa_weights = opts.kappa_weights;
    obs.kappa_simple = opts.kappa_simple;
    let (value, answer) = match mode {
        AuditMode::Max => (Some(solve_max_observed(g, opts, Some(&mut obs))?.value), None),
        AuditMode::Decide(k) => (None, Some(decide_k_observed(g, k, opts, Some(&mut obs))?.answer)),
    };
    Ok(AuditReport {
        mode,
        value,
        answer,
        node_ratio: obs.nodes as f64 / EXACT_BASE.powi(g.n() as i32),
        per_rule: obs.per_rule,
        violations: obs.violations,
        nodes: obs.nodes,
        branch_nodes: obs.branch_nodes,
        children_checked: obs.children_checked,
    })
}
