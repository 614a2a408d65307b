//! The nine ordered reduction rules.
//!
//! Each rule is split into a finder, which returns the first applicable
//! instance as an [`Action`], and [`apply_action`], which performs it. This
//! makes every application replayable.

use std::fmt;
use std::str::FromStr;

use super::observer::Observer;
use super::state::{above, bit, bits, Snapshot, SolverState};
use crate::graph::{bridges, edge};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Cycle,
    Bridge,
    Deg1,
    Pending,
    ConsDeg2,
    Deg2,
    Attach,
    Attach2,
    Special,
}

impl Rule {
    /// All rules in priority order.
    pub const ALL: [Rule; 9] = [
        Rule::Cycle,
        Rule::Bridge,
        Rule::Deg1,
        Rule::Pending,
        Rule::ConsDeg2,
        Rule::Deg2,
        Rule::Attach,
        Rule::Attach2,
        Rule::Special,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Cycle => "cycle",
            Rule::Bridge => "bridge",
            Rule::Deg1 => "deg1",
            Rule::Pending => "pending",
            Rule::ConsDeg2 => "consdeg2",
            Rule::Deg2 => "deg2",
            Rule::Attach => "attach",
            Rule::Attach2 => "attach2",
            Rule::Special => "special",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL.into_iter().find(|r| r.name().eq_ignore_ascii_case(s)).ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// A set of enabled rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleSet(u16);

impl RuleSet {
    pub fn all() -> RuleSet {
        RuleSet((1 << Rule::ALL.len()) - 1)
    }

    pub fn without(self, rule: Rule) -> RuleSet {
        RuleSet(self.0 & !(1 << rule.index()))
    }

    pub fn contains(self, rule: Rule) -> bool {
        self.0 & (1 << rule.index()) != 0
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::all()
    }
}

/// One concrete rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    Delete(usize, usize),
    Force(usize, usize),
    /// Remove every pending edge at `owner`, together with the leaves.
    RemovePending {
        owner: usize,
        leaves: Vec<usize>,
    },
    /// Replace the path `v - w - z` by the edge `{v, z}`.
    Contract {
        v: usize,
        w: usize,
        z: usize,
    },
    /// Triangle `v, w, z` with `d(w) = d(z) = 2`: commit `{v,w}`, `{w,z}`
    /// and delete `{v, z}`.
    ResolveTriangle {
        v: usize,
        w: usize,
        z: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionStep {
    pub rule: Rule,
    pub action: Action,
    /// Change of the residual parameter (decision mode only).
    pub k_delta: i64,
    /// Change of the banked internal count.
    pub offset_delta: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReductionReport {
    pub steps: Vec<ReductionStep>,
    pub fixpoint: bool,
}

impl ReductionReport {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn find_cycle(s: &SolverState, snap: &Snapshot) -> Option<Action> {
    for a in bits(snap.tree) {
        if let Some(b) = bits(s.neighbors(a) & snap.tree & !s.forced_neighbors(a) & above(a)).next() {
            return Some(Action::Delete(a, b));
        }
    }
    None
}

fn find_bridge(s: &SolverState, snap: &Snapshot) -> Option<Action> {
    if snap.tree == 0 {
        return None;
    }
    bridges(s)
        .into_iter()
        .find(|&(u, v)| !s.is_forced(u, v) && (snap.in_tree(u) || snap.in_tree(v)))
        .map(|(u, v)| Action::Force(u, v))
}

fn find_deg1(s: &SolverState) -> Option<Action> {
    bits(s.alive()).find(|&u| s.degree(u) == 1 && s.forced_neighbors(u) == 0).map(|u| {
        let v = s.neighbors(u).trailing_zeros() as usize;
        let (a, b) = edge(u, v);
        Action::Force(a, b)
    })
}

fn pending_leaves_of(s: &SolverState, snap: &Snapshot, owner: usize) -> Vec<usize> {
    bits(s.forced_neighbors(owner) & snap.pending_leaves).collect()
}

fn find_pending(s: &SolverState, snap: &Snapshot) -> Option<Action> {
    bits(s.alive())
        .find(|&v| s.degree(v) >= 2 && snap.pending[v] as usize == s.degree(v) - 1)
        .map(|owner| Action::RemovePending { owner, leaves: pending_leaves_of(s, snap, owner) })
}

fn find_consdeg2(s: &SolverState, snap: &Snapshot) -> Option<Action> {
    for w in bits(s.alive()).filter(|&w| s.degree(w) == 2) {
        for z in bits(s.neighbors(w)).filter(|&z| s.degree(z) == 2) {
            let v = (s.neighbors(w) & !bit(z)).trailing_zeros() as usize;
            if s.is_forced(v, w) || s.is_forced(w, z) {
                continue;
            }
            if !s.has_edge(v, z) {
                return Some(Action::Contract { v, w, z });
            }
            if snap.in_tree(v) && !s.is_forced(v, z) {
                return Some(Action::ResolveTriangle { v, w, z });
            }
        }
    }
    None
}

fn find_deg2(s: &SolverState, snap: &Snapshot) -> Option<Action> {
    for u in bits(snap.tree).filter(|&u| s.degree(u) == 2) {
        if let Some(v) = bits(s.neighbors(u) & !s.forced_neighbors(u)).next() {
            let (a, b) = edge(u, v);
            return Some(Action::Force(a, b));
        }
    }
    None
}

fn find_attach(s: &SolverState, snap: &Snapshot) -> Option<Action> {
    for u in bits(snap.tree).filter(|&u| snap.tree_degree[u] == 2) {
        for v in bits(s.neighbors(u) & !s.forced_neighbors(u) & !snap.tree) {
            let others = s.neighbors(v) & !s.forced_neighbors(v) & snap.tree & !bit(u);
            if bits(others).any(|z| (1..=2).contains(&snap.tree_degree[z])) {
                let (a, b) = edge(u, v);
                return Some(Action::Delete(a, b));
            }
        }
    }
    None
}

fn find_attach2(s: &SolverState, snap: &Snapshot) -> Option<Action> {
    for u in bits(snap.tree).filter(|&u| snap.tree_degree[u] == 2) {
        for v in bits(s.neighbors(u) & !s.forced_neighbors(u)) {
            if snap.has_pending(v) {
                let (a, b) = edge(u, v);
                return Some(Action::Delete(a, b));
            }
        }
    }
    None
}

fn find_special(s: &SolverState, snap: &Snapshot) -> Option<Action> {
    for u in bits(snap.tree).filter(|&u| snap.tree_degree[u] >= 1) {
        for v in bits(s.neighbors(u) & !s.forced_neighbors(u)).filter(|&v| s.degree(v) == 2) {
            let w = (s.neighbors(v) & !bit(u)).trailing_zeros() as usize;
            if !s.is_forced(v, w) && snap.has_pending(w) {
                let (a, b) = edge(u, v);
                return Some(Action::Force(a, b));
            }
        }
    }
    None
}

/// First applicable instance of `rule`, if any.
pub fn find_instance(s: &SolverState, rule: Rule) -> Option<Action> {
    let snap = s.snapshot();
    find_with(s, &snap, rule)
}

fn find_with(s: &SolverState, snap: &Snapshot, rule: Rule) -> Option<Action> {
    match rule {
        Rule::Cycle => find_cycle(s, snap),
        Rule::Bridge => find_bridge(s, snap),
        Rule::Deg1 => find_deg1(s),
        Rule::Pending => find_pending(s, snap),
        Rule::ConsDeg2 => find_consdeg2(s, snap),
        Rule::Deg2 => find_deg2(s, snap),
        Rule::Attach => find_attach(s, snap),
        Rule::Attach2 => find_attach2(s, snap),
        Rule::Special => find_special(s, snap),
    }
}

/// Performs `action`; returns `(k_delta, offset_delta)`.
pub fn apply_action(s: &mut SolverState, action: &Action) -> (i64, usize) {
    match *action {
        Action::Delete(u, v) => {
            s.delete_edge(u, v);
            (0, 0)
        }
        Action::Force(u, v) => {
            s.add_forced(u, v);
            (0, 0)
        }
        Action::RemovePending { owner, ref leaves } => {
            for &leaf in leaves {
                s.remove_pending_leaf(owner, leaf);
            }
            s.bank();
            (-1, 1)
        }
        Action::Contract { v, w, z } => {
            s.contract(v, w, z);
            s.bank();
            (-1, 1)
        }
        Action::ResolveTriangle { v, w, z } => {
            s.delete_edge(v, z);
            s.add_forced(v, w);
            s.add_forced(w, z);
            (0, 0)
        }
    }
}

fn record(s: &mut SolverState, rule: Rule, action: Action) -> ReductionStep {
    let (mut k_delta, offset_delta) = apply_action(s, &action);
    if s.k_remaining().is_none() {
        k_delta = 0;
    }
    ReductionStep { rule, action, k_delta, offset_delta }
}

/// Applies one instance of `rule`. All higher-priority rules must be
/// inapplicable (checked in debug builds).
pub fn apply_rule(s: &mut SolverState, rule: Rule) -> bool {
    let snap = s.snapshot();
    debug_assert!(
        Rule::ALL[..rule.index()].iter().all(|&r| find_with(s, &snap, r).is_none()),
        "{rule} applied while a higher-priority rule is applicable"
    );
    match find_with(s, &snap, rule) {
        Some(action) => {
            record(s, rule, action);
            true
        }
        None => false,
    }
}

/// Applies the enabled rules exhaustively, always restarting from the
/// highest-priority rule.
pub fn apply_all(
    s: &mut SolverState,
    rules: RuleSet,
    mut observer: Option<&mut (dyn Observer + '_)>,
) -> ReductionReport {
    let mut report = ReductionReport::default();
    'outer: loop {
        let snap = s.snapshot();
        for rule in Rule::ALL.into_iter().filter(|&r| rules.contains(r)) {
            if let Some(action) = find_with(s, &snap, rule) {
                let before = observer.is_some().then(|| s.clone());
                let step = record(s, rule, action);
                if let (Some(obs), Some(before)) = (observer.as_deref_mut(), before.as_ref()) {
                    obs.on_reduction(&step, before, s);
                }
                report.steps.push(step);
                continue 'outer;
            }
        }
        break;
    }
    report.fixpoint = true;
    report
}

/// Re-applies the actions of `report` to `s`.
pub fn replay(s: &mut SolverState, report: &ReductionReport) {
    for step in &report.steps {
        apply_action(s, &step.action);
    }
}
