//! Search driver: initial phase, recursive branching, and both modes.

use rayon::prelude::*;

use super::classify::classify_kappa_with;
use super::kernel::{arbitrary_spanning_tree, kernelize, Kernel};
use super::observer::Observer;
use super::rules::{apply_action, apply_all, Action, Rule, RuleSet};
use super::select::{select_with, BranchCase, Selection};
use super::state::{bits, SolverState, MAX_ENGINE_ORDER};
use crate::analysis::{kappa_from_sets, KappaWeights};
use crate::error::{require_connected, SolveError};
use crate::graph::{Edge, Graph};
use crate::oracle::{hamiltonian_path_with_width, DEFAULT_HP_WIDTH};
use crate::tree::{validate_spanning_tree, SpanningTree};

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub rules: RuleSet,
    /// Answer Hamiltonian inputs directly before searching.
    pub hp_precheck: bool,
    pub hp_width: usize,
    /// Decision mode: answer YES once the measure drops to zero.
    pub use_kappa_stop: bool,
    pub kappa_weights: KappaWeights,
    /// Use the single-weight measure for the stop rule.
    pub kappa_simple: bool,
    /// Max mode: prune nodes whose optimistic value cannot beat the best.
    pub bound_pruning: bool,
    /// Solve initial instances on the rayon pool (ignored with an observer).
    pub parallel: bool,
    /// Panic on any state invariant violation at a search node.
    pub check_invariants: bool,
    pub node_budget: Option<u64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            rules: RuleSet::all(),
            hp_precheck: true,
            hp_width: DEFAULT_HP_WIDTH,
            use_kappa_stop: true,
            kappa_weights: KappaWeights::default(),
            kappa_simple: false,
            bound_pruning: true,
            parallel: false,
            check_invariants: cfg!(debug_assertions),
            node_budget: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub instances: u64,
    pub nodes: u64,
    pub branch_nodes: u64,
    pub discarded: u64,
    pub pruned: u64,
    pub kappa_stops: u64,
    /// Nodes where the measure was non-positive but the constructed tree
    /// fell short of `k`.
    pub kappa_certificate_failures: u64,
    pub cases: [u64; 5],
    pub rule_applications: [u64; 9],
}

impl SearchStats {
    fn merge(&mut self, other: &SearchStats) {
        self.instances += other.instances;
        self.nodes += other.nodes;
        self.branch_nodes += other.branch_nodes;
        self.discarded += other.discarded;
        self.pruned += other.pruned;
        self.kappa_stops += other.kappa_stops;
        self.kappa_certificate_failures += other.kappa_certificate_failures;
        for (a, b) in self.cases.iter_mut().zip(other.cases) {
            *a += b;
        }
        for (a, b) in self.rule_applications.iter_mut().zip(other.rule_applications) {
            *a += b;
        }
    }
}

/// How an answer was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Input small enough or already a tree.
    Trivial,
    Hamiltonian,
    Kernel,
    Search,
}

#[derive(Debug, Clone)]
pub struct MaxOutcome {
    pub value: usize,
    pub tree: SpanningTree,
    pub route: Route,
    pub stats: SearchStats,
}

#[derive(Debug, Clone)]
pub struct DecideOutcome {
    pub answer: bool,
    pub certificate: Option<SpanningTree>,
    pub route: Route,
    pub stats: SearchStats,
}

fn check_subcubic(g: &Graph) -> Result<(), SolveError> {
    require_connected(g, 2)?;
    if g.max_degree() > 3 {
        return Err(SolveError::DegreeTooHigh { found: g.max_degree(), limit: 3 });
    }
    Ok(())
}

fn check_engine_size(g: &Graph) -> Result<(), SolveError> {
    if g.n() > MAX_ENGINE_ORDER {
        return Err(SolveError::TooLarge { n: g.n(), limit: MAX_ENGINE_ORDER });
    }
    Ok(())
}

fn hamiltonian_tree(g: &Graph, opts: &SolverOptions) -> Result<Option<SpanningTree>, SolveError> {
    if !opts.hp_precheck {
        return Ok(None);
    }
    let path = hamiltonian_path_with_width(g, opts.hp_width)?;
    Ok(path.map(|p| {
        let edges = p.windows(2).map(|w| (w[0], w[1]));
        validate_spanning_tree(g, edges).expect("a Hamiltonian path is a spanning tree")
    }))
}

/// The initial instances: for every vertex, every way of giving it tree
/// degree at least two.
pub fn initial_instances(g: &Graph, k: Option<usize>) -> Vec<SolverState> {
    let base = match k {
        Some(k) => SolverState::with_parameter(g, k),
        None => SolverState::new(g),
    };
    let mut out = Vec::new();
    for v in 0..g.n() {
        let nbrs = g.neighbors(v);
        match nbrs.len() {
            2 => out.push(base.clone().with_tree(v, &[(v, nbrs[0]), (v, nbrs[1])])),
            3 => {
                for skip in 0..3 {
                    let mut s = base.clone();
                    s.delete_edge(v, nbrs[skip]);
                    let kept: Vec<_> = (0..3).filter(|&i| i != skip).map(|i| (v, nbrs[i])).collect();
                    out.push(s.with_tree(v, &kept));
                }
                out.push(base.clone().with_tree(v, &[(v, nbrs[0]), (v, nbrs[1]), (v, nbrs[2])]));
            }
            _ => {}
        }
    }
    out
}

/// Children of a branching node, in the fixed order add/delete for case 4
/// and (i) to (iii) for case 5.
pub fn branch_children(s: &SolverState, sel: &Selection) -> Vec<SolverState> {
    let (a, b) = (sel.a, sel.b);
    let make = |actions: &[Action]| {
        let mut child = s.clone();
        for action in actions {
            apply_action(&mut child, action);
        }
        child
    };
    match sel.case {
        BranchCase::Case5 => {
            let (c, x) = (sel.c.expect("case 5 needs d(b) = 3"), sel.x.expect("case 5 needs d(b) = 3"));
            vec![
                make(&[Action::Delete(a, b)]),
                make(&[Action::Force(a, b), Action::Force(b, c), Action::Delete(b, x)]),
                make(&[Action::Force(a, b), Action::Force(b, x), Action::Delete(b, c)]),
            ]
        }
        _ => vec![make(&[Action::Force(a, b)]), make(&[Action::Delete(a, b)])],
    }
}

fn tree_internal(tree_degree: &[u32], tree: u64) -> usize {
    bits(tree).filter(|&v| tree_degree[v] >= 2).count()
}

/// Greedy completion of `F` followed by leaf swaps at degree-2 vertices of
/// the `Z` class: a leaf `v ∈ Z` hanging on a degree-3 vertex while its
/// other neighbor is a leaf is moved over to that neighbor.
pub fn kappa_completion(s: &SolverState) -> Vec<Edge> {
    let snap = s.snapshot();
    let sets = classify_kappa_with(s, &snap);
    let mut tree = s.complete_greedily();
    let mut degree = vec![0usize; s.order()];
    for &(u, v) in &tree {
        degree[u] += 1;
        degree[v] += 1;
    }
    loop {
        let mut swapped = false;
        for v in bits(sets.z) {
            if degree[v] != 1 {
                continue;
            }
            let nbrs: Vec<usize> = bits(s.neighbors(v)).collect();
            let Some(pos) =
                tree.iter().position(|&(p, q)| (p == v && nbrs.contains(&q)) || (q == v && nbrs.contains(&p)))
            else {
                continue;
            };
            let (p, q) = tree[pos];
            let u2 = if p == v { q } else { p };
            let u1 = nbrs.iter().copied().find(|&n| n != u2).expect("Z vertices have degree 2");
            if degree[u2] == 3 && degree[u1] == 1 && !s.is_forced(v, u2) {
                tree[pos] = crate::graph::edge(u1, v);
                degree[u2] -= 1;
                degree[u1] += 1;
                swapped = true;
            }
        }
        if !swapped {
            return tree;
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Max,
    Decide(usize),
}

struct Search<'a, 'o> {
    g: &'a Graph,
    opts: &'a SolverOptions,
    observer: Option<&'o mut dyn Observer>,
    mode: Mode,
    stats: SearchStats,
    best: Option<(usize, SolverState)>,
    certificate: Option<SpanningTree>,
}

impl<'a, 'o> Search<'a, 'o> {
    fn new(g: &'a Graph, opts: &'a SolverOptions, observer: Option<&'o mut dyn Observer>, mode: Mode) -> Self {
        Search { g, opts, observer, mode, stats: SearchStats::default(), best: None, certificate: None }
    }

    fn best_value(&self) -> Option<usize> {
        self.best.as_ref().map(|(v, _)| *v)
    }

    fn done(&self) -> bool {
        match self.mode {
            Mode::Max => self.best_value() == Some(self.g.n() - 2),
            Mode::Decide(_) => self.certificate.is_some(),
        }
    }

    fn run_instance(&mut self, s: SolverState) -> Result<(), SolveError> {
        self.stats.instances += 1;
        if s.is_connected() {
            self.explore(s, None)
        } else {
            self.stats.discarded += 1;
            Ok(())
        }
    }

    fn certify(&mut self, s: &SolverState, reduced: &[Edge]) -> Option<SpanningTree> {
        let Mode::Decide(k) = self.mode else {
            return None;
        };
        let tree = s.lift_to(self.g, reduced);
        (tree.internal_count() >= k).then_some(tree)
    }

    fn explore(&mut self, mut s: SolverState, parent: Option<&SolverState>) -> Result<(), SolveError> {
        self.stats.nodes += 1;
        if let Some(budget) = self.opts.node_budget {
            if self.stats.nodes > budget {
                return Err(SolveError::BudgetExceeded(budget));
            }
        }
        let report = apply_all(&mut s, self.opts.rules, self.observer.as_deref_mut());
        for step in &report.steps {
            self.stats.rule_applications[step.rule.index()] += 1;
        }
        if !s.is_connected() {
            self.stats.discarded += 1;
            return Ok(());
        }
        if self.opts.check_invariants {
            if let Err(e) = s.check_invariants(self.opts.rules == RuleSet::all()) {
                panic!("state invariant violated: {e}");
            }
        }
        if let Some(obs) = self.observer.as_deref_mut() {
            if let Some(parent) = parent {
                obs.on_child(parent, &s);
            }
            obs.on_node(&s);
        }
        let snap = s.snapshot();
        let internal = tree_internal(&snap.tree_degree, snap.tree);
        if let Mode::Decide(k) = self.mode {
            if s.banked() + internal >= k {
                let reduced = s.complete_greedily();
                self.certificate = self.certify(&s, &reduced);
                debug_assert!(self.certificate.is_some());
                return Ok(());
            }
            if self.opts.use_kappa_stop {
                let sets = classify_kappa_with(&s, &snap);
                let kappa = kappa_from_sets(
                    &sets,
                    s.k_remaining().unwrap_or(0),
                    &self.opts.kappa_weights,
                    self.opts.kappa_simple,
                );
                if kappa <= 0.0 {
                    let reduced = kappa_completion(&s);
                    if let Some(cert) = self.certify(&s, &reduced) {
                        self.stats.kappa_stops += 1;
                        self.certificate = Some(cert);
                        return Ok(());
                    }
                    self.stats.kappa_certificate_failures += 1;
                }
            }
        }
        let Some(sel) = select_with(&s, &snap) else {
            if snap.tree == s.alive() {
                if self.mode == Mode::Max && self.best_value().is_none_or(|b| s.banked() + internal > b) {
                    self.best = Some((s.banked() + internal, s));
                }
            } else {
                self.stats.discarded += 1;
            }
            return Ok(());
        };
        if self.mode == Mode::Max && self.opts.bound_pruning {
            if let Some(best) = self.best_value() {
                let inner = bits(s.alive()).filter(|&v| s.degree(v) >= 2).count();
                let optimistic = s.banked() + inner.min(s.vertex_count().saturating_sub(2));
                if optimistic <= best {
                    self.stats.pruned += 1;
                    return Ok(());
                }
            }
        }
        self.stats.branch_nodes += 1;
        self.stats.cases[BranchCase::ALL.iter().position(|&c| c == sel.case).unwrap()] += 1;
        if let Some(obs) = self.observer.as_deref_mut() {
            obs.on_branch(&sel, &s);
        }
        for child in branch_children(&s, &sel) {
            if !child.is_connected() {
                self.stats.discarded += 1;
                continue;
            }
            self.explore(child, Some(&s))?;
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

/// Maximum internal spanning tree of a connected subcubic graph.
pub fn solve_max(g: &Graph, opts: &SolverOptions) -> Result<MaxOutcome, SolveError> {
    solve_max_observed(g, opts, None)
}

pub fn solve_max_observed(
    g: &Graph,
    opts: &SolverOptions,
    observer: Option<&mut dyn Observer>,
) -> Result<MaxOutcome, SolveError> {
    check_subcubic(g)?;
    if g.n() == 2 || g.m() + 1 == g.n() {
        let tree = validate_spanning_tree(g, g.edges().to_vec()).expect("a tree is its own spanning tree");
        return Ok(MaxOutcome {
            value: tree.internal_count(),
            tree,
            route: Route::Trivial,
            stats: SearchStats::default(),
        });
    }
    if let Some(tree) = hamiltonian_tree(g, opts)? {
        return Ok(MaxOutcome { value: g.n() - 2, tree, route: Route::Hamiltonian, stats: SearchStats::default() });
    }
    check_engine_size(g)?;
    let instances = initial_instances(g, None);
    let (best, stats) = if opts.parallel && observer.is_none() {
        let results: Vec<_> = instances
            .into_par_iter()
            .map(|s| {
                let mut search = Search::new(g, opts, None, Mode::Max);
                search.run_instance(s).map(|()| (search.best, search.stats))
            })
            .collect::<Result<_, _>>()?;
        let mut stats = SearchStats::default();
        let mut best: Option<(usize, SolverState)> = None;
        for (candidate, st) in results {
            stats.merge(&st);
            if let Some((v, s)) = candidate {
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, s));
                }
            }
        }
        (best, stats)
    } else {
        let mut search = Search::new(g, opts, observer, Mode::Max);
        for s in instances {
            search.run_instance(s)?;
            if search.done() {
                break;
            }
        }
        (search.best, search.stats)
    };
    let (value, state) = best.expect("a connected graph on three or more vertices has a spanning tree");
    let tree = state.lift_to(g, &state.complete_greedily());
    assert_eq!(tree.internal_count(), value, "lifted tree disagrees with the banked count");
    Ok(MaxOutcome { value, tree, route: Route::Search, stats })
}

/// Does `g` have a spanning tree with at least `k` internal vertices?
pub fn decide_k(g: &Graph, k: usize, opts: &SolverOptions) -> Result<DecideOutcome, SolveError> {
    decide_k_observed(g, k, opts, None)
}

pub fn decide_k_observed(
    g: &Graph,
    k: usize,
    opts: &SolverOptions,
    observer: Option<&mut dyn Observer>,
) -> Result<DecideOutcome, SolveError> {
    check_subcubic(g)?;
    let trivial = |answer, certificate| DecideOutcome {
        answer,
        certificate,
        route: Route::Trivial,
        stats: SearchStats::default(),
    };
    if k == 0 {
        return Ok(trivial(true, Some(arbitrary_spanning_tree(g))));
    }
    if k + 2 > g.n() {
        return Ok(trivial(false, None));
    }
    match kernelize(g, k)? {
        Kernel::YesWithTree(tree) => {
            return Ok(DecideOutcome {
                answer: true,
                certificate: Some(tree),
                route: Route::Kernel,
                stats: SearchStats::default(),
            })
        }
        Kernel::Reduced => {}
    }
    if g.m() + 1 == g.n() {
        let tree = arbitrary_spanning_tree(g);
        let answer = tree.internal_count() >= k;
        return Ok(trivial(answer, answer.then_some(tree)));
    }
    if let Some(tree) = hamiltonian_tree(g, opts)? {
        return Ok(DecideOutcome {
            answer: true,
            certificate: Some(tree),
            route: Route::Hamiltonian,
            stats: SearchStats::default(),
        });
    }
    check_engine_size(g)?;
    let mut search = Search::new(g, opts, observer, Mode::Decide(k));
    for s in initial_instances(g, Some(k)) {
        search.run_instance(s)?;
        if search.done() {
            break;
        }
    }
    let certificate = search.certificate;
    Ok(DecideOutcome { answer: certificate.is_some(), certificate, route: Route::Search, stats: search.stats })
}

/// Rules that may be switched off without affecting correctness.
pub const OPTIONAL_RULES: [Rule; 4] = [Rule::ConsDeg2, Rule::Attach, Rule::Attach2, Rule::Special];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};

    fn no_hp() -> SolverOptions {
        SolverOptions { hp_precheck: false, ..SolverOptions::default() }
    }

    #[test]
    fn cycles_and_petersen() {
        let c6 = generate(GraphKind::Cycle, 6, 0, None).unwrap();
        assert_eq!(solve_max(&c6, &SolverOptions::default()).unwrap().value, 4);
        assert_eq!(solve_max(&c6, &no_hp()).unwrap().value, 4);
        let pet = generate(GraphKind::Petersen, 0, 0, None).unwrap();
        assert_eq!(solve_max(&pet, &no_hp()).unwrap().value, 8);
    }

    #[test]
    fn initial_phase_counts() {
        let pet = generate(GraphKind::Petersen, 0, 0, None).unwrap();
        assert_eq!(initial_instances(&pet, None).len(), 40);
        let c5 = generate(GraphKind::Cycle, 5, 0, None).unwrap();
        assert_eq!(initial_instances(&c5, None).len(), 5);
    }

    #[test]
    fn decision_examples() {
        let pet = generate(GraphKind::Petersen, 0, 0, None).unwrap();
        assert!(decide_k(&pet, 8, &no_hp()).unwrap().answer);
        assert!(!decide_k(&pet, 9, &SolverOptions::default()).unwrap().answer);
    }

    #[test]
    fn rejects_high_degree() {
        let star = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(matches!(solve_max(&star, &SolverOptions::default()), Err(SolveError::DegreeTooHigh { found: 4, .. })));
    }

    #[test]
    fn certificate_reaches_k() {
        let g = generate(GraphKind::RandomSubcubic, 12, 3, None).unwrap();
        for k in 1..=10 {
            let out = decide_k(&g, k, &no_hp()).unwrap();
            if let Some(t) = out.certificate {
                assert!(t.internal_count() >= k);
            }
        }
    }
}
