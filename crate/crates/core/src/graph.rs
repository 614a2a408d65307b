//! Simple undirected graphs, text formats, structural queries and instance
//! generators.
//!
//! Vertices are always `0..n`. DIMACS input is 1-indexed on disk and shifted
//! down on parse; [`Graph::to_dimacs`] shifts it back.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Canonical undirected edge, always stored with `.0 < .1`.
pub type Edge = (usize, usize);

/// Orders an endpoint pair into canonical form.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("cannot generate {kind}: {reason}")]
    Unrealizable { kind: &'static str, reason: String },
}

/// Input formats understood by [`parse_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// `c` comments, one `p edge <n> <m>` header, `e <u> <v>` lines (1-indexed).
    Dimacs,
    /// One `u v` pair per line, 0-indexed, `n` = max index + 1.
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dimacs" => Ok(GraphFormat::Dimacs),
            "edgelist" => Ok(GraphFormat::EdgeList),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

impl GraphFormat {
    /// Guesses the format from the first non-blank line.
    pub fn detect(text: &str) -> GraphFormat {
        let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        match first.chars().next() {
            Some('c' | 'p' | 'e') => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }
}

/// Read-only neighbourhood access, shared by [`Graph`] and the solver's
/// working graph so both can use the same traversal code.
pub trait Adjacency {
    /// Number of vertex slots (vertex ids are `0..order()`).
    fn order(&self) -> usize;
    fn neighbors_of(&self, v: usize) -> impl Iterator<Item = usize> + '_;
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range ids.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GraphError> {
        let mut seen = BTreeSet::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            let line = i + 1;
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { line, vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            if !seen.insert(edge(u, v)) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
        }
        Ok(Graph::from_canonical(n, seen))
    }

    fn from_canonical(n: usize, edges: BTreeSet<Edge>) -> Graph {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { n, adjacency, edges: edges.into_iter().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&edge(u, v)).ok()
    }

    /// Neighbourhood as a bitmask; only meaningful for `n <= 64`.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adjacency[v].iter().fold(0, |m, &u| m | (1u64 << u))
    }

    /// True iff the graph has one connected component. The empty graph and a
    /// single vertex count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        reached == self.n
    }

    /// Edges whose removal disconnects their component.
    pub fn bridges(&self) -> Vec<Edge> {
        bridges(self)
    }

    /// The graph with one edge removed (used by cross-checks).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let target = edge(u, v);
        let rest = self.edges.iter().copied().filter(|&e| e != target).collect();
        Graph::from_canonical(self.n, rest)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }

    pub fn to_edgelist(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn serialize(&self, format: GraphFormat) -> String {
        match format {
            GraphFormat::Dimacs => self.to_dimacs(),
            GraphFormat::EdgeList => self.to_edgelist(),
        }
    }
}

impl Adjacency for Graph {
    fn order(&self) -> usize {
        self.n
    }

    fn neighbors_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }
}

/// Bridges of any simple graph, found with one iterative depth-first search
/// carrying discovery times and low-points. Output is sorted.
pub fn bridges<A: Adjacency>(graph: &A) -> Vec<Edge> {
    let n = graph.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut clock = 0;
    let mut found = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        // (vertex, parent, remaining neighbours)
        let mut stack = vec![(root, usize::MAX, graph.neighbors_of(root))];
        while let Some((v, parent, iter)) = stack.last_mut() {
            let (v, parent) = (*v, *parent);
            match iter.next() {
                Some(u) if u == parent => {}
                Some(u) if disc[u] == usize::MAX => {
                    disc[u] = clock;
                    low[u] = clock;
                    clock += 1;
                    stack.push((u, v, graph.neighbors_of(u)));
                }
                Some(u) => low[v] = low[v].min(disc[u]),
                None => {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            found.push(edge(parent, v));
                        }
                    }
                }
            }
        }
    }
    found.sort_unstable();
    found
}

/// Parses a graph in the given text format.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::Dimacs => parse_dimacs(text),
        GraphFormat::EdgeList => parse_edgelist(text),
    }
}

fn syntax(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Syntax { line, message: message.into() }
}

fn parse_index(token: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token.parse::<usize>().map_err(|_| syntax(line, format!("invalid {what} `{token}`")))
}

fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "second problem line"));
                }
                if tokens.next() != Some("edge") {
                    return Err(syntax(line, "expected `p edge <n> <m>`"));
                }
                let n = parse_index(tokens.next(), line, "vertex count")?;
                let m = parse_index(tokens.next(), line, "edge count")?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| syntax(line, "edge before problem line"))?;
                let u = parse_index(tokens.next(), line, "endpoint")?;
                let v = parse_index(tokens.next(), line, "endpoint")?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(GraphError::VertexOutOfRange { line, vertex: x, n });
                    }
                }
                if u == v {
                    return Err(GraphError::SelfLoop { line, vertex: u });
                }
                if !seen.insert(edge(u - 1, v - 1)) {
                    return Err(GraphError::DuplicateEdge { line, u, v });
                }
            }
            other => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
        if tokens.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let (n, m) = header.ok_or_else(|| syntax(text.lines().count().max(1), "missing problem line"))?;
    if seen.len() != m {
        return Err(syntax(text.lines().count().max(1), format!("header declares {m} edges, found {}", seen.len())));
    }
    Ok(Graph::from_canonical(n, seen))
}

fn parse_edgelist(text: &str) -> Result<Graph, GraphError> {
    let mut seen = BTreeSet::new();
    let mut n = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tokens = raw.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        let u = parse_index(Some(first), line, "endpoint")?;
        let v = parse_index(tokens.next(), line, "endpoint")?;
        if tokens.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        if !seen.insert(edge(u, v)) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        n = n.max(u + 1).max(v + 1);
    }
    Ok(Graph::from_canonical(n, seen))
}

/// Families produced by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Path,
    Cycle,
    Petersen,
    Grid,
    RandomSubcubic,
    RandomDegreeBounded,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::Petersen => "petersen",
            GraphKind::Grid => "grid",
            GraphKind::RandomSubcubic => "random_subcubic",
            GraphKind::RandomDegreeBounded => "random_degree_bounded",
        }
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "path" => GraphKind::Path,
            "cycle" => GraphKind::Cycle,
            "petersen" => GraphKind::Petersen,
            "grid" => GraphKind::Grid,
            "random_subcubic" => GraphKind::RandomSubcubic,
            "random_degree_bounded" => GraphKind::RandomDegreeBounded,
            other => return Err(format!("unknown graph kind `{other}`")),
        })
    }
}

/// Default degree bound for [`GraphKind::RandomDegreeBounded`].
pub const DEFAULT_MAX_DEGREE: usize = 4;

/// Generates a connected graph of the requested family. Random families are
/// a deterministic function of `seed`.
pub fn generate(kind: GraphKind, n: usize, seed: u64, max_degree: Option<usize>) -> Result<Graph, GraphError> {
    let unrealizable = |reason: String| GraphError::Unrealizable { kind: kind.name(), reason };
    if n == 0 && kind != GraphKind::Petersen {
        return Err(unrealizable("n must be at least 1".into()));
    }
    let edges: Vec<Edge> = match kind {
        GraphKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
        GraphKind::Cycle => {
            if n < 3 {
                return Err(unrealizable(format!("a simple cycle needs 3 vertices, got {n}")));
            }
            (0..n).map(|i| edge(i, (i + 1) % n)).collect()
        }
        GraphKind::Petersen => {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push(edge(i, (i + 1) % 5));
                e.push(edge(i, i + 5));
                e.push(edge(5 + i, 5 + (i + 2) % 5));
            }
            return Graph::new(10, e);
        }
        GraphKind::Grid => {
            let rows = (n as f64).sqrt().floor().max(1.0) as usize;
            let cols = n.div_ceil(rows);
            let mut e = Vec::new();
            for v in 0..n {
                let (r, c) = (v / cols, v % cols);
                if c + 1 < cols && v + 1 < n {
                    e.push((v, v + 1));
                }
                if r + 1 < rows && v + cols < n {
                    e.push((v, v + cols));
                }
            }
            e
        }
        GraphKind::RandomSubcubic => random_bounded(n, 3, seed).map_err(unrealizable)?,
        GraphKind::RandomDegreeBounded => {
            let bound = max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
            random_bounded(n, bound, seed).map_err(unrealizable)?
        }
    };
    Graph::new(n, edges)
}

/// Random tree by attachment to parents below the degree bound, then random
/// extra edges between unsaturated vertices up to a random target size.
fn random_bounded(n: usize, bound: usize, seed: u64) -> Result<Vec<Edge>, String> {
    if bound < 2 && n > 2 {
        return Err(format!("max degree {bound} cannot connect {n} vertices"));
    }
    if bound == 0 && n > 1 {
        return Err("max degree 0 cannot connect two vertices".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut edges = BTreeSet::new();
    for i in 1..n {
        let open: Vec<usize> = order[..i].iter().copied().filter(|&p| degree[p] < bound).collect();
        let parent = *open.choose(&mut rng).ok_or("no parent below the degree bound")?;
        let child = order[i];
        edges.insert(edge(parent, child));
        degree[parent] += 1;
        degree[child] += 1;
    }
    let ceiling = n.saturating_sub(1).max(n * bound / 2);
    let target = rng.gen_range(n.saturating_sub(1)..=ceiling);
    while edges.len() < target {
        let candidates: Vec<Edge> = (0..n)
            .filter(|&u| degree[u] < bound)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| degree[v] < bound && !edges.contains(&(u, v)))
            .collect();
        let Some(&(u, v)) = candidates.choose(&mut rng) else {
            break;
        };
        edges.insert((u, v));
        degree[u] += 1;
        degree[v] += 1;
    }
    Ok(edges.into_iter().collect())
}

/// `count` random connected subcubic graphs with `n` cycling through
/// `min_n..=max_n`; instance `i` uses seed `base_seed + i`.
pub fn subcubic_corpus(count: usize, min_n: usize, max_n: usize, base_seed: u64) -> Vec<Graph> {
    let span = max_n - min_n + 1;
    (0..count)
        .map(|i| {
            let n = min_n + i % span;
            generate(GraphKind::RandomSubcubic, n, base_seed + i as u64, None)
                .expect("subcubic generation is total for n >= 1")
        })
        .collect()
}
