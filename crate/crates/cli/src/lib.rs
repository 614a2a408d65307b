//! Command-line front end for `mist-core`.
//!
//! [`run`] takes the argument list and the three standard streams so the
//! whole tool can be driven in-process by tests.

use std::fmt::Display;
use std::io::{self, Read, Write};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mist_core::analysis::{
    audit_options, audit_run_weighted, beta, epsilon, kernel_composed, naive_edge_base, naive_edge_bound, round_up_4,
    table1_bound, verify_bound, AuditMode, AuditReport, Family, KappaWeights, MuWeights,
};
use mist_core::branch::{decide_k, solve_max, SolverOptions};
use mist_core::dp::{dp_solve, dp_state_count};
use mist_core::oracle::{oracle_mist, DEFAULT_BUDGET};
use mist_core::{generate, parse_graph, Graph, GraphError, GraphFormat, GraphKind, SolveError, SpanningTree};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mist",
    version,
    about = "Maximum internal spanning trees: exact, parameterized and brute-force solvers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a spanning tree with the most internal vertices.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Decide whether a spanning tree with at least K internal vertices exists.
    Decide {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Solve by exhaustive enumeration of spanning trees.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        output: OutputFormat,
    },
    /// Generate a graph in DIMACS format.
    Gen {
        #[arg(long, default_value = "random_subcubic", value_parser = parse_from_str::<GraphKind>)]
        kind: GraphKind,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Print the analysis constants and bounds.
    Analyze {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        output: OutputFormat,
    },
    /// Run the branching solver while checking measure monotonicity.
    Audit {
        #[command(flatten)]
        input: InputArgs,
        /// Audit the decision mode with this parameter instead of max mode.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// Time the solvers over a sweep of generated graphs (TSV output).
    Bench {
        #[arg(long, default_value_t = 6)]
        min_n: usize,
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        step: usize,
        /// Graphs per size.
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "random_subcubic", value_parser = parse_from_str::<GraphKind>)]
        kind: GraphKind,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Method::Branch, Method::Dp])]
        methods: Vec<Method>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(default_value = "-")]
    pub input: String,
    /// Input format; detected from the first line when omitted.
    #[arg(long, value_parser = parse_from_str::<GraphFormat>)]
    pub format: Option<GraphFormat>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Disable the measure-based early YES in decision mode.
    #[arg(long)]
    pub no_kappa_stop: bool,
    /// Skip the Hamiltonian path shortcut.
    #[arg(long)]
    pub no_hp_precheck: bool,
    /// Search node budget for the branching solver.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Solve the initial instances in parallel.
    #[arg(long)]
    pub parallel: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub output: OutputFormat,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// Exact-measure weights `w2,w3_1,w3_2,w3_2star`.
    #[arg(long, value_parser = parse_weights::<4>)]
    pub mu: Option<[f64; 4]>,
    /// Parameterized weights `w1,w2,w3`.
    #[arg(long, value_parser = parse_weights::<3>)]
    pub kappa: Option<[f64; 3]>,
    /// Weight of the single-weight measure.
    #[arg(long)]
    pub simple_w: Option<f64>,
}

impl WeightArgs {
    fn mu(&self) -> MuWeights {
        match self.mu {
            Some([w2, w3_1, w3_2, w3_2star]) => MuWeights { w2, w3_1, w3_2, w3_2star },
            None => MuWeights::default(),
        }
    }

    fn kappa(&self) -> KappaWeights {
        let mut w = KappaWeights::default();
        if let Some([w1, w2, w3]) = self.kappa {
            w = KappaWeights { w1, w2, w3, ..w };
        }
        if let Some(simple_w) = self.simple_w {
            w.simple_w = simple_w;
        }
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Branching solver on subcubic inputs, dynamic program otherwise.
    Auto,
    Dp,
    Branch,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Tsv,
}

fn parse_from_str<T: FromStr<Err = String>>(s: &str) -> Result<T, String> {
    s.parse()
}

fn parse_weights<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let values: Vec<f64> =
        s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"))).collect::<Result<_, _>>()?;
    values.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated weights, got {}", v.len()))
}

/// Failure of one invocation, mapped to an exit code by [`run`].
#[derive(Debug)]
enum Failure {
    Usage(String),
    Precondition(SolveError),
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure::Precondition(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Line writer that separates fields with spaces or tabs.
struct Out<'a> {
    w: &'a mut dyn Write,
    sep: &'static str,
}

impl Out<'_> {
    fn line(&mut self, fields: &[&dyn Display]) -> io::Result<()> {
        let text: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
        writeln!(self.w, "{}", text.join(self.sep))
    }
}

fn out(w: &mut dyn Write, format: OutputFormat) -> Out<'_> {
    Out { w, sep: if format == OutputFormat::Tsv { "\t" } else { " " } }
}

struct Input {
    graph: Graph,
    /// Added to vertex ids on output.
    shift: usize,
}

fn read_input(args: &InputArgs, stdin: &mut dyn Read) -> Result<Input, Failure> {
    let text = if args.input == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&args.input).map_err(|e| Failure::Usage(format!("{}: {e}", args.input)))?
    };
    let format = args.format.unwrap_or_else(|| GraphFormat::detect(&text));
    let graph = parse_graph(&text, format)?;
    Ok(Input { graph, shift: usize::from(format == GraphFormat::Dimacs) })
}

fn write_tree(o: &mut Out<'_>, tree: &SpanningTree, shift: usize) -> io::Result<()> {
    for &(u, v) in tree.edges() {
        o.line(&[&"tree", &(u + shift), &(v + shift)])?;
    }
    Ok(())
}

fn solver_options(args: &SolverArgs) -> SolverOptions {
    SolverOptions {
        use_kappa_stop: !args.no_kappa_stop,
        hp_precheck: !args.no_hp_precheck,
        node_budget: args.budget,
        parallel: args.parallel,
        ..SolverOptions::default()
    }
}

/// Result of one solver call: value, tree, and a work counter.
struct Solved {
    value: usize,
    tree: Option<SpanningTree>,
    work: u64,
}

fn solve_with(g: &Graph, method: Method, opts: &SolverOptions, want_tree: bool) -> Result<Solved, SolveError> {
    let method = match method {
        Method::Auto if g.max_degree() <= 3 => Method::Branch,
        Method::Auto => Method::Dp,
        m => m,
    };
    Ok(match method {
        Method::Branch => {
            let out = solve_max(g, opts)?;
            Solved { value: out.value, tree: Some(out.tree), work: out.stats.nodes }
        }
        Method::Dp => {
            let out = dp_solve(g, want_tree)?;
            Solved { value: out.value, tree: out.tree, work: out.states }
        }
        Method::Oracle => {
            let out = oracle_mist(g, opts.node_budget.unwrap_or(DEFAULT_BUDGET))?;
            Solved { value: out.value, tree: Some(out.witness), work: out.trees_enumerated }
        }
        Method::Auto => unreachable!("resolved above"),
    })
}

fn cmd_solve(input: Input, method: Method, args: &SolverArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let solved = solve_with(&input.graph, method, &solver_options(args), true)?;
    let mut o = out(stdout, args.output);
    o.line(&[&"value", &solved.value])?;
    if let Some(tree) = &solved.tree {
        write_tree(&mut o, tree, input.shift)?;
    }
    Ok(EXIT_OK)
}

fn cmd_decide(input: Input, k: usize, args: &SolverArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let outcome = decide_k(&input.graph, k, &solver_options(args))?;
    let mut o = out(stdout, args.output);
    if !outcome.answer {
        o.line(&[&"NO"])?;
        return Ok(EXIT_NO);
    }
    o.line(&[&"YES"])?;
    if let Some(tree) = &outcome.certificate {
        write_tree(&mut o, tree, input.shift)?;
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(input: Input, budget: u64, format: OutputFormat, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let best = oracle_mist(&input.graph, budget)?;
    let mut o = out(stdout, format);
    o.line(&[&"value", &best.value])?;
    write_tree(&mut o, &best.witness, input.shift)?;
    Ok(EXIT_OK)
}

fn cmd_gen(
    kind: GraphKind,
    n: usize,
    seed: u64,
    max_degree: Option<usize>,
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    let g = generate(kind, n, seed, max_degree)?;
    stdout.write_all(g.to_dimacs().as_bytes())?;
    Ok(EXIT_OK)
}

fn f4(x: f64) -> String {
    format!("{x:.4}")
}

fn cmd_analyze(weights: &WeightArgs, format: OutputFormat, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (mu, kappa) = (weights.mu(), weights.kappa());
    let mut o = out(stdout, format);
    for delta in 3..=8 {
        o.line(&[&"table1", &delta, &f4(table1_bound(delta))])?;
    }
    for delta in 3..=8 {
        o.line(&[&"beta", &delta, &f4(beta(delta))])?;
    }
    for delta in 3..=8 {
        o.line(&[&"epsilon", &delta, &f4(epsilon(delta))])?;
    }
    o.line(&[&"naive", &f4(naive_edge_bound())])?;
    o.line(&[&"naive_exact", &format!("{:.6}", naive_edge_base(3))])?;
    let mut exact_max = None;
    for family in Family::ALL {
        let report = verify_bound(family, &mu, &kappa).map_err(|e| Failure::Usage(e.to_string()))?;
        o.line(&[&"bound", &family.name(), &f4(report.max)])?;
        o.line(&[&"worst", &family.name(), &report.worst_case])?;
        if family == Family::Exact {
            exact_max = Some(report.max);
        }
    }
    if let Some(base) = exact_max {
        o.line(&[&"kernel", &f4(round_up_4(kernel_composed(base)))])?;
    }
    Ok(EXIT_OK)
}

fn write_audit(report: &AuditReport, w: &mut dyn Write) -> io::Result<()> {
    match (report.value, report.answer) {
        (Some(v), _) => writeln!(w, "value {v}")?,
        (_, Some(a)) => writeln!(w, "answer {}", if a { "YES" } else { "NO" })?,
        _ => {}
    }
    writeln!(w, "nodes {}", report.nodes)?;
    writeln!(w, "branch_nodes {}", report.branch_nodes)?;
    writeln!(w, "children_checked {}", report.children_checked)?;
    writeln!(w, "node_ratio {:.6}", report.node_ratio)?;
    for (rule, d) in &report.per_rule {
        write!(w, "rule {rule} applications {} mu_delta {} {}", d.applications, f4(d.mu_min), f4(d.mu_max))?;
        if let (Some(lo), Some(hi)) = (d.kappa_min, d.kappa_max) {
            write!(w, " kappa_delta {} {}", f4(lo), f4(hi))?;
        }
        writeln!(w)?;
    }
    writeln!(w, "violations {}", report.violations.len())?;
    for v in &report.violations {
        writeln!(w, "violation {v:?}")?;
    }
    Ok(())
}

fn cmd_audit(input: Input, k: Option<usize>, weights: &WeightArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let mode = k.map_or(AuditMode::Max, AuditMode::Decide);
    let opts = SolverOptions { kappa_weights: weights.kappa(), ..audit_options() };
    let report = audit_run_weighted(&input.graph, mode, &opts, &weights.mu())?;
    write_audit(&report, stdout)?;
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_NO })
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    min_n: usize,
    max_n: usize,
    step: usize,
    count: usize,
    seed: u64,
    kind: GraphKind,
    methods: &[Method],
    stdout: &mut dyn Write,
) -> Result<i32, Failure> {
    if step == 0 || min_n > max_n {
        return Err(Failure::Usage("empty size sweep".into()));
    }
    let mut o = out(stdout, OutputFormat::Tsv);
    o.line(&[&"n", &"seed", &"method", &"value", &"nodes", &"ms"])?;
    let opts = SolverOptions::default();
    for n in (min_n..=max_n).step_by(step) {
        for i in 0..count as u64 {
            let graph_seed = seed + i;
            let g = generate(kind, n, graph_seed, None)?;
            for &method in methods {
                let start = Instant::now();
                let solved = match method {
                    Method::Dp => {
                        let value = dp_solve(&g, false)?.value;
                        Solved { value, tree: None, work: dp_state_count(&g)? }
                    }
                    m => solve_with(&g, m, &opts, false)?,
                };
                let ms = format!("{:.3}", start.elapsed().as_secs_f64() * 1e3);
                let name = method.to_possible_value().expect("no skipped variants").get_name().to_string();
                o.line(&[&n, &graph_seed, &name, &solved.value, &solved.work, &ms])?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Solve { input, method, solver } => {
            let input = read_input(&input, stdin)?;
            if method == Method::Branch && input.graph.max_degree() > 3 {
                return Err(Failure::Precondition(SolveError::DegreeTooHigh {
                    found: input.graph.max_degree(),
                    limit: 3,
                }));
            }
            cmd_solve(input, method, &solver, stdout)
        }
        Command::Decide { input, k, solver } => cmd_decide(read_input(&input, stdin)?, k, &solver, stdout),
        Command::Oracle { input, budget, output } => cmd_oracle(read_input(&input, stdin)?, budget, output, stdout),
        Command::Gen { kind, n, seed, max_degree } => cmd_gen(kind, n, seed, max_degree, stdout),
        Command::Analyze { weights, output } => cmd_analyze(&weights, output, stdout),
        Command::Audit { input, k, weights } => cmd_audit(read_input(&input, stdin)?, k, &weights, stdout),
        Command::Bench { min_n, max_n, step, count, seed, kind, methods } => {
            cmd_bench(min_n, max_n, step, count, seed, kind, &methods, stdout)
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = dispatch(cli, stdin, stdout);
    let _ = stdout.flush();
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Precondition(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_PRECONDITION
        }
    }
}
