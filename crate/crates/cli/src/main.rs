use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symbreak::coloring::GraphSymmetry;
use symbreak::golden::verify_appendix;
use symbreak::graph::{make_family, parse_graph6, FamilySpec, Graph};
use symbreak::partition::{count_partition_index, dp_number, PartitionFamily};
use symbreak::products::{d_lexicographic, d_xjoin_upper_bound};
use symbreak::properties::run_properties;
use symbreak::tables::{
    compute_table, compute_value, FamilyPattern, IndexKind, IndexName, OutputFormat, TableRequest,
};
use symbreak::{BackendChoice, IndexValue};
use thiserror::Error;

/// Symmetry-breaking indices of finite graphs.
#[derive(Parser)]
#[command(name = "symbreak", version)]
struct Cli {
    /// Worker threads for table cells and enumeration (default: all cores).
    #[arg(long, global = true, env = "SYMBREAK_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one index of one graph.
    Index(IndexArgs),
    /// Compute an (n x k) grid over a family with one ranged parameter.
    Table(TableArgs),
    /// Distinguishing numbers of lexicographic products and X-joins.
    #[command(subcommand)]
    Product(ProductCommand),
    /// Recompute the bundled reference tables or run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct IndexArgs {
    /// `kind:p1[,p2]`, a graph6 word, or `@file` holding a graph6 word.
    graph: String,
    #[command(flatten)]
    query: Query,
    /// Number of colors or cells, for the k-indexed counts.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct TableArgs {
    /// Family with one ranged parameter, e.g. `path:2..10` or `kneser:5..7,2`.
    #[arg(long)]
    family: String,
    #[command(flatten)]
    query: Query,
    /// Column range `a..b` (or a single `k`); ignored for D, theta and DP.
    #[arg(long, default_value = "2..10")]
    k: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct Query {
    /// Phi, phi, Psi, psi, Pi, pi, Xi, xi, D, theta or DP.
    #[arg(long)]
    index: String,
    /// Count with exactly k colors or cells (same as the lowercase name).
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    backend: BackendArg,
}

#[derive(Subcommand)]
enum ProductCommand {
    /// D(X o Y) of the lexicographic product.
    Lex { x: String, y: String },
    /// Upper bound on D of the X-join of one fiber per base vertex.
    Xjoin {
        base: String,
        #[arg(required = true)]
        fibers: Vec<String>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Appendix)]
    suite: Suite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Auto,
    Oracle,
    Moebius,
    Closed,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Appendix,
    Properties,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] symbreak::Error),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_bound() => 3,
            CliError::Core(symbreak::Error::Internal(_)) | CliError::Mismatch(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

enum GraphInput {
    Family(FamilySpec),
    Raw(Graph),
}

impl GraphInput {
    fn parse(arg: &str) -> CliResult<Self> {
        if let Some(path) = arg.strip_prefix('@') {
            let text = fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.into(),
                source,
            })?;
            let word = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| CliError::Usage(format!("{path} holds no graph6 word")))?;
            return Ok(GraphInput::Raw(parse_graph6(word)?));
        }
        // ':' never occurs in a graph6 word
        if arg.contains(':') {
            Ok(GraphInput::Family(arg.parse()?))
        } else {
            Ok(GraphInput::Raw(parse_graph6(arg)?))
        }
    }

    fn graph(&self) -> CliResult<Graph> {
        match self {
            GraphInput::Family(spec) => Ok(make_family(spec)?),
            GraphInput::Raw(g) => Ok(g.clone()),
        }
    }
}

impl Query {
    fn index(&self) -> CliResult<IndexName> {
        let index: IndexName = self.index.parse()?;
        if !self.exact {
            return Ok(index);
        }
        if !index.takes_k() {
            return Err(CliError::Usage(format!(
                "--exact does not apply to {index}"
            )));
        }
        Ok(index.exact())
    }

    fn backend(&self) -> BackendChoice {
        match self.backend {
            BackendArg::Auto => BackendChoice::Auto,
            BackendArg::Oracle => BackendChoice::Oracle,
            BackendArg::Moebius => BackendChoice::Moebius,
            BackendArg::Closed => BackendChoice::Closed,
        }
    }
}

fn parse_k_range(s: &str) -> CliResult<RangeInclusive<usize>> {
    let number = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("bad k range `{s}`")))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok(number(a)?..=number(b.trim_start_matches('='))?),
        None => {
            let k = number(s)?;
            Ok(k..=k)
        }
    }
}

fn cmd_index(args: &IndexArgs) -> CliResult<()> {
    let index = args.query.index()?;
    let backend = args.query.backend();
    let input = GraphInput::parse(&args.graph)?;
    let start = Instant::now();
    let value = match &input {
        GraphInput::Family(spec) => compute_value(index, spec, args.k, backend)?,
        GraphInput::Raw(g) => raw_index(g, index, args.k, backend)?,
    };
    match &value {
        Some(v) => {
            println!("{v}");
            eprintln!("backend: {}", v.backend);
        }
        None => {
            println!("none");
            eprintln!("{index}: no distinguishing partition exists");
        }
    }
    eprintln!("runtime: {:.3?}", start.elapsed());
    Ok(())
}

/// Index of a graph given without a family name, so only graph-level
/// closed forms apply.
fn raw_index(
    g: &Graph,
    index: IndexName,
    k: Option<usize>,
    backend: BackendChoice,
) -> CliResult<Option<IndexValue>> {
    let need_k = || k.ok_or_else(|| CliError::Usage(format!("index {index} requires --k")));
    let sym = GraphSymmetry::new(g)?;
    let partition = |family| -> CliResult<Option<IndexValue>> {
        if matches!(backend, BackendChoice::Moebius | BackendChoice::Closed) {
            return Err(CliError::Usage(format!(
                "{index} of a graph6 input is computed by enumeration only"
            )));
        }
        Ok(Some(count_partition_index(
            g,
            need_k()?,
            family,
            index.mode,
        )?))
    };
    match index.kind {
        IndexKind::D => Ok(Some(sym.distinguishing_number()?)),
        IndexKind::Theta => Ok(Some(sym.threshold())),
        IndexKind::Dp => Ok(dp_number(g)?),
        IndexKind::Phi => Ok(Some(sym.count_phi(need_k()?, index.mode, backend)?)),
        IndexKind::Psi => partition(PartitionFamily::Psi),
        IndexKind::Pi => partition(PartitionFamily::Pi),
        IndexKind::Xi => partition(PartitionFamily::Xi),
    }
}

fn cmd_table(args: &TableArgs) -> CliResult<()> {
    let family: FamilyPattern = args.family.parse()?;
    let req = TableRequest {
        index: args.query.index()?,
        family,
        k_range: parse_k_range(&args.k)?,
        backend: args.query.backend(),
    };
    let start = Instant::now();
    let table = compute_table(&req)?;
    let format = match args.format {
        Format::Csv => OutputFormat::Csv,
        Format::Json => OutputFormat::Json,
        Format::Markdown => OutputFormat::Markdown,
    };
    print!("{}", table.render(format));
    let backends: Vec<String> = table.backends().iter().map(ToString::to_string).collect();
    eprintln!("backends: {}", backends.join(", "));
    eprintln!("runtime: {:.3?}", start.elapsed());
    Ok(())
}

fn cmd_product(cmd: &ProductCommand) -> CliResult<()> {
    let start = Instant::now();
    match cmd {
        ProductCommand::Lex { x, y } => {
            let x = GraphInput::parse(x)?.graph()?;
            let y = GraphInput::parse(y)?.graph()?;
            let result = d_lexicographic(&x, &y)?;
            println!("{}", result.value);
            let a = &result.analysis;
            eprintln!(
                "naturality: {} natural of {} automorphisms",
                a.natural_count, a.full_aut_order
            );
            if result.fallback {
                eprintln!("backend: direct computation (unnatural automorphisms present)");
            } else {
                eprintln!("backend: {}", result.value.backend);
            }
            if let Some(direct) = &result.direct {
                eprintln!("direct D: {direct}");
                if *direct != result.value.value {
                    return Err(CliError::Mismatch(format!(
                        "product rule gives {}, direct computation {direct}",
                        result.value
                    )));
                }
            }
        }
        ProductCommand::Xjoin { base, fibers } => {
            let x = GraphInput::parse(base)?.graph()?;
            let fibers = fibers
                .iter()
                .map(|f| GraphInput::parse(f)?.graph())
                .collect::<CliResult<Vec<_>>>()?;
            let result = d_xjoin_upper_bound(&x, &fibers)?;
            println!("{}", result.bound);
            let f: Vec<String> = result
                .witness
                .f
                .labels()
                .iter()
                .map(u32::to_string)
                .collect();
            eprintln!(
                "base coloring: {} ({} candidates)",
                f.join(","),
                result.candidates
            );
            match &result.direct {
                Some(d) => eprintln!("direct D: {d} ({})", d.backend),
                None => eprintln!("direct D: beyond counting bounds"),
            }
        }
    }
    eprintln!("runtime: {:.3?}", start.elapsed());
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<()> {
    match args.suite {
        Suite::Appendix => {
            let report = verify_appendix();
            for t in &report.tables {
                let status = if t.passed() { "PASS" } else { "FAIL" };
                let detail = match &t.error {
                    Some(e) => format!("error: {e}"),
                    None => format!("{} of {} cells differ", t.mismatches.len(), t.cells),
                };
                println!("{status} {:<16} {} ({detail})", t.name, t.caption);
                eprintln!("{}: {:.3?}", t.name, t.elapsed);
            }
            println!(
                "{}/{} tables match",
                report.passed_count(),
                report.tables.len()
            );
            for m in report.first_mismatches(10) {
                let actual = m
                    .actual
                    .as_ref()
                    .map_or("missing".into(), ToString::to_string);
                println!(
                    "  {} n={} k={}: expected {}, computed {actual}",
                    m.table, m.n, m.k, m.expected
                );
            }
            eprintln!("runtime: {:.3?}", report.elapsed);
            if !report.passed() {
                return Err(CliError::Mismatch("reference tables differ".into()));
            }
        }
        Suite::Properties => {
            let start = Instant::now();
            let outcomes = run_properties();
            let mut failed = 0;
            let mut shown = 0;
            for o in &outcomes {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                println!("{status} {} ({} cases)", o.name, o.cases);
                eprintln!("{}: {:.3?}", o.name, o.elapsed);
                if !o.passed() {
                    failed += 1;
                }
                for f in o.failures.iter().take(10usize.saturating_sub(shown)) {
                    println!("  {f}");
                    shown += 1;
                }
            }
            println!(
                "{}/{} properties hold",
                outcomes.len() - failed,
                outcomes.len()
            );
            eprintln!("runtime: {:.3?}", start.elapsed());
            if failed > 0 {
                return Err(CliError::Mismatch("properties failed".into()));
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Index(args) => cmd_index(args),
        Command::Table(args) => cmd_table(args),
        Command::Product(cmd) => cmd_product(cmd),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
