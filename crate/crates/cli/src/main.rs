//! `maxsets` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or input-content error, 2 usage error,
//! 3 verification failure.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use maxsets::catalog::{
    bcclique_system, clique_system, compare_mccis, independent_set_system, map_back, parse_dimacs,
    product_graph, required_variant, sat_gadget, BiColoredGraph, GadgetLabels, Graph,
    VertexPairMap,
};
use maxsets::io::{read_bicolored, read_graph, write_bicolored, write_graph, ReadError};
use maxsets::verify::{verify_system, CheckRow};
use maxsets::{
    canonical_order, enumerate_basic, enumerate_refined, stateless_traverse, BcCliqueRestricted,
    ChooseStrategy, ElementSet, EnumerationReport, Error, GenericRestricted, RestrictedSolver,
    SetSystemInstance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "maxsets",
    version,
    about = "Enumerate maximal solutions of set systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every maximal solution, one per line.
    Enumerate(EnumerateArgs),
    /// List maximal common connected induced subgraph maps of two graphs.
    Mccis(MccisArgs),
    /// Check the engines and invariants against brute force.
    Verify(VerifyArgs),
    /// Build the bi-colored gadget graph of a DIMACS CNF formula.
    Gadget(GadgetArgs),
    /// Write a random graph in the input format.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemKind {
    Clique,
    Independent,
    Bcclique,
    RequiredBcclique,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Basic,
    Refined,
    Stateless,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Min,
    Layered,
}

impl From<Strategy> for ChooseStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Min => ChooseStrategy::MinElement,
            Strategy::Layered => ChooseStrategy::LayeredMin,
        }
    }
}

#[derive(Args)]
struct SystemArgs {
    #[arg(long, value_enum)]
    system: SystemKind,
    /// Required elements for `required-bcclique`, comma separated.
    #[arg(long, value_delimiter = ',')]
    required: Vec<u32>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    system: SystemArgs,
    #[arg(long, value_enum, default_value = "basic")]
    algorithm: Algorithm,
    /// Choose strategy; only `basic` accepts `min`. Defaults to `min` for
    /// `basic` and `layered` otherwise.
    #[arg(long, value_enum)]
    strategy: Option<Strategy>,
    /// Append the canonical order of each solution after a tab.
    #[arg(long)]
    canonical: bool,
    /// Write the run report as JSON on standard error.
    #[arg(long)]
    stats: bool,
    input: PathBuf,
}

#[derive(Args)]
struct MccisArgs {
    #[arg(long, value_enum, default_value = "refined")]
    algorithm: Algorithm,
    /// Cross-check against exhaustive search over vertex maps.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    stats: bool,
    graph_a: PathBuf,
    graph_b: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Inputs verified in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Args)]
struct GadgetArgs {
    cnf: PathBuf,
    /// Output file, or `-` for standard output.
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Graph,
    Bicolored,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "graph")]
    kind: GraphKind,
    #[arg(long)]
    nodes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability for plain graphs.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = 0.4)]
    black: f64,
    #[arg(long, default_value_t = 0.3)]
    white: f64,
}

enum Failure {
    Io(anyhow::Error),
    Usage(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Verify(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotCommutable { .. }
            | Error::TooLarge { .. }
            | Error::Precondition(_)
            | Error::ElementOutOfRange { .. } => Failure::Usage(e.to_string()),
            // the library's messages already include their causes
            other => Failure::Io(anyhow::anyhow!("{other}")),
        }
    }
}

impl From<ReadError> for Failure {
    fn from(e: ReadError) -> Self {
        Failure::Io(anyhow::anyhow!("{e}"))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Enumerate(args) => enumerate(args),
        Command::Mccis(args) => mccis(args),
        Command::Verify(args) => verify(args),
        Command::Gadget(args) => gadget(args),
        Command::Generate(args) => generate(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Io(e) => eprintln!("error: {e:#}"),
                Failure::Usage(msg) => eprintln!("usage error: {msg}"),
                Failure::Verify(msg) => eprintln!("verification failed: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn load_system(
    args: &SystemArgs,
    input: &Path,
) -> Result<(SetSystemInstance, Box<dyn RestrictedSolver>), Failure> {
    if !args.required.is_empty() && args.system != SystemKind::RequiredBcclique {
        return Err(Failure::Usage(
            "--required only applies to required-bcclique".into(),
        ));
    }
    Ok(match args.system {
        SystemKind::Clique => (
            clique_system(&read_graph(input)?),
            Box::new(GenericRestricted::default()),
        ),
        SystemKind::Independent => (
            independent_set_system(&read_graph(input)?),
            Box::new(GenericRestricted::default()),
        ),
        SystemKind::Bcclique => {
            let g = read_bicolored(input)?;
            (
                bcclique_system(g.clone()),
                Box::new(BcCliqueRestricted::new(g)),
            )
        }
        SystemKind::RequiredBcclique => {
            if args.required.is_empty() {
                return Err(Failure::Usage("required-bcclique needs --required".into()));
            }
            let base = bcclique_system(read_bicolored(input)?);
            let required = ElementSet::from_labels(args.required.iter().copied());
            (
                required_variant(&base, &required)?,
                Box::new(GenericRestricted::default()),
            )
        }
    })
}

/// Runs `algorithm`, handing each solution to `emit`.
fn run_engine(
    inst: &SetSystemInstance,
    solver: &dyn RestrictedSolver,
    algorithm: Algorithm,
    strategy: ChooseStrategy,
    emit: &mut dyn FnMut(&ElementSet) -> io::Result<()>,
) -> Result<EnumerationReport, Failure> {
    let mut sink = |s: &ElementSet, _depth: usize| -> Result<(), maxsets::error::SinkError> {
        emit(s).map_err(Into::into)
    };
    let report = match algorithm {
        Algorithm::Basic => enumerate_basic(inst, strategy, &mut sink),
        Algorithm::Refined => enumerate_refined(inst, solver, &mut sink),
        Algorithm::Stateless => stateless_traverse(inst, solver, &mut sink),
    };
    report.map_err(|e| match e {
        Error::Sink { source, .. } => Failure::Io(anyhow::anyhow!("writing output: {source}")),
        other => other.into(),
    })
}

fn pick_strategy(
    algorithm: Algorithm,
    strategy: Option<Strategy>,
) -> Result<ChooseStrategy, Failure> {
    match (algorithm, strategy) {
        (Algorithm::Basic, s) => Ok(s.unwrap_or(Strategy::Min).into()),
        (_, None | Some(Strategy::Layered)) => Ok(ChooseStrategy::LayeredMin),
        (_, Some(Strategy::Min)) => Err(Failure::Usage(
            "refined and stateless engines only run the layered strategy".into(),
        )),
    }
}

fn print_stats(report: &EnumerationReport) {
    eprintln!(
        "{}",
        serde_json::to_string(report).expect("reports serialize")
    );
}

fn enumerate(args: EnumerateArgs) -> Outcome {
    let strategy = pick_strategy(args.algorithm, args.strategy)?;
    let (inst, solver) = load_system(&args.system, &args.input)?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut emit = |s: &ElementSet| -> io::Result<()> {
        if args.canonical {
            let order = canonical_order(&inst, s, strategy).map_err(io::Error::other)?;
            let shown: Vec<String> = order.order().iter().map(ToString::to_string).collect();
            writeln!(out, "{s}\t{}", shown.join(" "))
        } else {
            writeln!(out, "{s}")
        }
    };
    let report = run_engine(&inst, solver.as_ref(), args.algorithm, strategy, &mut emit)?;
    out.flush()?;
    if args.stats {
        print_stats(&report);
    }
    Ok(())
}

fn mccis(args: MccisArgs) -> Outcome {
    let strategy = pick_strategy(args.algorithm, None)?;
    let a = read_graph(&args.graph_a)?;
    let b = read_graph(&args.graph_b)?;
    if a.node_count() == 0 || b.node_count() == 0 {
        return Err(Failure::Usage("both graphs need at least one node".into()));
    }
    let product = product_graph(&a, &b)?;
    let inst = bcclique_system(product.clone());
    let solver = BcCliqueRestricted::new(product);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut maps: Vec<VertexPairMap> = Vec::new();
    let mut emit = |s: &ElementSet| -> io::Result<()> {
        let m = map_back(s, &a, &b).map_err(io::Error::other)?;
        writeln!(out, "{m}")?;
        maps.push(m);
        Ok(())
    };
    let report = run_engine(&inst, &solver, args.algorithm, strategy, &mut emit)?;
    out.flush()?;
    if args.stats {
        print_stats(&report);
    }
    if args.verify {
        let check = compare_mccis(maps, &a, &b)?;
        if !check.passed() {
            let mut diff = String::new();
            for (sign, list) in [
                ("-", &check.missing),
                ("+", &check.extra),
                ("*", &check.repeated),
            ] {
                for m in list {
                    writeln!(diff, "{sign} {m}").unwrap();
                }
            }
            eprint!("{diff}");
            return Err(Failure::Verify(format!(
                "{} missing, {} extra, {} repeated (- missing, + extra, * repeated)",
                check.missing.len(),
                check.extra.len(),
                check.repeated.len()
            )));
        }
        eprintln!(
            "verified: {} maps match exhaustive search",
            check.found.len()
        );
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Outcome {
    if args.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::Io(e.into()))?;
    let results: Vec<Result<Vec<CheckRow>, Failure>> = pool.install(|| {
        args.inputs
            .par_iter()
            .map(|input| {
                let (inst, solver) = load_system(&args.system, input)?;
                Ok(verify_system(&inst, solver.as_ref())?)
            })
            .collect()
    });

    let mut failed = 0;
    let mut first_error = None;
    for (input, result) in args.inputs.iter().zip(results) {
        println!("== {}", input.display());
        match result {
            Ok(rows) => {
                let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
                for row in rows {
                    let mark = if row.passed { "PASS" } else { "FAIL" };
                    println!("{mark}  {:width$}  {}", row.name, row.detail);
                    if !row.passed {
                        failed += 1;
                    }
                }
            }
            Err(e) => {
                println!("ERROR");
                first_error.get_or_insert(e);
            }
        }
    }
    if let Some(e) = first_error {
        return Err(e);
    }
    if failed > 0 {
        return Err(Failure::Verify(format!("{failed} checks failed")));
    }
    Ok(())
}

fn gadget(args: GadgetArgs) -> Outcome {
    let text = fs::read_to_string(&args.cnf)
        .with_context(|| args.cnf.display().to_string())
        .map_err(Failure::Io)?;
    let cnf = parse_dimacs(&text)
        .with_context(|| args.cnf.display().to_string())
        .map_err(Failure::Io)?;
    let g = sat_gadget(&cnf)?;
    let labels = GadgetLabels {
        clauses: cnf.clauses.len(),
        vars: cnf.vars,
    };
    let mut body = format!(
        "# gadget of {} (clauses: {}, variables: {})\n",
        args.cnf.display(),
        labels.clauses,
        labels.vars
    );
    for label in 1..=labels.node_count() as u32 {
        writeln!(body, "# {label} = {}", labels.name(label)).unwrap();
    }
    body.push_str(&write_bicolored(&g));
    if args.out.as_os_str() == "-" {
        io::stdout().write_all(body.as_bytes())?;
    } else {
        fs::write(&args.out, body)
            .with_context(|| args.out.display().to_string())
            .map_err(Failure::Io)?;
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Outcome {
    let probabilities = [
        args.density,
        args.black,
        args.white,
        args.black + args.white,
    ];
    if probabilities.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Failure::Usage("probabilities must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let text = match args.kind {
        GraphKind::Graph => write_graph(&Graph::random(args.nodes, args.density, &mut rng)),
        GraphKind::Bicolored => write_bicolored(&BiColoredGraph::random(
            args.nodes, args.black, args.white, &mut rng,
        )),
    };
    io::stdout().write_all(text.as_bytes())?;
    Ok(())
}
