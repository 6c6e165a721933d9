//! Command-line front end: DFA equivalence checking, flow analysis,
//! lattice law checking, and the claims gallery.
//!
//! Exit codes: 0 when the checked property holds, 1 when it fails
//! (not equivalent / incomplete / query false / gallery mismatch),
//! 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fixlab::automata::{self, Algo, UpTo};
use fixlab::checker::check_report;
use fixlab::gallery;
use fixlab::lattice::parse_lattice_file;
use fixlab::pred::flow::{self, Domain};
use fixlab::pred::IntPred;

#[derive(Parser)]
#[command(
    name = "fixlab",
    version,
    about = "Fixed-point laboratory: lattice laws, DFA equivalence, sign analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide language equivalence of two DFA states
    Equiv(EquivArgs),
    /// Solve a flow-equation system and answer subset queries
    Analyze(AnalyzeArgs),
    /// Lattice-level law checking
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Replay every claim about the built-in fixtures
    Gallery(GalleryArgs),
}

#[derive(Args)]
struct EquivArgs {
    /// DFA file (states <n> / alphabet / final / trans lines)
    dfa_file: PathBuf,
    /// First state index
    x: usize,
    /// Second state index
    y: usize,
    #[arg(long, value_enum, default_value_t = AlgoArg::Hk)]
    algo: AlgoArg,
    /// Check the loop invariant at every iteration (hk only)
    #[arg(long)]
    check_invariant: bool,
    /// Print the witness relation or partition
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Naive,
    NaiveUpto,
    Hk,
    Oracle,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Flow file (var / eq lines)
    flow_file: PathBuf,
    #[arg(long, value_enum, default_value_t = DomainArg::Concrete)]
    domain: DomainArg,
    /// Subset query, e.g. "x5 subset {0}"
    #[arg(long)]
    query: Option<String>,
    /// Iteration cap for the concrete solver
    #[arg(long, default_value_t = 10_000)]
    cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Concrete,
    Sign,
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Law report for a closure and a map from a lattice file
    Check(LatticeCheckArgs),
}

#[derive(Args)]
struct LatticeCheckArgs {
    /// Lattice file (elem / cover / map lines)
    lattice_file: PathBuf,
    /// Name of the map table defining the closure
    #[arg(long)]
    closure: String,
    /// Name of the map table defining the transformer
    #[arg(long)]
    map: String,
    /// Element joined onto the transformer as a constant
    #[arg(long)]
    i: Option<String>,
    /// Query element for local completeness and the f-companion
    #[arg(long)]
    f: Option<String>,
    /// Seed for the sampled cross-checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON instead of key: value lines
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GalleryArgs {
    /// Run a single fixture
    #[arg(long)]
    filter: Option<String>,
    /// Compare the report against golden files in this directory
    #[arg(long)]
    golden: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(holds) => {
            if holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Equiv(args) => equiv(args),
        Command::Analyze(args) => analyze(args),
        Command::Lattice(LatticeCommand::Check(args)) => lattice_check(args),
        Command::Gallery(args) => run_gallery(args),
    }
}

fn equiv(args: EquivArgs) -> Result<bool, String> {
    let dfa = automata::parse_dfa_file(&read(&args.dfa_file)?).map_err(|e| e.to_string())?;
    if args.algo_is_oracle() {
        let verdict =
            automata::lang_equiv_oracle(&dfa, args.x, args.y).map_err(|e| e.to_string())?;
        println!("algo: oracle");
        println!(
            "verdict: {}",
            if verdict {
                "equivalent"
            } else {
                "not-equivalent"
            }
        );
        return Ok(verdict);
    }
    let trace = match args.algo {
        AlgoArg::Naive => automata::run_naive(&dfa, args.x, args.y, UpTo::None),
        AlgoArg::NaiveUpto => automata::run_naive(&dfa, args.x, args.y, UpTo::Equivalence),
        AlgoArg::Hk => automata::run_hk(&dfa, args.x, args.y, args.check_invariant),
        AlgoArg::Oracle => unreachable!(),
    }
    .map_err(|e| e.to_string())?;
    println!("algo: {}", trace.algorithm.name());
    println!(
        "verdict: {}",
        if trace.verdict {
            "equivalent"
        } else {
            "not-equivalent"
        }
    );
    println!("visited: {}", trace.visited);
    if trace.algorithm == Algo::Hk {
        println!("unions: {}", trace.unions);
    } else {
        println!("stored: {}", trace.relation.len());
    }
    if let Some(checks) = &trace.invariant_checks {
        println!(
            "invariant: {}",
            if checks.iter().all(|&ok| ok) {
                "holds"
            } else {
                "violated"
            }
        );
    }
    if args.trace {
        match &trace.partition {
            Some(p) => println!("partition: {}", p.render()),
            None => println!("relation: {}", trace.relation.render()),
        }
    }
    Ok(trace.verdict)
}

impl EquivArgs {
    fn algo_is_oracle(&self) -> bool {
        matches!(self.algo, AlgoArg::Oracle)
    }
}

fn analyze(args: AnalyzeArgs) -> Result<bool, String> {
    let system = flow::parse_flow_file(&read(&args.flow_file)?).map_err(|e| e.to_string())?;
    let domain = match args.domain {
        DomainArg::Concrete => Domain::Concrete,
        DomainArg::Sign => Domain::Sign,
    };
    let solution = system.solve(domain, args.cap).map_err(|e| e.to_string())?;
    println!("domain: {domain}");
    println!("sweeps: {}", solution.trace.len() - 1);
    for (name, value) in system.variables().iter().zip(&solution.values) {
        println!("{name}: {value}");
    }
    match &args.query {
        None => Ok(true),
        Some(query) => {
            let (var, pred) = parse_query(query)?;
            let index = system.var_index(&var).map_err(|e| e.to_string())?;
            let holds = solution.values[index].leq(&pred);
            println!("query: {var} subset {pred} -> {holds}");
            Ok(holds)
        }
    }
}

fn parse_query(query: &str) -> Result<(String, IntPred), String> {
    let (var, rest) = query
        .trim()
        .split_once(char::is_whitespace)
        .ok_or_else(|| format!("bad query `{query}`: expected `<var> subset <pred>`"))?;
    let pred_text = rest
        .trim_start()
        .strip_prefix("subset")
        .ok_or_else(|| format!("bad query `{query}`: expected `<var> subset <pred>`"))?;
    let pred = IntPred::parse(pred_text.trim()).map_err(|e| e.to_string())?;
    Ok((var.to_string(), pred))
}

fn lattice_check(args: LatticeCheckArgs) -> Result<bool, String> {
    let file = parse_lattice_file(&read(&args.lattice_file)?).map_err(|e| e.to_string())?;
    let report = check_report(
        &file,
        &args.closure,
        &args.map,
        args.i.as_deref(),
        args.f.as_deref(),
        args.seed,
    )
    .map_err(|e| e.to_string())?;
    if args.json {
        println!("{}", report.render_json());
    } else {
        print!("{}", report.render());
    }
    Ok(report.pass)
}

fn run_gallery(args: GalleryArgs) -> Result<bool, String> {
    let report = gallery::run_gallery(args.filter.as_deref()).map_err(|e| e.to_string())?;
    let rendered = report.render();
    print!("{rendered}");
    let mut ok = report.all_pass();
    if let Some(dir) = &args.golden {
        let file = match &args.filter {
            Some(f) => dir.join(format!("{f}.txt")),
            None => dir.join("gallery.txt"),
        };
        let golden = read(&file)?;
        if golden == rendered {
            println!("golden: match ({})", file.display());
        } else {
            println!("golden: MISMATCH ({})", file.display());
            ok = false;
        }
    }
    Ok(ok)
}
