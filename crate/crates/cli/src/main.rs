//! `kradon`: exact cross-intersecting optima over hereditary families, lemma
//! sweeps, theorem harnesses and conjecture hunts.
//!
//! Exit codes: 0 success, 1 internal error, 2 malformed input or parameters,
//! 3 solver guardrail exceeded, 4 a check produced a finding or violation.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kradon_core::solvers::REPORT_SCHEMA_VERSION;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "kradon", version, about = "Cross-t-intersecting families of hereditary families")]
pub struct Cli {
    /// Worker threads (default: all cores); output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for sampled runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Threshold table m(r,t), n_S, n_P, (t+1)(r-t+1).
    Thresholds(ThresholdsArgs),
    /// Inspect a hereditary family.
    Family {
        #[command(subcommand)]
        cmd: FamilyCmd,
    },
    /// Exact maximum sum or product of cross-t-intersecting subfamilies.
    Solve(SolveArgs),
    /// Lemma sweeps and theorem harnesses.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Search small downsets or graphs for conjecture counterexamples.
    Hunt(HuntArgs),
    /// Constructions and witnesses.
    Witness {
        #[command(subcommand)]
        cmd: WitnessCmd,
    },
}

#[derive(Args, Debug)]
pub struct ThresholdsArgs {
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Without --r/--t, print every 1 <= t <= r <= max-r.
    #[arg(long, default_value_t = 6)]
    max_r: usize,
}

/// Where the hereditary family comes from (exactly one).
#[derive(Args, Debug, Default)]
pub struct HostArgs {
    /// Hereditary family file (`ground N`, then one base per line).
    #[arg(long)]
    host: Option<PathBuf>,
    /// Graph file (`graph N`, then `u v` edges); uses its independent sets.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// The power set of [N].
    #[arg(long)]
    power_set: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCmd {
    /// Ground size, member count, level sizes, mu and bases.
    Info(HostArgs),
}

#[derive(Args, Debug)]
pub struct InstanceArgs {
    #[command(flatten)]
    host: HostArgs,
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// Level selector per family, e.g. `2` or `1,3` or `2..4`; repeat per family.
    #[arg(long = "levels", required = true)]
    levels: Vec<String>,
    /// Number of families when a single --levels is given.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Sum)]
    mode: ModeArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sum,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    ClosedSets,
    BranchAndBound,
    BruteForce,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Sweep a lemma: sperner, star-ratio, family-vs-star, mu-quotient,
    /// keyint, transversal-bound.
    Lemma(LemmaArgs),
    /// Run a theorem harness: sum, product, large-mu-sum, large-k, powerset, ekr-boundary.
    Theorem(TheoremArgs),
}

#[derive(Args, Debug)]
pub struct LemmaArgs {
    name: String,
    /// Ground size of the sweep.
    #[arg(long = "exhaustive-n", alias = "n", default_value_t = 5)]
    n: usize,
    /// t for the keyint sweep.
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// Sample count for transversal-bound.
    #[arg(long, default_value_t = 2000)]
    samples: u64,
}

#[derive(Args, Debug)]
pub struct TheoremArgs {
    name: String,
    #[command(flatten)]
    host: HostArgs,
    #[arg(long, default_value_t = 1)]
    t: usize,
    #[arg(long = "levels")]
    levels: Vec<String>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Sum)]
    mode: ModeArg,
    /// Ground size (powerset, ekr-boundary).
    #[arg(long)]
    n: Option<usize>,
    /// Uniform level (ekr-boundary).
    #[arg(long)]
    r: Option<usize>,
    /// ekr-boundary on every 1 <= t <= r <= n <= GRID.
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    Chvatal,
    Kamatgen,
    KamatGraph,
    Akgen,
}

#[derive(Args, Debug)]
pub struct HuntArgs {
    #[arg(long, value_enum)]
    conjecture: Conjecture,
    /// Ground size (vertex count for kamat-graph).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// Level selector for akgen (default: {r}).
    #[arg(long)]
    levels: Option<String>,
    /// Sample this many random downsets instead of enumerating all.
    #[arg(long)]
    samples: Option<u64>,
    /// Base count range for sampling, `lo..hi`.
    #[arg(long, default_value = "1..4")]
    bases: String,
    /// Base size range for sampling, `lo..hi` (default: 1..n).
    #[arg(long)]
    sizes: Option<String>,
    /// Write re-verified findings here, one JSON record per line.
    #[arg(long)]
    findings: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum WitnessCmd {
    /// A non-trivial family of r-sets whose union has exactly m(r,t) elements.
    Sharpness {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
    },
    /// Members of a family with small union and fewer than t common elements.
    Keyint {
        /// Family file (`ground N`, then one set per line).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
}

/// What a command produced.
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    /// A finding or violation: exit 4.
    pub finding: bool,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    seed: u64,
    result: &'a serde_json::Value,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use kradon_core::Error;
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::SizeLimit { .. } => 3,
            Error::Unverified(_) => 1,
            _ => 2,
        };
    }
    if err.downcast_ref::<std::io::Error>().is_some() || err.downcast_ref::<input::InputError>().is_some() {
        return 2;
    }
    1
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Thresholds(_) => "thresholds",
        Command::Family { .. } => "family info",
        Command::Solve(_) => "solve",
        Command::Verify { cmd: VerifyCmd::Lemma(_) } => "verify lemma",
        Command::Verify { cmd: VerifyCmd::Theorem(_) } => "verify theorem",
        Command::Hunt(_) => "hunt",
        Command::Witness { .. } => "witness",
    }
}

fn render(cli: &Cli, outcome: &Outcome) -> anyhow::Result<String> {
    Ok(match cli.format {
        Format::Text => outcome.text.clone(),
        Format::Json => {
            let env = Envelope {
                schema_version: REPORT_SCHEMA_VERSION,
                command: command_name(&cli.command),
                seed: cli.seed,
                result: &outcome.json,
            };
            serde_json::to_string_pretty(&env)? + "\n"
        }
    })
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let outcome = commands::dispatch(cli)?;
    let rendered = render(cli, &outcome)?;
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(outcome.finding)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.workers {
        Some(0) => Err(anyhow::Error::new(input::InputError("--workers must be positive".into()))),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(anyhow::Error::from)
            .and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    };
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
