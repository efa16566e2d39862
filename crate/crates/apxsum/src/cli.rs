//! Argument parsing and dispatch for the `apxsum` binary.
//!
//! Exit codes: 0 on success, 1 when a solve or verification fails, 2 on a
//! usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use apxsum_core::hardness::{
    bellman_knapsack, knapsack_to_gap_instance, scheme_gap_solver, solve_knapsack_via_gap,
};
use apxsum_core::partition::solve_partition;
use apxsum_core::subsetsum::{solve_subset_sum, SolverConfig, DEFAULT_CONFIDENCE};
use apxsum_core::testkit::{gen_instance, GenSpec, Problem, Shape};
use apxsum_core::{ApproxResult, Epsilon};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{bench_scaling, parse_eps_sweep, BenchConfig, BenchProblem};
use crate::engine::EngineKind;
use crate::io::{load_instance, write_instance, Instance, Kind, SolveOutput};
use crate::verify::{run_verify, VerifyConfig};

#[derive(Debug, Parser)]
#[command(
    name = "apxsum",
    version,
    about = "Approximation schemes for SubsetSum and Partition"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a reproducible random instance.
    Gen(GenArgs),
    /// Solve an instance file.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Apply a reduction to an instance file.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Check a solver against brute force on random instances.
    Verify(VerifyArgs),
    /// Time a solver over a sweep of ε and fit the runtime exponent.
    Bench(BenchArgs),
}

fn parse_eps(s: &str) -> Result<Epsilon, String> {
    s.parse().map_err(|e: apxsum_core::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Uniform,
    Clustered,
    TwoScale,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Uniform => Shape::Uniform,
            ShapeArg::Clustered => Shape::Clustered,
            ShapeArg::TwoScale => Shape::TwoScale,
        }
    }
}

impl From<Kind> for Problem {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Subsetsum => Problem::SubsetSum,
            Kind::Partition => Problem::Partition,
            Kind::Knapsack => Problem::Knapsack,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub problem: Kind,
    #[arg(long, value_enum, default_value = "uniform")]
    pub shape: ShapeArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub max_item: u64,
    /// Target (or knapsack budget) as a fraction of the item total.
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SolveCommand {
    Subsetsum(SubsetSumArgs),
    Partition(PartitionArgs),
    Knapsack(KnapsackArgs),
}

#[derive(Debug, Args)]
pub struct SubsetSumArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_eps)]
    pub eps: Epsilon,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Multiplier of the color count and repetitions.
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: u64,
    /// Send each recursion level through one packed convolution.
    #[arg(long)]
    pub batched: bool,
    #[arg(long, value_enum, default_value = "naive")]
    pub engine: EngineKind,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_eps)]
    pub eps: Epsilon,
    /// Number of parts; defaults to ⌈ε^(-1/2)⌉.
    #[arg(long = "L")]
    pub l: Option<u64>,
    #[arg(long, value_enum, default_value = "naive")]
    pub engine: EngineKind,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Via {
    /// Reduce to GapSubsetSum and run the approximation scheme.
    Gap,
    /// Bellman's dynamic program.
    Dp,
}

#[derive(Debug, Args)]
pub struct KnapsackArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "gap")]
    pub via: Via,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Write the GapSubsetSum instance built from a Knapsack instance.
    KnapsackToGap {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub problem: Kind,
    #[arg(long, value_enum, default_value = "uniform")]
    pub shape: ShapeArg,
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub max_item: u64,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[arg(long, value_parser = parse_eps, default_value = "1/16")]
    pub eps: Epsilon,
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: u64,
    #[arg(long, value_enum, default_value = "naive")]
    pub engine: EngineKind,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub problem: BenchProblem,
    /// `2^-a..2^-b` or a comma list such as `1/64,1/128`.
    #[arg(long, default_value = "2^-6..2^-13")]
    pub eps_sweep: String,
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value = "dense")]
    pub engine: EngineKind,
    #[arg(long = "L")]
    pub l: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Runs a parsed command; `Ok(false)` means the command ran but failed its
/// check.
pub fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(cmd) => solve(cmd),
        Command::Reduce(ReduceCommand::KnapsackToGap { input, output }) => reduce(input, output),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn gen(a: GenArgs) -> anyhow::Result<bool> {
    let spec = GenSpec {
        problem: a.problem.into(),
        shape: a.shape.into(),
        n: a.n,
        max_item: a.max_item,
        density: a.density,
        seed: a.seed,
    };
    let inst: Instance = gen_instance(&spec)?.into();
    let comment = format!(
        "generated: problem={:?} shape={:?} n={} max_item={} density={} seed={}",
        a.problem, a.shape, a.n, a.max_item, a.density, a.seed
    );
    emit(a.output.as_ref(), &write_instance(&inst, &[comment]))?;
    eprintln!("seed {}", a.seed);
    Ok(true)
}

fn report(r: &ApproxResult, elapsed_ms: f64, json: bool) -> anyhow::Result<()> {
    let out = SolveOutput::new(r, elapsed_ms);
    if json {
        println!("{}", serde_json::to_string(&out)?);
    } else {
        println!("value    {}", out.value);
        println!("witness  {:?}", out.witness);
        println!(
            "epsilon  {}  delta {}  mode {}",
            out.epsilon, out.delta, out.mode
        );
        println!("time     {:.3} ms", out.elapsed_ms);
    }
    Ok(())
}

fn solve(cmd: SolveCommand) -> anyhow::Result<bool> {
    match cmd {
        SolveCommand::Subsetsum(a) => {
            let Instance::SubsetSum(inst) = load_instance(&a.input, Kind::Subsetsum)? else {
                unreachable!("loaded as subsetsum")
            };
            let config = SolverConfig {
                confidence: a.confidence,
                batched: a.batched,
            };
            let start = Instant::now();
            let (r, _) = solve_subset_sum(&inst, a.eps, a.seed, &config, &a.engine)?;
            report(&r, start.elapsed().as_secs_f64() * 1e3, a.json)?;
        }
        SolveCommand::Partition(a) => {
            let Instance::Partition(inst) = load_instance(&a.input, Kind::Partition)? else {
                unreachable!("loaded as partition")
            };
            let start = Instant::now();
            let (r, _) = solve_partition(&inst, a.eps, a.l, &a.engine)?;
            report(&r, start.elapsed().as_secs_f64() * 1e3, a.json)?;
        }
        SolveCommand::Knapsack(a) => {
            let Instance::Knapsack(inst) = load_instance(&a.input, Kind::Knapsack)? else {
                unreachable!("loaded as knapsack")
            };
            let start = Instant::now();
            let solvable = match a.via {
                Via::Dp => bellman_knapsack(&inst)?.solvable,
                Via::Gap => solve_knapsack_via_gap(&inst, scheme_gap_solver(a.seed))?,
            };
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let via = match a.via {
                Via::Dp => "dp",
                Via::Gap => "gap",
            };
            if a.json {
                let out = serde_json::json!({
                    "solvable": solvable,
                    "via": via,
                    "elapsed_ms": elapsed_ms,
                });
                println!("{out}");
            } else {
                println!("{}", if solvable { "YES" } else { "NO" });
            }
        }
    }
    Ok(true)
}

fn reduce(input: PathBuf, output: PathBuf) -> anyhow::Result<bool> {
    let Instance::Knapsack(inst) = load_instance(&input, Kind::Knapsack)? else {
        unreachable!("loaded as knapsack")
    };
    let gap = knapsack_to_gap_instance(&inst)?;
    let eps = gap.eps;
    let sub = gap.to_subset_sum()?;
    let comment = [
        format!("GapSubsetSum instance reduced from {}", input.display()),
        format!("gap eps {eps}: YES iff some subset sums to t, NO iff none reaches (1-eps)t"),
    ];
    emit(
        Some(&output),
        &write_instance(&Instance::SubsetSum(sub), &comment),
    )?;
    eprintln!("eps {eps}");
    Ok(true)
}

fn verify(a: VerifyArgs) -> anyhow::Result<bool> {
    let cfg = VerifyConfig {
        problem: a.problem.into(),
        shape: a.shape.into(),
        n: a.n,
        max_item: a.max_item,
        density: a.density,
        eps: a.eps,
        confidence: a.confidence,
        engine: a.engine,
        trials: a.trials,
        seed: a.seed,
        jobs: a.jobs,
    };
    let rep = run_verify(&cfg)?;
    println!(
        "{:?}: {}/{} trials passed ({:.2}%, need {:.2}%), seeds {}..{}",
        a.problem,
        rep.trials - rep.failures.len(),
        rep.trials,
        100.0 * rep.success_fraction(),
        100.0 * rep.required,
        a.seed,
        a.seed.wrapping_add(a.trials as u64 - 1),
    );
    for f in &rep.failures {
        println!("  seed {}: {}", f.seed, f.reason);
    }
    Ok(rep.passed())
}

fn bench(a: BenchArgs) -> anyhow::Result<bool> {
    let cfg = BenchConfig {
        problem: a.problem,
        eps: parse_eps_sweep(&a.eps_sweep)?,
        repeat: a.repeat,
        jobs: a.jobs,
        engine: a.engine,
        l: a.l,
        n: a.n,
        seed: a.seed,
    };
    let rep = bench_scaling(&cfg)?;
    match &a.output {
        Some(p) => rep.write_csv(
            fs::File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )?,
        None => rep.write_csv(std::io::stdout().lock())?,
    }
    eprintln!(
        "{} exponent {:.3} (seed {}, {:.1} s)",
        a.problem.name(),
        rep.exponent,
        a.seed,
        rep.total_secs
    );
    Ok(true)
}
