//! The `geobip` command line.
//!
//! Exit status: 0 success, 1 infeasible solution (verify) or guarantee
//! violation (bench), 2 usage, 3 validation, 4 capacity, 5 I/O, 6 parse,
//! 7 internal. Errors are reported on stderr as
//! `error: category=<category> message=<text>`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchConfig};
use crate::error::{Error, Result};
use crate::generate::{self, DiskMode, GeneratorConfig};
use crate::geometry::Kind;
use crate::graph::IntersectionGraph;
use crate::io::{self, Instance, SolutionFile, Verdict};
use crate::oracle::{self, OracleConfig, Problem};
use crate::ptas::PtasConfig;
use crate::rational::{self, Rational};
use crate::reduce;
use crate::solve::{self, Algorithm, SolveOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) => 3,
        Error::Capacity { .. } => 4,
        Error::Io(_) => 5,
        Error::Parse(_) => 6,
        Error::Internal(_) => 7,
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "geobip",
    version,
    about = "Maximum bipartite subgraphs of geometric intersection graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance and print a solution document.
    Solve(SolveArgs),
    /// Exact optimum by exhaustive search (small instances only).
    Oracle(OracleArgs),
    /// Write a random instance.
    Generate(GenerateArgs),
    /// Check a solution document against its instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Run algorithms over a generated corpus and report ratios.
    Bench(BenchArgs),
    /// Duplicate every object in place.
    Reduce {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> std::result::Result<Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Free,
    OneSided,
    TwoSided,
}

impl From<ModeArg> for DiskMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Free => DiskMode::Free,
            ModeArg::OneSided => DiskMode::OneSided,
            ModeArg::TwoSided => DiskMode::TwoSided,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProblemArg {
    Mbs,
    Mtfs,
    Mis,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Mbs => Problem::Mbs,
            ProblemArg::Mtfs => Problem::Mtfs,
            ProblemArg::Mis => Problem::Mis,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(clap::Args, Debug)]
struct SolverFlags {
    /// auto, interval, arcs, one-sided, two-sided, three-approx, logn, ptas,
    /// unit-height or oracle.
    #[arg(long = "algo", default_value = "auto", value_parser = parse_algorithm)]
    algorithm: Algorithm,
    /// PTAS accuracy; the slab grid uses k = ⌈1/ε⌉ shifts.
    #[arg(long, default_value = "1/2", value_parser = parse_rational)]
    epsilon: Rational,
    /// Stabbing line y for one-sided and two-sided disk solvers.
    #[arg(long, value_parser = parse_rational)]
    line: Option<Rational>,
    /// Break coinciding interval endpoints symbolically instead of rejecting.
    #[arg(long)]
    perturb: bool,
    /// Largest instance the oracle accepts.
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    oracle_cap: usize,
    /// Largest number of objects per PTAS box.
    #[arg(long, default_value_t = crate::ptas::DEFAULT_BOX_CAP)]
    box_cap: usize,
}

impl SolverFlags {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            algorithm: self.algorithm,
            epsilon: self.epsilon.clone(),
            line: self.line.clone(),
            perturb: self.perturb,
            oracle: OracleConfig {
                cap: self.oracle_cap,
            },
            ptas: PtasConfig {
                box_cap: self.box_cap,
                ..Default::default()
            },
        }
    }
}

#[derive(clap::Args, Debug)]
struct SolveArgs {
    instance: PathBuf,
    #[command(flatten)]
    flags: SolverFlags,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "mbs")]
    problem: ProblemArg,
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    cap: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct CorpusArgs {
    /// intervals, arcs, unit_disks, unit_squares, unit_height_rects or rects.
    #[arg(long, value_parser = parse_kind)]
    kind: Kind,
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Side of the placement region.
    #[arg(long, default_value_t = 6)]
    span: i64,
    /// Coordinates are multiples of 1/denominator.
    #[arg(long, default_value_t = 4)]
    denominator: i64,
    #[arg(long, default_value = "1", value_parser = parse_rational)]
    radius: Rational,
    /// Disk center placement relative to the line y = 0.
    #[arg(long, value_enum, default_value = "free")]
    mode: ModeArg,
}

impl CorpusArgs {
    fn config(&self, weighted: bool) -> GeneratorConfig {
        GeneratorConfig {
            kind: self.kind,
            n: self.n,
            seed: self.seed,
            span: self.span,
            denominator: self.denominator,
            disk_radius: self.radius.clone(),
            disk_mode: self.mode.into(),
            weighted,
        }
    }
}

#[derive(clap::Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Attach integer weights.
    #[arg(long)]
    weighted: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Number of instances; instance i uses seed + i.
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Comma-separated algorithm names.
    #[arg(long = "algos", value_delimiter = ',', default_value = "auto", value_parser = parse_algorithm)]
    algorithms: Vec<Algorithm>,
    /// Compute exact optima for the ratio columns.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
    #[arg(long, default_value = "1/2", value_parser = parse_rational)]
    epsilon: Rational,
    #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
    oracle_cap: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Solve(args) => {
            let inst = Instance::read(&args.instance)?;
            let outcome = solve::solve(&inst.scene, inst.weights(), &args.flags.options())?;
            let file = SolutionFile::new(
                Problem::Mbs,
                outcome.algorithm.name(),
                &outcome.solution,
                outcome.weight.as_ref(),
            );
            emit(out, args.output.as_deref(), &file.to_json())?;
        }
        Command::Oracle(args) => {
            let inst = Instance::read(&args.instance)?;
            let cfg = OracleConfig { cap: args.cap };
            let g = IntersectionGraph::build(&inst.scene)?;
            let problem: Problem = args.problem.into();
            let (sol, weight) = match (problem, inst.weights()) {
                (Problem::Mbs, Some(w)) => {
                    let (s, total) = oracle::exact_mbs_weighted(&g, w, &cfg)?;
                    (s, Some(total))
                }
                _ => {
                    let s = oracle::solve_exact(&g, problem, &cfg)?;
                    let total = inst.weights().map(|w| solve::total_weight(w, s.selected()));
                    (s, total)
                }
            };
            let file = SolutionFile::new(problem, "oracle", &sol, weight.as_ref());
            emit(out, args.output.as_deref(), &file.to_json())?;
        }
        Command::Generate(args) => {
            let inst = generate::generate(&args.corpus.config(args.weighted))?;
            emit(out, args.output.as_deref(), &inst.to_json())?;
        }
        Command::Verify { instance, solution } => {
            let inst = Instance::read(&instance)?;
            let file = SolutionFile::read(&solution)?;
            return Ok(match io::verify(&inst, &file)? {
                Verdict::Feasible { size } => {
                    writeln!(out, "feasible problem={} size={size}", file.problem)?;
                    EXIT_OK
                }
                Verdict::Infeasible(w) => {
                    writeln!(out, "infeasible problem={} witness={w}", file.problem)?;
                    EXIT_INFEASIBLE
                }
            });
        }
        Command::Bench(args) => {
            let cfg = BenchConfig {
                generator: args.corpus.config(false),
                count: args.count,
                algorithms: args.algorithms.clone(),
                oracle: args.oracle,
                solve: SolveOptions {
                    epsilon: args.epsilon.clone(),
                    oracle: OracleConfig {
                        cap: args.oracle_cap,
                    },
                    ..Default::default()
                },
            };
            let report = bench::run(&cfg)?;
            let text = match args.format {
                Format::Tsv => report.to_tsv().trim_end().to_string(),
                Format::Json => report.to_json(),
            };
            emit(out, args.output.as_deref(), &text)?;
            if report.violations() > 0 {
                return Ok(EXIT_INFEASIBLE);
            }
        }
        Command::Reduce { instance, output } => {
            let inst = Instance::read(&instance)?;
            let doubled = Instance {
                scene: reduce::double_instance(&inst.scene),
                weights: inst.weights.as_deref().map(reduce::double_weights),
            };
            emit(out, output.as_deref(), &doubled.to_json())?;
        }
    }
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: category={} message={e}", e.category());
            exit_code(&e)
        }
    }
}
