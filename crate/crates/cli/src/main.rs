use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use powergame::balanced::{check_balanced, expand_edge_vector};
use powergame::error::{FormatError, SolverError};
use powergame::generators::{random_balanced_instance, random_instance, RandomParams};
use powergame::io::{self, AllocationInput};
use powergame::model::{
    state_vector, total_support, total_threat, AllocationMatrix, EnvironmentGraph,
};
use powergame::scalar::{Exact, Scalar};
use powergame::solvers::{solve_with, Method, Outcome, SolveOptions, DEFAULT_SUBSET_CAP};

mod report;

use report::{CheckReport, GenReport, SolveReport, StateRow, StatesReport};

#[derive(Parser)]
#[command(
    name = "powergame",
    version,
    about = "Balanced equilibria of power allocation games"
)]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,

    /// Use floating-point arithmetic with this absolute tolerance. Without it,
    /// inputs are read exactly when possible.
    #[arg(long, global = true, value_name = "EPS")]
    tolerance: Option<f64>,

    /// Largest number of countries with adversaries for which a violating
    /// subset is searched.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSET_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether an allocation (or edge vector) is a balanced equilibrium.
    Check {
        instance: PathBuf,
        allocation: PathBuf,
    },
    /// Find a balanced equilibrium or explain why none exists.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Write the solution file here on success.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print support, threat and state of every country.
    States {
        instance: PathBuf,
        allocation: PathBuf,
    },
    /// Generate an instance.
    Gen {
        #[arg(long, value_enum)]
        mode: GenMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Countries (random mode).
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Probability that a pair is related (random mode).
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Probability that a related pair are adversaries (random mode).
        #[arg(long, default_value_t = 0.5)]
        adversary_ratio: f64,
        /// Powers are drawn from 0..=MAX (random mode).
        #[arg(long, default_value_t = 10)]
        max_power: i64,
        /// Constructions to apply (balanced mode).
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Instance path. Balanced mode also writes `<stem>.alloc.json` and
        /// `<stem>.lineage.jsonl` next to it.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Lp,
    Complete,
    Flow,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        match self {
            MethodArg::Auto => None,
            MethodArg::Lp => Some(Method::Lp),
            MethodArg::Complete => Some(Method::Complete),
            MethodArg::Flow => Some(Method::BipartiteFlow),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GenMode {
    Random,
    Balanced,
}

/// Exit status 1: a valid negative answer.
const NO: u8 = 1;

enum Failure {
    Usage(anyhow::Error),
    Numerical(anyhow::Error),
    /// Inputs cannot be held exactly; retry in floating point.
    Inexact,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.tolerance {
        Some(eps) if !(eps >= 0.0 && eps.is_finite()) => Err(Failure::Usage(anyhow!(
            "tolerance must be a nonnegative number, got {eps}"
        ))),
        Some(eps) => run::<f64>(&cli, Some(eps)),
        None => match run::<Exact>(&cli, None) {
            Err(Failure::Inexact) => run::<f64>(&cli, None),
            other => other,
        },
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("numerical failure: {e:#}");
            ExitCode::from(3)
        }
        Err(Failure::Inexact) => {
            eprintln!("error: input values cannot be represented");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Usage)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::Usage)
}

fn load<T: Scalar>(path: &Path, tolerance: Option<f64>) -> Result<EnvironmentGraph<T>, Failure> {
    let g = io::parse_instance::<T>(&read(path)?).map_err(|e| match e {
        FormatError::Unrepresentable { .. } => Failure::Inexact,
        e => Failure::Usage(anyhow::Error::new(e).context(format!("in {}", path.display()))),
    })?;
    Ok(match tolerance {
        Some(eps) => g.with_tolerance(
            T::from_f64(eps).ok_or_else(|| anyhow!("tolerance {eps} is not representable"))?,
        ),
        None => g,
    })
}

/// An allocation, solution or edge-vector file. Edge vectors are expanded
/// without the demand check so that `check` can report what is wrong.
fn load_allocation<T: Scalar>(
    g: &EnvironmentGraph<T>,
    path: &Path,
) -> Result<AllocationMatrix<T>, Failure> {
    let input = io::parse_allocation_input(g, &read(path)?).map_err(|e| match e {
        FormatError::Unrepresentable { .. } => Failure::Inexact,
        e => Failure::Usage(anyhow::Error::new(e).context(format!("in {}", path.display()))),
    })?;
    match input {
        AllocationInput::Matrix(u) => Ok(u),
        AllocationInput::EdgeVector(v) => {
            expand_edge_vector(g, &v).map_err(|e| Failure::Usage(e.into()))
        }
    }
}

fn emit<S: serde::Serialize>(cli: &Cli, report: &S, human: impl FnOnce() -> String) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("serialisable")
        );
    } else {
        print!("{}", human());
    }
}

fn run<T: Scalar>(cli: &Cli, tolerance: Option<f64>) -> Result<u8, Failure> {
    match &cli.command {
        Command::Check {
            instance,
            allocation,
        } => {
            let g = load::<T>(instance, tolerance)?;
            let u = load_allocation(&g, allocation)?;
            let states = state_vector(&g, &u).map_err(|e| Failure::Usage(e.into()))?;
            let report = CheckReport::new(check_balanced(&g, &u), states);
            emit(cli, &report, || report.human());
            Ok(if report.balanced { 0 } else { NO })
        }
        Command::States {
            instance,
            allocation,
        } => {
            let g = load::<T>(instance, tolerance)?;
            let u = load_allocation(&g, allocation)?;
            let states = state_vector(&g, &u).map_err(|e| Failure::Usage(e.into()))?;
            let rows = (0..g.len())
                .map(|i| {
                    Ok(StateRow {
                        country: i,
                        support: total_support(&g, &u, i)?.to_json(),
                        threat: total_threat(&g, &u, i)?.to_json(),
                        state: states.get(i),
                    })
                })
                .collect::<Result<Vec<_>, powergame::error::ModelError>>()
                .map_err(|e| Failure::Usage(e.into()))?;
            let report = StatesReport { countries: rows };
            emit(cli, &report, || report.human());
            Ok(0)
        }
        Command::Solve {
            instance,
            method,
            out,
        } => {
            let g = load::<T>(instance, tolerance)?;
            let opts = SolveOptions {
                method: method.method(),
                subset_cap: cli.cap,
            };
            let start = Instant::now();
            let solution = solve_with(&g, &opts).map_err(|e| match e {
                SolverError::IterationLimit(_) | SolverError::Numerical(_) => {
                    Failure::Numerical(e.into())
                }
                e => Failure::Usage(e.into()),
            })?;
            let elapsed = start.elapsed();
            if let (Some(path), Outcome::Balanced { v, equilibrium }) = (out, &solution.outcome) {
                write(
                    path,
                    &io::write_solution(&g, solution.method, v, equilibrium),
                )?;
            }
            let report = SolveReport::new(&g, &solution);
            emit(cli, &report, || report.human(elapsed));
            Ok(if solution.is_feasible() { 0 } else { NO })
        }
        Command::Gen {
            mode,
            seed,
            n,
            density,
            adversary_ratio,
            max_power,
            steps,
            out,
        } => {
            let report = match mode {
                GenMode::Random => {
                    let params = RandomParams {
                        n: *n,
                        density: *density,
                        powers: 0..=*max_power,
                        adversary_ratio: *adversary_ratio,
                    };
                    let g: EnvironmentGraph<Exact> =
                        random_instance(&params, *seed).map_err(|e| Failure::Usage(e.into()))?;
                    write(out, &io::write_instance(&g))?;
                    GenReport::new("random", &g, out, None, None)
                }
                GenMode::Balanced => {
                    let bundle = random_balanced_instance(*steps, *seed);
                    let alloc = sibling(out, "alloc.json");
                    let lineage = sibling(out, "lineage.jsonl");
                    write(out, &io::write_instance(bundle.graph()))?;
                    write(&alloc, &io::write_allocation(bundle.equilibrium()))?;
                    write(&lineage, &bundle.lineage_jsonl())?;
                    GenReport::new(
                        "balanced",
                        bundle.graph(),
                        out,
                        Some(&alloc),
                        Some(&lineage),
                    )
                }
            };
            emit(cli, &report, || report.human());
            Ok(0)
        }
    }
}

/// `dir/name.json` becomes `dir/name.<suffix>`.
fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    path.with_file_name(format!("{stem}.{suffix}"))
}
