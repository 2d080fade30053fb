use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use zdvce::constructions::SearchBudget;
use zdvce::graph::Family;
use zdvce::search::DEFAULT_VERTEX_CAP;
use zdvce_cli::commands::{self, GraphFormat, Output, SearchMode};

#[derive(Parser)]
#[command(name = "zdvce", version, about = "Very cost effective bipartitions of zero-divisor graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Local,
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Largest vertex count handed to exhaustive search.
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
    /// Local search restarts.
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    /// Local search steps per restart.
    #[arg(long, default_value_t = 2000)]
    steps: usize,
    /// Local search seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            vertex_cap: self.cap,
            restarts: self.restarts,
            steps: self.steps,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph as DOT or JSON.
    Build {
        n: u64,
        #[arg(long, default_value = "gamma")]
        family: Family,
        #[arg(long, value_enum, default_value = "dot")]
        format: FormatArg,
    },
    /// Certify whether a graph has a very cost effective bipartition.
    Construct {
        n: u64,
        #[arg(long, default_value = "gamma")]
        family: Family,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check a partition file against a graph file.
    Check { graph: PathBuf, partition: PathBuf },
    /// Run a search procedure directly.
    Search {
        n: u64,
        #[arg(long, default_value = "gamma")]
        family: Family,
        #[arg(long, value_enum, default_value = "brute")]
        method: MethodArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Tabulate verdicts over a range of moduli as CSV.
    Survey {
        n_min: u64,
        n_max: u64,
        /// Families to include; repeat or comma-separate. Defaults to all.
        #[arg(long = "family", value_delimiter = ',')]
        families: Vec<Family>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Output) -> ExitCode {
    print!("{}", out.text);
    ExitCode::from(out.code as u8)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    Ok(match cli.command {
        Command::Build { n, family, format } => {
            let format = match format {
                FormatArg::Dot => GraphFormat::Dot,
                FormatArg::Json => GraphFormat::Json,
            };
            let text = commands::build(n, family, format)?;
            io::stdout().write_all(text.as_bytes())?;
            ExitCode::SUCCESS
        }
        Command::Construct { n, family, budget } => {
            emit(commands::construct(n, family, &budget.budget()))
        }
        Command::Check { graph, partition } => emit(commands::check(
            &graph.to_string_lossy(),
            &partition.to_string_lossy(),
        )),
        Command::Search { n, family, method, budget } => {
            let mode = match method {
                MethodArg::Brute => SearchMode::Exhaustive,
                MethodArg::Local => SearchMode::Local,
            };
            emit(commands::search(n, family, mode, &budget.budget()))
        }
        Command::Survey { n_min, n_max, families, budget, out } => {
            if n_min < 2 {
                bail!("survey range must start at 2 or above, got {n_min}");
            }
            if n_min > n_max {
                bail!("empty range {n_min}..={n_max}");
            }
            let families = if families.is_empty() { Family::ALL.to_vec() } else { families };
            let rows = commands::survey_rows(n_min, n_max, &families, &budget.budget())?;
            match out {
                Some(path) => {
                    let file = File::create(&path)
                        .with_context(|| format!("cannot create {}", path.display()))?;
                    commands::write_survey(&rows, file)?;
                }
                None => commands::write_survey(&rows, io::stdout().lock())?,
            }
            ExitCode::SUCCESS
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
