//! `relc`: relational complexity, statistics and non-binarity tests for
//! permutation groups given as JSON files.

mod cache;
mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use relc::relcomp::Caps;
use relc::witness::{DEFAULT_SEED, DEFAULT_TRIALS};

use cache::ChainCache;
use commands::{Context, Report, TestOptions, TestSelection};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(name = "relc", version, about = "Relational complexity of finite permutation groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized tests.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for independent groups and criteria.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory for cached stabilizer chains.
    #[arg(long, global = true, env = "RELC_CACHE_DIR")]
    cache: Option<PathBuf>,
    /// Exit with code 3 when a size cap stops a computation.
    #[arg(long, global = true)]
    strict: bool,
    /// Lift the degree and order caps of exact searches.
    #[arg(long, global = true)]
    force_caps: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, RC and the base statistics b, B, H, I.
    Stats {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Exact relational complexity with a witness.
    Rc {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Non-binarity tests, in the order 1..6 then frobenius.
    Tests {
        file: PathBuf,
        /// 1..6, frobenius, beautiful or all.
        #[arg(long, default_value = "all")]
        test: TestSelection,
        /// Run every selected test instead of stopping at the first hit.
        #[arg(long)]
        all: bool,
        /// Prime for test 5 (default: each prime dividing the degree).
        #[arg(long)]
        prime: Option<u64>,
        /// Trials for test 6.
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Largest tuple length for test 1.
        #[arg(long, default_value_t = 5)]
        ell: usize,
        /// Closure arity for test 2.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Comma-separated 1-based orbit of the normal subgroup (beautiful).
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<usize>>,
        /// Group file of the normal subgroup (beautiful).
        #[arg(long)]
        normal: Option<PathBuf>,
    },
    /// The k-closure of a group.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Homogeneity of a structure, or enumeration of homogeneous digraphs.
    Homog {
        #[arg(required_unless_present = "enumerate")]
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        enumerate: Option<usize>,
    },
    /// List or build catalog groups.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the acceptance suite.
    Verify {
        /// Criterion number, name or tag (rc, stats, tests, closure, structures).
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Build {
        name: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn dispatch(cli: &Cli, ctx: &Context) -> Result<Report, commands::CliError> {
    match &cli.command {
        Command::Stats { files } => commands::stats(ctx, files),
        Command::Rc { files } => commands::rc(ctx, files),
        Command::Tests {
            file,
            test,
            all,
            prime,
            trials,
            ell,
            k,
            lambda,
            normal,
        } => {
            let lambda = match lambda {
                Some(pts) if pts.contains(&0) => {
                    return Err(commands::CliError::Input("--lambda points are 1-based".into()))
                }
                Some(pts) => Some(pts.iter().map(|p| p - 1).collect()),
                None => None,
            };
            let opts = TestOptions {
                selection: *test,
                prime: *prime,
                trials: *trials,
                ell_max: *ell,
                closure_k: *k,
                lambda,
                normal: normal.clone(),
                keep_going: *all,
            };
            commands::tests(ctx, file, &opts)
        }
        Command::Closure { file, k } => commands::closure(ctx, file, *k),
        Command::Homog { file, enumerate } => match (file, enumerate) {
            (_, Some(n)) => commands::homog_enumerate(ctx, *n),
            (Some(f), None) => commands::homog_file(ctx, f),
            (None, None) => unreachable!("clap requires a file or --enumerate"),
        },
        Command::Catalog { action } => match action {
            CatalogAction::List => Ok(commands::catalog_list()),
            CatalogAction::Build { name, params, output } => {
                commands::catalog_build(name, params, output.as_deref())
            }
        },
        Command::Verify { filter } => Ok(commands::verify(filter.as_deref())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(commands::EXIT_INPUT);
        }
    }
    let ctx = Context {
        seed: cli.seed,
        strict: cli.strict,
        caps: if cli.force_caps { Caps::unlimited() } else { Caps::default() },
        cache: cli.cache.as_deref().map(ChainCache::new),
    };
    match dispatch(&cli, &ctx) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.value).expect("report serializes") + "\n",
                Format::Table => render::table(&report.value),
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
