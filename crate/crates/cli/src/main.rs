//! `planar-turan`: planar Turán numbers of double stars from the shell.
//!
//! Exit codes: 0 ok, 1 usage or input error, 2 guard refusal, 3 pattern
//! found, 4 non-planar input, 5 verification mismatch.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use planar_turan_core::{ConstructionRecipe, PatternSpec};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_GUARD: u8 = 2;
pub const EXIT_PATTERN: u8 = 3;
pub const EXIT_NON_PLANAR: u8 = 4;
pub const EXIT_MISMATCH: u8 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "planar-turan",
    version,
    about = "Planar Turán numbers of double stars"
)]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CliConfig {
    /// Worker threads for enumeration.
    #[arg(long, global = true, env = "TURAN_WORKERS", value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,

    /// Output format. Each command has its own default.
    #[arg(long, short = 'f', global = true, value_enum)]
    pub format: Option<Format>,

    /// Lift the vertex-count guards on exhaustive computations.
    #[arg(long = "unsafe-large", global = true)]
    pub unsafe_large: bool,

    /// Include wall-clock timings. Output is no longer byte-reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
}

impl CliConfig {
    pub fn workers(&self) -> usize {
        self.workers
            .map(usize::from)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |w| w.get()))
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Graph6,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact ex_P(n, S(m,l)) by exhaustive enumeration.
    Compute {
        #[arg(short = 'n')]
        n: usize,
        /// Pattern as `m,l`.
        #[arg(short = 'p', long, default_value = "3,3", value_parser = parse_pattern)]
        pattern: PatternSpec,
        /// Extremal graphs to list.
        #[arg(long, default_value_t = planar_turan_core::turan::WITNESS_CAP)]
        witness_cap: usize,
    },
    /// Compare computed values with the closed forms, or check the
    /// star-block lemmas on every graph of a corpus.
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Run the star-block corpus checks for n = 1..=n_max instead.
        #[arg(long)]
        corpus: bool,
    },
    /// Build a named extremal construction.
    Construct {
        /// One of: double-wheel, triangle-forest, glued-stars, four-regular-8,
        /// four-regular-9, component-66, component-65, maximal-planar.
        recipe: String,
        #[arg(short = 'n')]
        n: Option<usize>,
    },
    /// Look for a planar S(m,l)-free graph with a given number of edges.
    Search {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'e', long)]
        edges: usize,
        #[arg(short = 'p', long, default_value = "3,3", value_parser = parse_pattern)]
        pattern: PatternSpec,
        /// Candidate graphs examined before giving up.
        #[arg(long, default_value_t = planar_turan_core::extremal::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Star-block decomposition, refinement and weight audit of graph6 input.
    Decompose {
        /// graph6 file, one graph per line; stdin when absent or `-`.
        input: Option<PathBuf>,
        #[arg(long, default_value_t = planar_turan_core::starblock::DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Find a copy of S(m,l) in each input graph.
    Detect {
        #[arg(short = 'p', long, value_parser = parse_pattern)]
        pattern: PatternSpec,
        input: Option<PathBuf>,
    },
    /// Stream isomorphism classes of graphs on n vertices.
    Enumerate {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        planar: bool,
        /// Forbid the double star `m,l`.
        #[arg(long, value_parser = parse_pattern)]
        forbid: Option<PatternSpec>,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        min_edges: Option<usize>,
        #[arg(long)]
        max_edges: Option<usize>,
    },
    /// Degree-class report for each planar S(3,3)-free input graph.
    Audit { input: Option<PathBuf> },
}

fn parse_pattern(s: &str) -> Result<PatternSpec, String> {
    s.parse()
        .map_err(|e: planar_turan_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let cfg = &cli.config;
    let result = match cli.command {
        Command::Compute {
            n,
            pattern,
            witness_cap,
        } => commands::compute(cfg, n, pattern, witness_cap),
        Command::Verify {
            n_max,
            corpus: false,
        } => commands::verify(cfg, n_max),
        Command::Verify {
            n_max,
            corpus: true,
        } => commands::verify_corpus(cfg, n_max),
        Command::Construct { recipe, n } => {
            let parsed = match n {
                Some(_) => ConstructionRecipe::from_name(&recipe, n),
                None => recipe.parse(),
            };
            parsed
                .map_err(Into::into)
                .and_then(|r| commands::construct(cfg, r))
        }
        Command::Search {
            n,
            edges,
            pattern,
            budget,
        } => commands::search(cfg, n, pattern, edges, budget),
        Command::Decompose { input, max_rounds } => {
            commands::decompose(cfg, input.as_deref(), max_rounds)
        }
        Command::Detect { pattern, input } => commands::detect(cfg, pattern, input.as_deref()),
        Command::Enumerate {
            n,
            planar,
            forbid,
            connected,
            min_edges,
            max_edges,
        } => {
            let mut c = planar_turan_core::EnumConstraints::all(n);
            c.require_planar = planar;
            c.forbid = forbid;
            c.require_connected = connected;
            c.min_edges = min_edges.unwrap_or(c.min_edges);
            c.max_edges = max_edges.unwrap_or(c.max_edges);
            c.allow_large = cfg.unsafe_large;
            commands::enumerate(cfg, &c)
        }
        Command::Audit { input } => commands::audit(cfg, input.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
