//! `jury`: aggregate binary expert votes into optimal decisions.

mod commands;
mod config;
mod error;
mod rules;
mod votes;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "jury",
    version,
    about = "Optimal aggregation of binary expert opinions",
    long_about = "Builds optimal decision rules for panels of binary experts, applies them to \
                  vote matrices, and verifies their risk properties by exact evaluation, \
                  exhaustive search, and Monte Carlo simulation."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide every item in a vote matrix with the configured model's optimal rule
    Aggregate {
        /// Panel configuration (TOML)
        #[arg(long)]
        config: PathBuf,
        /// Vote matrix (CSV with header `item_id,<experts...>`)
        #[arg(long)]
        votes: PathBuf,
        /// Output decision records (CSV)
        #[arg(long)]
        out: PathBuf,
        /// Override the config seed for coin resolution
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Report per-state risks and the action table of a rule
    Risk {
        #[arg(long)]
        config: PathBuf,
        /// bayes | majority | coinflip | interval-minimax | path to a rule table
        #[arg(long, default_value = "bayes")]
        rule: String,
        /// Output report; the machine table lands next to it at `<out>.rules.csv`
        #[arg(long)]
        out: PathBuf,
    },
    /// Search every decision rule for the minimax optimum over the accuracy box
    Minimax {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Scan priors for the one whose optimal rule has the largest Bayes risk
    Lfp {
        #[arg(long)]
        config: PathBuf,
        /// Output curve (CSV with `# argmax_c` header comments)
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo estimates of a rule's risk against the exact values
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "bayes")]
        rule: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long)]
        out: PathBuf,
        /// Override the config seed
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Aggregate {
            config,
            votes,
            out,
            seed,
        } => commands::aggregate::run(config, votes, out, *seed),
        Command::Risk { config, rule, out } => commands::risk::run(config, rule, out),
        Command::Minimax { config, out } => commands::minimax::run(config, out),
        Command::Lfp { config, out } => commands::lfp::run(config, out),
        Command::Simulate {
            config,
            rule,
            trials,
            out,
            seed,
        } => commands::simulate::run(config, rule, *trials, out, *seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("jury: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
