//! `stemcluster`: preprocess corpora, train stemmers, stem words, score clusters.
//!
//! Every failure prints exactly one line `error[<kind>]: <message>` to stderr
//! and exits nonzero (2 for usage errors, 1 otherwise).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stemcluster::{GramOrder, Preference};

#[derive(Parser)]
#[command(
    name = "stemcluster",
    version,
    about = "N-gram statistical stemmer for Bangla"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clean and tokenize text files into a lexicon (one word per line).
    Preprocess {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
        /// Write a `#stats total=<n> unique=<m>` first line.
        #[arg(long)]
        stats: bool,
    },
    /// Cluster a lexicon and write the stem table and cluster report.
    Train(TrainArgs),
    /// Stem words given as arguments, or whitespace-separated on stdin.
    Stem {
        #[arg(long)]
        table: PathBuf,
        words: Vec<String>,
        /// Append a TAB and `OOV` to words missing from the table.
        #[arg(long)]
        mark_oov: bool,
    },
    /// Score a cluster report against a gold `word<TAB>label` file.
    Evaluate {
        report: PathBuf,
        gold: PathBuf,
        /// Print a plain-text table instead of JSON.
        #[arg(long)]
        table: bool,
        /// Also require each correct cluster's stem to equal its gold label.
        #[arg(long)]
        strict: bool,
        /// Exit nonzero when accuracy falls below this value.
        #[arg(long, value_name = "F")]
        min_accuracy: Option<f64>,
        /// Write the JSON report here as well.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TrainArgs {
    lexicon: PathBuf,
    /// Stem table output (TSV).
    #[arg(long = "table-out")]
    table_out: PathBuf,
    /// Cluster report output (JSON).
    #[arg(long = "report-out")]
    report_out: PathBuf,
    #[arg(long, default_value = "greedy")]
    backend: String,
    /// Greedy n-gram order: 2, 3 or 2+3.
    #[arg(long, default_value = "2", value_parser = parse_order)]
    ngram: GramOrder,
    #[arg(long, default_value_t = stemcluster::greedy::DEFAULT_THRESHOLD)]
    threshold: f64,
    #[arg(long, default_value_t = 0.5)]
    damping: f64,
    /// `median` or a number.
    #[arg(long, default_value = "median", value_parser = parse_preference, allow_hyphen_values = true)]
    preference: Preference,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    #[arg(long, default_value_t = 15)]
    convergence_window: usize,
    #[arg(long, default_value_t = 20_000)]
    max_points: usize,
}

fn parse_order(s: &str) -> Result<GramOrder, String> {
    s.parse().map_err(|e: stemcluster::Error| e.to_string())
}

fn parse_preference(s: &str) -> Result<Preference, String> {
    s.parse().map_err(|e: stemcluster::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("error[usage]: {first}");
            return ExitCode::from(2);
        }
    };

    let result = match cli.command {
        Command::Preprocess {
            inputs,
            output,
            stats,
        } => commands::preprocess(&inputs, &output, stats),
        Command::Train(args) => commands::train(args),
        Command::Stem {
            table,
            words,
            mark_oov,
        } => commands::stem(&table, words, mark_oov),
        Command::Evaluate {
            report,
            gold,
            table,
            strict,
            min_accuracy,
            output,
        } => commands::evaluate(
            &report,
            &gold,
            table,
            strict,
            min_accuracy,
            output.as_deref(),
        ),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.kind(), e.to_string().replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
