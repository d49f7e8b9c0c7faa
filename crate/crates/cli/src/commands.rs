use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use stemcluster::affinity::ApConfig;
use stemcluster::backend::{BackendRegistry, BackendSettings};
use stemcluster::eval::report_stats;
use stemcluster::preprocess::{preprocess as run_preprocess, RawDocument};
use stemcluster::report::{lexicon_from_text, lexicon_to_text};
use stemcluster::{score_clusters, ClusterReport, GoldStandard, GreedyConfig, Scoring, StemTable};

use crate::TrainArgs;

pub enum CliError {
    Core(stemcluster::Error),
    BelowMinimum { accuracy: f64, minimum: f64 },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::BelowMinimum { .. } => "accuracy",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::BelowMinimum { accuracy, minimum } => {
                write!(
                    f,
                    "accuracy {accuracy:.4} is below --min-accuracy {minimum}"
                )
            }
        }
    }
}

impl From<stemcluster::Error> for CliError {
    fn from(e: stemcluster::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult = Result<(), CliError>;

fn read_text(path: &Path) -> Result<String, stemcluster::Error> {
    RawDocument::load(path).map(|doc| doc.content().to_string())
}

fn write_file(path: &Path, contents: &str) -> Result<(), stemcluster::Error> {
    fs::write(path, contents).map_err(|e| stemcluster::Error::io(path, e))
}

fn stdout_error(e: io::Error) -> stemcluster::Error {
    stemcluster::Error::io("<stdout>", e)
}

pub fn preprocess(inputs: &[std::path::PathBuf], output: &Path, with_stats: bool) -> CliResult {
    let docs = inputs
        .iter()
        .map(|p| RawDocument::load(p))
        .collect::<Result<Vec<_>, _>>()?;
    let lexicon = run_preprocess(&docs);
    if lexicon.is_empty() {
        eprintln!("warning: no tokens survived preprocessing; writing an empty lexicon");
    }
    write_file(output, &lexicon_to_text(&lexicon, with_stats))?;
    let stats = lexicon.stats();
    println!(
        "total={} unique={}",
        stats.total_tokens, stats.unique_tokens
    );
    Ok(())
}

pub fn train(args: TrainArgs) -> CliResult {
    let text = read_text(&args.lexicon)?;
    let lexicon = lexicon_from_text(&text, &args.lexicon.display().to_string())?;
    let settings = BackendSettings {
        greedy: GreedyConfig {
            order: args.ngram,
            threshold: args.threshold,
        },
        affinity: ApConfig {
            damping: args.damping,
            preference: args.preference,
            max_iterations: args.max_iter,
            convergence_window: args.convergence_window,
            max_points: args.max_points,
        },
    };
    let backend = BackendRegistry::with_builtin().create(&args.backend, &settings)?;
    let (report, table) = backend.train(&lexicon)?;
    write_file(&args.table_out, &table.to_tsv())?;
    write_file(&args.report_out, &report.to_json())?;

    let stats = report_stats(&report.clusters);
    let mut line = format!(
        "backend={} clusters={} unique={} reduction_ratio={:.4}",
        backend.name(),
        stats.total_clusters,
        stats.unique_tokens,
        stats.reduction_ratio
    );
    if let Some(run) = &report.affinity {
        line.push_str(&format!(
            " converged={} iterations={}",
            run.converged, run.iterations
        ));
        if !run.converged {
            eprintln!(
                "warning: affinity propagation did not converge in {} iterations",
                run.iterations
            );
        }
    }
    println!("{line}");
    Ok(())
}

pub fn stem(table_path: &Path, words: Vec<String>, mark_oov: bool) -> CliResult {
    let text = read_text(table_path)?;
    let table = StemTable::from_tsv(&text, &table_path.display().to_string())?;

    let words = if words.is_empty() {
        let mut input = String::new();
        io::stdin()
            .read_to_string(&mut input)
            .map_err(|e| stemcluster::Error::io("<stdin>", e))?;
        input.split_whitespace().map(str::to_string).collect()
    } else {
        words
    };

    let mut out = BufWriter::new(io::stdout().lock());
    for word in &words {
        let stemmed = table.stem(word);
        if mark_oov && !stemmed.in_vocabulary {
            writeln!(out, "{}\tOOV", stemmed.stem)
        } else {
            writeln!(out, "{}", stemmed.stem)
        }
        .map_err(stdout_error)?;
    }
    out.flush().map_err(stdout_error)?;
    Ok(())
}

pub fn evaluate(
    report_path: &Path,
    gold_path: &Path,
    as_table: bool,
    strict: bool,
    min_accuracy: Option<f64>,
    output: Option<&Path>,
) -> CliResult {
    let report = ClusterReport::from_json(&read_text(report_path)?)?;
    let gold = GoldStandard::from_tsv(&read_text(gold_path)?, &gold_path.display().to_string())?;
    let scoring = if strict {
        Scoring::Strict
    } else {
        Scoring::Purity
    };
    let eval = score_clusters(&report.clusters, &gold, scoring);

    let mut json = serde_json::to_string_pretty(&eval).expect("report serialises");
    json.push('\n');
    if let Some(path) = output {
        write_file(path, &json)?;
    }
    if as_table {
        print!("{}", eval.table());
    } else {
        print!("{json}");
    }

    match min_accuracy {
        Some(minimum) if eval.accuracy < minimum => Err(CliError::BelowMinimum {
            accuracy: eval.accuracy,
            minimum,
        }),
        _ => Ok(()),
    }
}
