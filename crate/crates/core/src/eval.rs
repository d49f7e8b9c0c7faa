//! Scoring clusters against a gold word → label lexicon.
//!
//! A cluster is correct when at least one member has a gold label and every
//! labelled member carries the same label. Members missing from the gold file
//! are counted as uncovered and ignored for the purity test. Strict scoring
//! additionally requires the cluster's stem to equal that label.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cluster::Cluster;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GoldStandard {
    labels: HashMap<String, String>,
}

impl GoldStandard {
    /// Parses `word<TAB>label` rows. Blank lines and `#` comments are skipped;
    /// a repeated word must repeat its label.
    pub fn from_tsv(text: &str, source: &str) -> Result<Self> {
        let mut labels = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, label) = line
                .split_once('\t')
                .map(|(w, l)| (w.trim(), l.trim()))
                .filter(|(w, l)| !w.is_empty() && !l.is_empty() && !l.contains('\t'))
                .ok_or_else(|| Error::format(source, line_no, "expected word<TAB>label"))?;
            match labels.get(word) {
                Some(existing) if existing != label => {
                    return Err(Error::format(
                        source,
                        line_no,
                        format!("{word:?} labelled both {existing:?} and {label:?}"),
                    ));
                }
                Some(_) => {}
                None => {
                    labels.insert(word.to_string(), label.to_string());
                }
            }
        }
        Ok(GoldStandard { labels })
    }

    pub fn from_pairs<I, W, L>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (W, L)>,
        W: Into<String>,
        L: Into<String>,
    {
        GoldStandard {
            labels: pairs
                .into_iter()
                .map(|(w, l)| (w.into(), l.into()))
                .collect(),
        }
    }

    pub fn label(&self, word: &str) -> Option<&str> {
        self.labels.get(word).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scoring {
    #[default]
    Purity,
    Strict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub unique_tokens: usize,
    pub total_clusters: usize,
    pub correct_clusters: usize,
    pub correct_words: usize,
    pub accuracy: f64,
    pub uncovered_words: usize,
}

impl EvalReport {
    /// Accuracy in whole percent, truncated (0.8771 → 87).
    pub fn accuracy_percent(&self) -> u32 {
        (self.accuracy * 100.0 + 1e-9).floor() as u32
    }

    /// Plain-text two-column table.
    pub fn table(&self) -> String {
        let rows = [
            ("Unique Token", self.unique_tokens.to_string()),
            ("Total Cluster", self.total_clusters.to_string()),
            ("Correct Cluster", self.correct_clusters.to_string()),
            ("Correct word", self.correct_words.to_string()),
            ("Accuracy", format!("{}%", self.accuracy_percent())),
        ];
        let mut out = String::new();
        let _ = writeln!(out, "{:<16} Quantity", "Topic");
        for (name, value) in rows {
            let _ = writeln!(out, "{name:<16} {value}");
        }
        out
    }
}

/// Label shared by every gold-labelled member, if there is exactly one.
fn pure_label<'g>(cluster: &Cluster, gold: &'g GoldStandard) -> Option<&'g str> {
    let mut labels = cluster.members.iter().filter_map(|m| gold.label(m));
    let first = labels.next()?;
    labels.all(|l| l == first).then_some(first)
}

pub fn score_clusters(clusters: &[Cluster], gold: &GoldStandard, scoring: Scoring) -> EvalReport {
    let mut report = EvalReport {
        unique_tokens: 0,
        total_clusters: clusters.len(),
        correct_clusters: 0,
        correct_words: 0,
        accuracy: 0.0,
        uncovered_words: 0,
    };
    for cluster in clusters {
        report.unique_tokens += cluster.members.len();
        let labelled = cluster
            .members
            .iter()
            .filter(|m| gold.label(m).is_some())
            .count();
        report.uncovered_words += cluster.members.len() - labelled;

        let correct = match (pure_label(cluster, gold), scoring) {
            (Some(_), Scoring::Purity) => true,
            (Some(label), Scoring::Strict) => label == cluster.stem,
            (None, _) => false,
        };
        if correct {
            report.correct_clusters += 1;
            report.correct_words += labelled;
        }
    }
    if report.total_clusters > 0 {
        report.accuracy = report.correct_clusters as f64 / report.total_clusters as f64;
    }
    report
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterStats {
    pub unique_tokens: usize,
    pub total_clusters: usize,
    /// Cluster size → number of clusters of that size.
    pub size_histogram: BTreeMap<usize, usize>,
    /// `total_clusters / unique_tokens`; 0 for no clusters.
    pub reduction_ratio: f64,
}

pub fn report_stats(clusters: &[Cluster]) -> ClusterStats {
    let unique_tokens = clusters.iter().map(Cluster::len).sum();
    let mut size_histogram = BTreeMap::new();
    for c in clusters {
        *size_histogram.entry(c.len()).or_insert(0) += 1;
    }
    ClusterStats {
        unique_tokens,
        total_clusters: clusters.len(),
        size_histogram,
        reduction_ratio: if unique_tokens == 0 {
            0.0
        } else {
            clusters.len() as f64 / unique_tokens as f64
        },
    }
}
