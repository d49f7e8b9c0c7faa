//! JSON cluster reports and the line-oriented lexicon file.
//!
//! Greedy runs produce a bare array of `{stem, members}` objects. Affinity
//! propagation runs wrap the array with run metadata:
//! `{"mode", "converged", "iterations", "clusters": [{stem, members, exemplar}]}`.
//! [`ClusterReport::from_json`] accepts both shapes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::affinity::SimilarityMode;
use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::preprocess::Lexicon;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffinityRun {
    pub mode: SimilarityMode,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport {
    pub clusters: Vec<Cluster>,
    pub affinity: Option<AffinityRun>,
}

#[derive(Serialize, Deserialize)]
struct AffinityReport {
    #[serde(flatten)]
    run: AffinityRun,
    clusters: Vec<Cluster>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyReport {
    Plain(Vec<Cluster>),
    Affinity(AffinityReport),
}

impl ClusterReport {
    pub fn to_json(&self) -> String {
        let mut out = match &self.affinity {
            None => serde_json::to_string_pretty(&self.clusters),
            Some(run) => serde_json::to_string_pretty(&AffinityReport {
                run: run.clone(),
                clusters: self.clusters.clone(),
            }),
        }
        .expect("cluster report serialises");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(match serde_json::from_str::<AnyReport>(text)? {
            AnyReport::Plain(clusters) => ClusterReport {
                clusters,
                affinity: None,
            },
            AnyReport::Affinity(r) => ClusterReport {
                clusters: r.clusters,
                affinity: Some(r.run),
            },
        })
    }
}

const STATS_PREFIX: &str = "#stats ";

/// One word per line in lexicon order, optionally preceded by a
/// `#stats total=<n> unique=<m>` line.
pub fn lexicon_to_text(lexicon: &Lexicon, with_stats: bool) -> String {
    let mut out = String::new();
    if with_stats {
        let stats = lexicon.stats();
        let _ = writeln!(
            out,
            "{STATS_PREFIX}total={} unique={}",
            stats.total_tokens, stats.unique_tokens
        );
    }
    for word in lexicon.words() {
        out.push_str(word);
        out.push('\n');
    }
    out
}

pub fn lexicon_from_text(text: &str, source: &str) -> Result<Lexicon> {
    let mut total = None;
    let mut words = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if let Some(rest) = line.strip_prefix(STATS_PREFIX) {
            if idx != 0 {
                return Err(Error::format(
                    source,
                    line_no,
                    "#stats must be the first line",
                ));
            }
            total = Some(parse_total(rest).ok_or_else(|| {
                Error::format(source, line_no, "expected #stats total=<n> unique=<m>")
            })?);
            continue;
        }
        let word = line.trim();
        if word.is_empty() {
            continue;
        }
        if word.chars().any(char::is_whitespace) {
            return Err(Error::format(source, line_no, "one word per line expected"));
        }
        if word.chars().nth(1).is_none() {
            return Err(Error::format(
                source,
                line_no,
                format!("{word:?} is shorter than two characters"),
            ));
        }
        words.push(word);
    }
    let lexicon = Lexicon::from_words(words);
    Ok(match total {
        Some(t) => lexicon.with_total_tokens(t),
        None => lexicon,
    })
}

fn parse_total(fields: &str) -> Option<usize> {
    fields
        .split_whitespace()
        .find_map(|f| f.strip_prefix("total="))
        .and_then(|v| v.parse().ok())
}
