//! Trained word → stem lookup table and its TSV file format.
//!
//! One `word<TAB>stem` line per word after a header such as
//! `#stemcluster v1 order=2 threshold=0.06`.
//!
//! Tables trained by affinity propagation carry `backend=<name>` instead of a
//! threshold.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::greedy::GreedyConfig;
use crate::ngram::GramOrder;

const MAGIC: &str = "#stemcluster";
const VERSION: &str = "v1";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrainedWith {
    Greedy(GreedyConfig),
    Affinity { backend: &'static str },
}

impl TrainedWith {
    fn header(&self) -> String {
        match self {
            TrainedWith::Greedy(c) => {
                format!(
                    "{MAGIC} {VERSION} order={} threshold={}",
                    c.order, c.threshold
                )
            }
            TrainedWith::Affinity { backend } => {
                let order = if *backend == crate::affinity::MEDIAN_BACKEND {
                    "none".to_string()
                } else {
                    GramOrder::Mixed.to_string()
                };
                format!("{MAGIC} {VERSION} backend={backend} order={order}")
            }
        }
    }

    fn parse_header(line: &str, source: &str) -> Result<Self> {
        let bad = |msg: &str| Error::format(source, 1, msg);
        let mut parts = line.split_whitespace();
        if parts.next() != Some(MAGIC) {
            return Err(bad("missing #stemcluster header"));
        }
        if parts.next() != Some(VERSION) {
            return Err(bad("unsupported table version"));
        }
        let mut fields = BTreeMap::new();
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad("header fields must be key=value"))?;
            fields.insert(key, value);
        }
        if let Some(backend) = fields.get("backend") {
            let backend = crate::affinity::backend_name(backend)
                .ok_or_else(|| bad("unknown backend in header"))?;
            return Ok(TrainedWith::Affinity { backend });
        }
        let order = fields
            .get("order")
            .ok_or_else(|| bad("header lacks order="))?
            .parse::<GramOrder>()
            .map_err(|e| bad(&e.to_string()))?;
        let threshold = fields
            .get("threshold")
            .ok_or_else(|| bad("header lacks threshold="))?
            .parse::<f64>()
            .map_err(|_| bad("threshold is not a number"))?;
        GreedyConfig::new(order, threshold)
            .map(TrainedWith::Greedy)
            .map_err(|e| bad(&e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub lexicon_size: usize,
    pub cluster_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stemmed<'a> {
    pub stem: &'a str,
    pub in_vocabulary: bool,
}

/// Word → stem mapping. Every stem maps to itself.
#[derive(Debug, Clone, PartialEq)]
pub struct StemTable {
    entries: BTreeMap<String, String>,
    trained_with: TrainedWith,
    provenance: Provenance,
}

impl StemTable {
    pub fn from_clusters(clusters: &[Cluster], trained_with: TrainedWith) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for cluster in clusters {
            for member in &cluster.members {
                if entries
                    .insert(member.clone(), cluster.stem.clone())
                    .is_some()
                {
                    return Err(Error::Partition {
                        word: member.clone(),
                    });
                }
            }
        }
        Ok(StemTable {
            provenance: Provenance {
                lexicon_size: entries.len(),
                cluster_count: clusters.len(),
            },
            entries,
            trained_with,
        })
    }

    /// Looks `word` up; unknown words stem to themselves.
    pub fn stem<'a>(&'a self, word: &'a str) -> Stemmed<'a> {
        match self.entries.get(word) {
            Some(stem) => Stemmed {
                stem,
                in_vocabulary: true,
            },
            None => Stemmed {
                stem: word,
                in_vocabulary: false,
            },
        }
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.entries
    }

    pub fn trained_with(&self) -> TrainedWith {
        self.trained_with
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.trained_with.header();
        out.push('\n');
        for (word, stem) in &self.entries {
            let _ = writeln!(out, "{word}\t{stem}");
        }
        out
    }

    /// Parses a table written by [`StemTable::to_tsv`]. `source` names the
    /// input in error messages.
    pub fn from_tsv(text: &str, source: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::format(source, 1, "empty stem table"))?;
        let trained_with = TrainedWith::parse_header(header, source)?;

        let mut entries = BTreeMap::new();
        for (idx, line) in lines.enumerate() {
            let line_no = idx + 2;
            if line.is_empty() {
                continue;
            }
            let (word, stem) = line
                .split_once('\t')
                .filter(|(w, s)| !w.is_empty() && !s.is_empty() && !s.contains('\t'))
                .ok_or_else(|| Error::format(source, line_no, "expected word<TAB>stem"))?;
            if entries.insert(word.to_string(), stem.to_string()).is_some() {
                return Err(Error::format(
                    source,
                    line_no,
                    format!("duplicate entry for {word:?}"),
                ));
            }
        }
        for (word, stem) in &entries {
            if entries.get(stem) != Some(stem) {
                return Err(Error::format(
                    source,
                    1,
                    format!("stem {stem:?} of {word:?} does not map to itself"),
                ));
            }
        }
        let cluster_count = entries.iter().filter(|(w, s)| w == s).count();
        Ok(StemTable {
            provenance: Provenance {
                lexicon_size: entries.len(),
                cluster_count,
            },
            entries,
            trained_with,
        })
    }
}
