use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::lexicon_order;

/// A group of word forms sharing one stem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub stem: String,
    pub members: Vec<String>,
    /// Exemplar elected by affinity propagation; absent for greedy clusters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exemplar: Option<String>,
}

impl Cluster {
    /// Builds a cluster whose stem is the smallest member.
    ///
    /// Panics if `members` is empty.
    pub fn from_members(members: Vec<String>) -> Self {
        let stem = select_stem(&members).to_string();
        Cluster {
            stem,
            members,
            exemplar: None,
        }
    }

    pub fn with_exemplar(mut self, exemplar: String) -> Self {
        self.exemplar = Some(exemplar);
        self
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The member that is minimal by code-point length, then code-point order.
///
/// Panics on an empty member list.
pub fn select_stem<S: AsRef<str>>(members: &[S]) -> &str {
    members
        .iter()
        .map(AsRef::as_ref)
        .min_by(|a, b| lexicon_order(a, b))
        .expect("select_stem called with no members")
}

/// Fails if any word occurs in more than one cluster (or twice in one).
pub fn check_disjoint(clusters: &[Cluster]) -> Result<()> {
    let mut seen = HashSet::new();
    for word in clusters.iter().flat_map(|c| &c.members) {
        if !seen.insert(word.as_str()) {
            return Err(Error::Partition { word: word.clone() });
        }
    }
    Ok(())
}

/// True when the clusters are disjoint, non-empty, and cover exactly `words`.
pub fn is_partition_of(clusters: &[Cluster], words: &[String]) -> bool {
    if clusters.iter().any(Cluster::is_empty) || check_disjoint(clusters).is_err() {
        return false;
    }
    let covered: HashSet<&str> = clusters
        .iter()
        .flat_map(|c| c.members.iter().map(String::as_str))
        .collect();
    covered.len() == words.len() && words.iter().all(|w| covered.contains(w.as_str()))
}
