//! Threshold-based n-gram stemmer.
//!
//! Words are consumed in lexicon order (shortest first). The first unassigned
//! word seeds a cluster, and every other unassigned word whose dice similarity
//! with the seed reaches the threshold joins it. Candidates are compared with
//! the seed only, never with members that joined later.

use serde::{Deserialize, Serialize};

use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::ngram::{dice_unchecked, GramOrder, NGramProfile};
use crate::preprocess::Lexicon;

pub const DEFAULT_THRESHOLD: f64 = 0.06;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreedyConfig {
    pub order: GramOrder,
    pub threshold: f64,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            order: GramOrder::Bigram,
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

impl GreedyConfig {
    pub fn new(order: GramOrder, threshold: f64) -> Result<Self> {
        let config = GreedyConfig { order, threshold };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.threshold > 0.0 && self.threshold < 1.0 {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "threshold must lie strictly between 0 and 1, got {}",
                self.threshold
            )))
        }
    }
}

pub fn cluster_greedy(lexicon: &Lexicon, config: &GreedyConfig) -> Result<Vec<Cluster>> {
    config.validate()?;
    let profiles: Vec<NGramProfile> = lexicon
        .words()
        .iter()
        .map(|w| NGramProfile::new(w, config.order))
        .collect();

    let mut remaining: Vec<usize> = (0..profiles.len()).collect();
    let mut clusters = Vec::new();
    while let Some((&seed, rest)) = remaining.split_first() {
        let seed_profile = &profiles[seed];
        let mut members = vec![seed_profile.word().to_string()];
        let mut left = Vec::with_capacity(rest.len());
        for &candidate in rest {
            if dice_unchecked(seed_profile, &profiles[candidate]) >= config.threshold {
                members.push(profiles[candidate].word().to_string());
            } else {
                left.push(candidate);
            }
        }
        clusters.push(Cluster::from_members(members));
        remaining = left;
    }
    Ok(clusters)
}
