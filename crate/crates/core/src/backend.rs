//! Clustering backends behind one trait, looked up by name at runtime.

use std::collections::BTreeMap;

use crate::affinity::{build_similarity_matrix, run_ap, ApConfig, SimilarityMode};
use crate::error::{Error, Result};
use crate::greedy::{cluster_greedy, GreedyConfig};
use crate::preprocess::Lexicon;
use crate::report::{AffinityRun, ClusterReport};
use crate::table::{StemTable, TrainedWith};

pub const GREEDY_BACKEND: &str = "greedy";

/// Hyperparameters handed to backend factories. Each backend reads its own part.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BackendSettings {
    pub greedy: GreedyConfig,
    pub affinity: ApConfig,
}

pub trait ClusterBackend: Send + Sync {
    fn name(&self) -> &'static str;

    fn trained_with(&self) -> TrainedWith;

    fn cluster(&self, lexicon: &Lexicon) -> Result<ClusterReport>;

    /// Clusters the lexicon and expands the result into a stem table.
    fn train(&self, lexicon: &Lexicon) -> Result<(ClusterReport, StemTable)> {
        let report = self.cluster(lexicon)?;
        let table = StemTable::from_clusters(&report.clusters, self.trained_with())?;
        Ok((report, table))
    }
}

pub struct GreedyBackend {
    config: GreedyConfig,
}

impl GreedyBackend {
    pub fn new(config: GreedyConfig) -> Result<Self> {
        config.validate()?;
        Ok(GreedyBackend { config })
    }
}

impl ClusterBackend for GreedyBackend {
    fn name(&self) -> &'static str {
        GREEDY_BACKEND
    }

    fn trained_with(&self) -> TrainedWith {
        TrainedWith::Greedy(self.config)
    }

    fn cluster(&self, lexicon: &Lexicon) -> Result<ClusterReport> {
        Ok(ClusterReport {
            clusters: cluster_greedy(lexicon, &self.config)?,
            affinity: None,
        })
    }
}

pub struct AffinityBackend {
    mode: SimilarityMode,
    config: ApConfig,
}

impl AffinityBackend {
    pub fn new(mode: SimilarityMode, config: ApConfig) -> Result<Self> {
        config.validate()?;
        Ok(AffinityBackend { mode, config })
    }
}

impl ClusterBackend for AffinityBackend {
    fn name(&self) -> &'static str {
        self.mode.backend_name()
    }

    fn trained_with(&self) -> TrainedWith {
        TrainedWith::Affinity {
            backend: self.name(),
        }
    }

    fn cluster(&self, lexicon: &Lexicon) -> Result<ClusterReport> {
        let matrix = build_similarity_matrix(lexicon, self.mode, &self.config)?;
        let outcome = run_ap(&matrix, &self.config)?;
        Ok(ClusterReport {
            clusters: outcome.clusters,
            affinity: Some(AffinityRun {
                mode: self.mode,
                converged: outcome.converged,
                iterations: outcome.iterations,
            }),
        })
    }
}

type Factory = Box<dyn Fn(&BackendSettings) -> Result<Box<dyn ClusterBackend>> + Send + Sync>;

#[derive(Default)]
pub struct BackendRegistry {
    factories: BTreeMap<String, Factory>,
}

impl BackendRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding `greedy`, `ap-coeff` and `ap-median`.
    pub fn with_builtin() -> Self {
        let mut registry = Self::new();
        registry.register(GREEDY_BACKEND, |s| {
            Ok(Box::new(GreedyBackend::new(s.greedy)?) as Box<dyn ClusterBackend>)
        });
        for mode in [SimilarityMode::Coefficient, SimilarityMode::Median] {
            registry.register(mode.backend_name(), move |s| {
                Ok(Box::new(AffinityBackend::new(mode, s.affinity)?) as Box<dyn ClusterBackend>)
            });
        }
        registry
    }

    /// Adds or replaces the factory registered under `name`.
    pub fn register<F>(&mut self, name: &str, factory: F)
    where
        F: Fn(&BackendSettings) -> Result<Box<dyn ClusterBackend>> + Send + Sync + 'static,
    {
        self.factories.insert(name.to_string(), Box::new(factory));
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    pub fn create(
        &self,
        name: &str,
        settings: &BackendSettings,
    ) -> Result<Box<dyn ClusterBackend>> {
        let factory = self.factories.get(name).ok_or_else(|| {
            Error::Config(format!(
                "unknown backend {name:?} (available: {})",
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })?;
        factory(settings)
    }
}
