//! Statistical stemming for Bangla.
//!
//! Raw text is reduced to a lexicon of unique word forms, which is clustered
//! into stem groups by one of several interchangeable backends:
//!
//! * `greedy`: dice-coefficient threshold clustering over character n-grams,
//! * `ap-coeff`: affinity propagation on a dice similarity matrix,
//! * `ap-median`: affinity propagation on median offset distances.
//!
//! Each cluster's stem is its shortest member. Clusters can be expanded into
//! a [`StemTable`] for lookup and scored against a gold standard.

pub mod affinity;
pub mod backend;
pub mod cluster;
pub mod error;
pub mod eval;
pub mod greedy;
pub mod ngram;
pub mod preprocess;
pub mod report;
pub mod table;

pub use affinity::{ApConfig, Preference, SimilarityMatrix, SimilarityMode};
pub use backend::{BackendRegistry, BackendSettings, ClusterBackend};
pub use cluster::{select_stem, Cluster};
pub use error::{Error, Result};
pub use eval::{score_clusters, EvalReport, GoldStandard, Scoring};
pub use greedy::{cluster_greedy, GreedyConfig};
pub use ngram::{dice, GramOrder, NGramProfile};
pub use preprocess::{build_lexicon, clean_text, tokenize, Lexicon, RawDocument};
pub use report::ClusterReport;
pub use table::{StemTable, TrainedWith};
