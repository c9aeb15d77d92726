//! Link prediction, evolving-node detection and trajectory export.

mod evolving;
mod link;
pub mod metrics;
mod trajectory;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use evolving::{active_quota, detect_evolving, ranking_metrics, ActivityRanking, ACTIVE_FRACTION};
pub use link::{cross_validated_auc, edge_feature, link_prediction, LogisticRegression, DEFAULT_FOLDS};
pub use trajectory::{export_trajectories, TrajectoryRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    LinkPrediction,
    EvolvingDetection,
}

/// Metric bundle of one evaluation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub task: Task,
    /// `AUC`, `MAP`, `MRR` or `TOPK`, each in `[0, 1]`.
    pub metrics: BTreeMap<String, f64>,
    pub folds: Vec<f64>,
    pub seed: u64,
    pub config_hash: String,
}

impl EvalReport {
    pub fn new(task: Task, seed: u64) -> Self {
        EvalReport {
            task,
            metrics: BTreeMap::new(),
            folds: Vec::new(),
            seed,
            config_hash: String::new(),
        }
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.get(name).copied()
    }

    /// Stamps the report with the SHA-256 of the JSON form of `config`.
    pub fn with_config<T: Serialize>(mut self, config: &T) -> crate::Result<Self> {
        let json = serde_json::to_vec(config)?;
        let digest = Sha256::digest(&json);
        self.config_hash = digest.iter().map(|b| format!("{b:02x}")).collect();
        Ok(self)
    }
}
