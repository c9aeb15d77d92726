use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};

/// How embeddings are initialised before training.
#[derive(Debug, Clone, Default, PartialEq)]
pub enum Init {
    /// Draw from the Gaussian priors.
    #[default]
    GaussianPrior,
    /// Start every `M_t` from one pretrained `|V|×D` matrix; `context`, when
    /// given, initialises `alpha` as well (otherwise it is drawn from its prior).
    Pretrained { embedding: Matrix, context: Option<Matrix> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    /// Embedding dimension `D`.
    pub dim: usize,
    /// Context size `cs`: `cs / 2` nodes on either side of the centre.
    pub context_size: usize,
    /// Negative samples per walk position.
    pub negatives: usize,
    /// Prior precision of `alpha` and `M_1`.
    pub lambda1: f64,
    /// Drift precision between consecutive `M_t`.
    pub lambda: f64,
    /// Initial learning rate; decays linearly to `min_learning_rate`.
    pub learning_rate: f64,
    pub min_learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
    /// Worker threads. One worker is bit-reproducible; more workers apply
    /// lock-free asynchronous updates.
    pub workers: usize,
    #[serde(skip)]
    pub init: Init,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            dim: 128,
            context_size: 4,
            negatives: 10,
            lambda1: 1.0,
            lambda: 1000.0,
            learning_rate: 0.025,
            min_learning_rate: 1e-4,
            epochs: 5,
            seed: 0,
            workers: 1,
            init: Init::GaussianPrior,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidConfig(m));
        if self.dim < 1 {
            return fail("dimension must be at least 1".into());
        }
        if self.context_size < 2 || !self.context_size.is_multiple_of(2) {
            return fail(format!(
                "context size must be even and at least 2, got {}",
                self.context_size
            ));
        }
        if self.negatives < 1 {
            return fail("at least one negative sample is required".into());
        }
        if !(self.lambda1.is_finite() && self.lambda1 > 0.0) {
            return fail(format!("lambda1 must be positive, got {}", self.lambda1));
        }
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return fail(format!("lambda must be positive, got {}", self.lambda));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return fail(format!("learning rate must be positive, got {}", self.learning_rate));
        }
        if !(self.min_learning_rate.is_finite()
            && self.min_learning_rate > 0.0
            && self.min_learning_rate <= self.learning_rate)
        {
            return fail("minimum learning rate must lie in (0, learning_rate]".into());
        }
        if self.epochs < 1 {
            return fail("at least one epoch is required".into());
        }
        if self.workers < 1 {
            return fail("at least one worker is required".into());
        }
        Ok(())
    }

    pub(crate) fn half_window(&self) -> usize {
        self.context_size / 2
    }

    /// Learning rate after a fraction `progress` of all training positions.
    pub fn learning_rate_at(&self, progress: f64) -> f64 {
        let p = progress.clamp(0.0, 1.0);
        self.learning_rate - (self.learning_rate - self.min_learning_rate) * p
    }
}
