use rand::distr::Distribution;
use rand_distr::weighted::WeightedAliasIndex;

use crate::NodeId;

const EXPONENT: f64 = 0.75;
const MAX_REJECTIONS: usize = 64;

/// Negative-sample distribution `φ ∝ count^0.75` restricted to a node set.
#[derive(Debug, Clone)]
pub struct NegativeSampler {
    support: Vec<NodeId>,
    probabilities: Vec<f64>,
    alias: Option<WeightedAliasIndex<f64>>,
}

impl NegativeSampler {
    /// `counts` are corpus occurrence counts over the whole vocabulary;
    /// only nodes in `restrict_to` with a positive count can be drawn.
    pub fn new(counts: &[u64], restrict_to: &[NodeId]) -> Self {
        let support: Vec<NodeId> = restrict_to
            .iter()
            .copied()
            .filter(|&v| counts.get(v as usize).copied().unwrap_or(0) > 0)
            .collect();
        let weights: Vec<f64> = support
            .iter()
            .map(|&v| (counts[v as usize] as f64).powf(EXPONENT))
            .collect();
        let total: f64 = weights.iter().sum();
        let mut probabilities = vec![0.0; counts.len()];
        for (&v, &w) in support.iter().zip(&weights) {
            probabilities[v as usize] = w / total;
        }
        let alias = if support.is_empty() {
            None
        } else {
            WeightedAliasIndex::new(weights).ok()
        };
        NegativeSampler {
            support,
            probabilities,
            alias,
        }
    }

    /// Probability of drawing `node` (before excluding the centre).
    pub fn probability(&self, node: NodeId) -> f64 {
        self.probabilities.get(node as usize).copied().unwrap_or(0.0)
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Draws one node different from `exclude`. Returns `None` when no such
    /// node can be drawn.
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R, exclude: NodeId) -> Option<NodeId> {
        let alias = self.alias.as_ref()?;
        for _ in 0..MAX_REJECTIONS {
            let v = self.support[alias.sample(rng)];
            if v != exclude {
                return Some(v);
            }
        }
        // Pathological mass on `exclude`; fall back to a uniform pick.
        let others: Vec<NodeId> = self.support.iter().copied().filter(|&v| v != exclude).collect();
        if others.is_empty() {
            None
        } else {
            Some(others[rng.random_range(0..others.len())])
        }
    }
}
