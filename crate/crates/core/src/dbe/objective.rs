//! The regularised pseudo log-likelihood and its gradient.
//!
//! These are the reference (dense, allocation-happy) forms used for
//! objective reporting and gradient checks; the trainer applies the same
//! per-window gradient in place.

use super::config::TrainConfig;
use super::embeddings::EmbeddingSet;
use super::matrix::{dot, squared_distance, Matrix};
use crate::NodeId;

/// Saturation guard applied to `η` before the sigmoid and the logarithm.
pub const ETA_CLAMP: f64 = 30.0;

/// One training position: a centre node at timestep `timestep` (zero
/// based), its context nodes and the negatives drawn for it.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextWindow {
    pub timestep: usize,
    pub center: NodeId,
    pub context: Vec<NodeId>,
    pub negatives: Vec<NodeId>,
}

/// Natural parameter of a node given its context: `y · Σ α_c`.
pub fn eta(y: &[f64], context_sum: &[f64]) -> f64 {
    dot(y, context_sum)
}

pub fn sigmoid(x: f64) -> f64 {
    let x = x.clamp(-ETA_CLAMP, ETA_CLAMP);
    1.0 / (1.0 + (-x).exp())
}

/// `log σ(x)` on the clamped argument.
pub fn log_sigmoid(x: f64) -> f64 {
    let x = x.clamp(-ETA_CLAMP, ETA_CLAMP);
    -(-x).exp().ln_1p()
}

/// Sum of the context rows of `alpha`.
pub fn context_sum(alpha: &Matrix, context: &[NodeId]) -> Vec<f64> {
    let mut sum = vec![0.0; alpha.cols()];
    for &c in context {
        for (s, a) in sum.iter_mut().zip(alpha.row(c as usize)) {
            *s += a;
        }
    }
    sum
}

/// Context of position `i` in `walk`: up to `half` nodes on each side,
/// truncated at the ends of the walk.
pub fn context_of(walk: &[NodeId], i: usize, half: usize) -> impl Iterator<Item = NodeId> + '_ {
    let lo = i.saturating_sub(half);
    let hi = (i + half + 1).min(walk.len());
    (lo..hi).filter(move |&k| k != i).map(move |k| walk[k])
}

/// Objective broken into its four terms.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Objective {
    pub positive: f64,
    pub negative: f64,
    pub context_prior: f64,
    pub embedding_prior: f64,
}

impl Objective {
    pub fn total(&self) -> f64 {
        self.positive + self.negative + self.context_prior + self.embedding_prior
    }
}

/// `(L_alpha, L_y)` over the whole vocabulary.
pub fn prior_terms(emb: &EmbeddingSet, config: &TrainConfig) -> (f64, f64) {
    let context_prior = -0.5 * config.lambda1 * emb.alpha().squared_norm();
    let mut embedding_prior = -0.5 * config.lambda1 * emb.step(0).squared_norm();
    for t in 1..emb.timesteps() {
        let drift = squared_distance(emb.step(t).as_slice(), emb.step(t - 1).as_slice());
        embedding_prior -= 0.5 * config.lambda * drift;
    }
    (context_prior, embedding_prior)
}

/// Objective `L_pos + L_neg + L_alpha + L_y` of `batch` (to be maximised).
pub fn loss(emb: &EmbeddingSet, batch: &[ContextWindow], config: &TrainConfig) -> Objective {
    let mut obj = Objective::default();
    for w in batch {
        let ctx = context_sum(emb.alpha(), &w.context);
        let m = emb.step(w.timestep);
        obj.positive += log_sigmoid(eta(m.row(w.center as usize), &ctx));
        for &n in &w.negatives {
            obj.negative += log_sigmoid(-eta(m.row(n as usize), &ctx));
        }
    }
    let (a, y) = prior_terms(emb, config);
    obj.context_prior = a;
    obj.embedding_prior = y;
    obj
}

/// Gradient of [`loss`] with respect to every embedding and context entry.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    pub steps: Vec<Matrix>,
    pub alpha: Matrix,
}

pub fn gradient(emb: &EmbeddingSet, batch: &[ContextWindow], config: &TrainConfig) -> Gradient {
    let (v, d) = (emb.vocab_size(), emb.dim());
    let mut steps: Vec<Matrix> = (0..emb.timesteps()).map(|_| Matrix::zeros(v, d)).collect();
    let mut alpha = Matrix::zeros(v, d);

    for w in batch {
        let ctx = context_sum(emb.alpha(), &w.context);
        let m = emb.step(w.timestep);
        let mut ctx_grad = vec![0.0; d];

        let y = m.row(w.center as usize);
        let g = 1.0 - sigmoid(eta(y, &ctx));
        add_scaled(steps[w.timestep].row_mut(w.center as usize), g, &ctx);
        add_scaled(&mut ctx_grad, g, y);

        for &n in &w.negatives {
            let y = m.row(n as usize);
            let g = -sigmoid(eta(y, &ctx));
            add_scaled(steps[w.timestep].row_mut(n as usize), g, &ctx);
            add_scaled(&mut ctx_grad, g, y);
        }
        for &c in &w.context {
            add_scaled(alpha.row_mut(c as usize), 1.0, &ctx_grad);
        }
    }

    add_scaled(alpha.as_mut_slice(), -config.lambda1, emb.alpha().as_slice());
    add_scaled(steps[0].as_mut_slice(), -config.lambda1, emb.step(0).as_slice());
    for t in 1..emb.timesteps() {
        let (cur, prev) = (emb.step(t).as_slice(), emb.step(t - 1).as_slice());
        for (k, (&a, &b)) in cur.iter().zip(prev).enumerate() {
            let g = config.lambda * (a - b);
            steps[t].as_mut_slice()[k] -= g;
            steps[t - 1].as_mut_slice()[k] += g;
        }
    }
    Gradient { steps, alpha }
}

pub(crate) fn add_scaled(dst: &mut [f64], scale: f64, src: &[f64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += scale * s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(steps: Vec<Matrix>, alpha: Matrix) -> EmbeddingSet {
        EmbeddingSet::new(steps, alpha).unwrap()
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&[0.0, 0.0], &[3.0, 4.0]), 0.0);
        assert_eq!(sigmoid(0.0), 0.5);
        assert_eq!(eta(&[1.0, 0.0], &[1.0, 0.0]), 1.0);

        let alpha = Matrix::from_vec(2, 2, vec![1.0, 0.0, 0.0, 2.0]);
        let ctx = context_sum(&alpha, &[0, 1]);
        assert_eq!(eta(&[3.0, 1.0], &ctx), 5.0);
    }

    #[test]
    fn zero_embeddings_loss() {
        let emb = set(vec![Matrix::zeros(3, 4)], Matrix::zeros(3, 4));
        let batch = [ContextWindow {
            timestep: 0,
            center: 0,
            context: vec![1],
            negatives: vec![2],
        }];
        let obj = loss(&emb, &batch, &TrainConfig::default());
        assert!((obj.total() - 2.0 * 0.5f64.ln()).abs() < 1e-12);
        assert!((obj.total() + 1.3863).abs() < 1e-4);
        assert_eq!(obj.context_prior, 0.0);
        assert_eq!(obj.embedding_prior, 0.0);
    }

    #[test]
    fn drift_prior_example() {
        let y1 = Matrix::from_vec(1, 2, vec![1.0, 0.0]);
        let y2 = Matrix::from_vec(1, 2, vec![1.0, 2.0]);
        let emb = set(vec![y1, y2], Matrix::zeros(1, 2));
        let cfg = TrainConfig {
            lambda: 2.0,
            lambda1: 1.0,
            ..TrainConfig::default()
        };
        let (_, y) = prior_terms(&emb, &cfg);
        // -(1/2)·1 from the M_1 prior, -(2/2)·4 from the drift
        assert!((y - (-0.5 - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn context_prior_decreases_with_norm() {
        let cfg = TrainConfig::default();
        let mut last = f64::INFINITY;
        for s in [0.0, 0.5, 1.0, 2.0] {
            let emb = set(vec![Matrix::zeros(1, 2)], Matrix::from_vec(1, 2, vec![s, s]));
            let (a, _) = prior_terms(&emb, &cfg);
            assert!(a < last || s == 0.0);
            last = a;
        }
    }

    #[test]
    fn truncated_context() {
        let walk = [7, 8, 9, 10, 11];
        assert_eq!(context_of(&walk, 0, 2).collect::<Vec<_>>(), vec![8, 9]);
        assert_eq!(context_of(&walk, 2, 2).collect::<Vec<_>>(), vec![7, 8, 10, 11]);
        assert_eq!(context_of(&walk, 4, 1).collect::<Vec<_>>(), vec![10]);
    }

    #[test]
    fn clamped_log_sigmoid_is_finite() {
        assert!(log_sigmoid(-1e6).is_finite());
        assert!((log_sigmoid(-1e6) - log_sigmoid(-30.0)).abs() < 1e-12);
        assert!(log_sigmoid(1e6) <= 0.0);
    }
}
