use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::metrics::auc;
use super::{EvalReport, Task};
use crate::dbe::EmbeddingSet;
use crate::error::{Error, Result};
use crate::seed;
use crate::temporal_graph::EventStream;
use crate::NodeId;

pub const DEFAULT_FOLDS: usize = 5;

const GD_ITERATIONS: usize = 300;
const GD_STEP: f64 = 0.5;
const L2: f64 = 1e-4;

/// Pair feature: per-dimension squared difference followed by the L2 distance.
pub fn edge_feature(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut f: Vec<f64> = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).collect();
    let dist = f.iter().sum::<f64>().sqrt();
    f.push(dist);
    f
}

/// Binary logistic regression on standardised features, fitted by
/// full-batch gradient descent with a small L2 penalty.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticRegression {
    mean: Vec<f64>,
    scale: Vec<f64>,
    weights: Vec<f64>,
    bias: f64,
}

impl LogisticRegression {
    pub fn fit(features: &[Vec<f64>], labels: &[bool]) -> Self {
        assert_eq!(features.len(), labels.len());
        assert!(!features.is_empty());
        let n = features.len() as f64;
        let dim = features[0].len();

        let mut mean = vec![0.0; dim];
        for f in features {
            for (m, x) in mean.iter_mut().zip(f) {
                *m += x / n;
            }
        }
        let mut scale = vec![0.0; dim];
        for f in features {
            for ((s, x), m) in scale.iter_mut().zip(f).zip(&mean) {
                *s += (x - m) * (x - m) / n;
            }
        }
        for s in &mut scale {
            *s = if *s > 1e-24 { s.sqrt() } else { 1.0 };
        }

        let xs: Vec<Vec<f64>> = features.iter().map(|f| standardise(f, &mean, &scale)).collect();
        let ys: Vec<f64> = labels.iter().map(|&l| if l { 1.0 } else { 0.0 }).collect();

        let mut weights = vec![0.0; dim];
        let mut bias = 0.0;
        let mut grad = vec![0.0; dim];
        for _ in 0..GD_ITERATIONS {
            grad.fill(0.0);
            let mut grad_bias = 0.0;
            for (x, y) in xs.iter().zip(&ys) {
                let z = bias + x.iter().zip(&weights).map(|(a, w)| a * w).sum::<f64>();
                let err = sigmoid(z) - y;
                grad_bias += err;
                for (g, a) in grad.iter_mut().zip(x) {
                    *g += err * a;
                }
            }
            bias -= GD_STEP * grad_bias / n;
            for (w, g) in weights.iter_mut().zip(&grad) {
                *w -= GD_STEP * (g / n + L2 * *w);
            }
        }
        LogisticRegression {
            mean,
            scale,
            weights,
            bias,
        }
    }

    /// Probability of the positive class.
    pub fn predict(&self, feature: &[f64]) -> f64 {
        let x = standardise(feature, &self.mean, &self.scale);
        sigmoid(self.bias + x.iter().zip(&self.weights).map(|(a, w)| a * w).sum::<f64>())
    }
}

fn standardise(f: &[f64], mean: &[f64], scale: &[f64]) -> Vec<f64> {
    f.iter().zip(mean).zip(scale).map(|((x, m), s)| (x - m) / s).collect()
}

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z.clamp(-500.0, 500.0)).exp())
}

/// Stratified k-fold cross-validation of logistic regression; returns the
/// held-out AUC of every fold.
///
/// Positives and negatives are shuffled separately and dealt round-robin
/// into folds, so every fold holds both classes. The fold count shrinks to
/// the size of the smaller class when that is below `folds`.
pub fn cross_validated_auc(features: &[Vec<f64>], labels: &[bool], folds: usize, seed: u64) -> Result<Vec<f64>> {
    let mut pos: Vec<usize> = (0..labels.len()).filter(|&i| labels[i]).collect();
    let mut neg: Vec<usize> = (0..labels.len()).filter(|&i| !labels[i]).collect();
    let k = folds.min(pos.len()).min(neg.len());
    if k < 2 {
        return Err(Error::Evaluation(format!(
            "need at least two examples of each class, have {} positive and {} negative",
            pos.len(),
            neg.len()
        )));
    }
    let mut rng = seed::rng(seed);
    pos.shuffle(&mut rng);
    neg.shuffle(&mut rng);
    let mut fold_of = vec![0usize; labels.len()];
    for (j, &i) in pos.iter().enumerate() {
        fold_of[i] = j % k;
    }
    for (j, &i) in neg.iter().enumerate() {
        fold_of[i] = j % k;
    }

    let mut scores = Vec::with_capacity(k);
    for fold in 0..k {
        let (mut train_x, mut train_y) = (Vec::new(), Vec::new());
        let (mut test_x, mut test_y) = (Vec::new(), Vec::new());
        for i in 0..labels.len() {
            if fold_of[i] == fold {
                test_x.push(&features[i]);
                test_y.push(labels[i]);
            } else {
                train_x.push(features[i].clone());
                train_y.push(labels[i]);
            }
        }
        let model = LogisticRegression::fit(&train_x, &train_y);
        let predictions: Vec<f64> = test_x.iter().map(|f| model.predict(f)).collect();
        let value =
            auc(&predictions, &test_y).ok_or_else(|| Error::Evaluation(format!("fold {fold} holds a single class")))?;
        scores.push(value);
    }
    Ok(scores)
}

fn pair(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    (u.min(v), u.max(v))
}

/// Time-ordered link prediction.
///
/// Positives are the distinct pairs linked in `test` whose endpoints both
/// have training edges; an equal number of negatives is drawn uniformly
/// from training-node pairs linked in neither stream. Features come from
/// the last timestep's embeddings and are scored by 5-fold cross-validated
/// logistic regression.
pub fn link_prediction(
    embeddings: &EmbeddingSet,
    train: &EventStream,
    test: &EventStream,
    seed: u64,
) -> Result<EvalReport> {
    if test.is_empty() {
        return Err(Error::Evaluation("test stream is empty".into()));
    }
    if train.node_count() != embeddings.vocab_size() || test.node_count() != embeddings.vocab_size() {
        return Err(Error::Shape(format!(
            "embeddings cover {} nodes, streams cover {} and {}",
            embeddings.vocab_size(),
            train.node_count(),
            test.node_count()
        )));
    }
    let known = train.active_nodes();
    let known_set: HashSet<NodeId> = known.iter().copied().collect();

    let mut linked: HashSet<(NodeId, NodeId)> = train.edges().iter().map(|e| pair(e.source, e.target)).collect();
    let mut positives: Vec<(NodeId, NodeId)> = Vec::new();
    let mut seen = HashSet::new();
    for e in test.edges() {
        let p = pair(e.source, e.target);
        linked.insert(p);
        if known_set.contains(&p.0) && known_set.contains(&p.1) && seen.insert(p) {
            positives.push(p);
        }
    }
    if positives.is_empty() {
        return Err(Error::Evaluation(
            "no test edge joins two nodes seen in training".into(),
        ));
    }

    let mut rng = seed::rng(seed::named(seed, "negatives"));
    let mut negatives: Vec<(NodeId, NodeId)> = Vec::with_capacity(positives.len());
    let mut chosen = HashSet::new();
    let budget = positives.len().saturating_mul(100).max(10_000);
    for _ in 0..budget {
        if negatives.len() == positives.len() || known.len() < 2 {
            break;
        }
        let u = known[rng.random_range(0..known.len())];
        let v = known[rng.random_range(0..known.len())];
        if u == v {
            continue;
        }
        let p = pair(u, v);
        if !linked.contains(&p) && chosen.insert(p) {
            negatives.push(p);
        }
    }
    if negatives.len() < positives.len() {
        log::warn!(
            "only {} non-edges available for {} positives",
            negatives.len(),
            positives.len()
        );
    }

    let last = embeddings.timesteps() - 1;
    let mut features = Vec::with_capacity(positives.len() + negatives.len());
    let mut labels = Vec::with_capacity(features.capacity());
    for (pairs, label) in [(&positives, true), (&negatives, false)] {
        for &(u, v) in pairs {
            features.push(edge_feature(embeddings.vector(last, u), embeddings.vector(last, v)));
            labels.push(label);
        }
    }

    let folds = cross_validated_auc(&features, &labels, DEFAULT_FOLDS, seed::named(seed, "folds"))?;
    let mean = folds.iter().sum::<f64>() / folds.len() as f64;
    let mut report = EvalReport::new(Task::LinkPrediction, seed);
    report.metrics.insert("AUC".into(), mean);
    report.folds = folds;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feature_layout() {
        let f = edge_feature(&[1.0, 2.0], &[4.0, 6.0]);
        assert_eq!(f, vec![9.0, 16.0, 5.0]);
    }

    #[test]
    fn separable_features_give_perfect_auc() {
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for i in 0..20 {
            features.push(vec![0.0, 0.01 * i as f64]);
            labels.push(true);
            features.push(vec![1.0, 0.01 * i as f64]);
            labels.push(false);
        }
        let folds = cross_validated_auc(&features, &labels, 5, 1).unwrap();
        assert_eq!(folds.len(), 5);
        assert!(folds.iter().all(|&a| a == 1.0));
    }

    #[test]
    fn too_few_examples() {
        let features = vec![vec![0.0], vec![1.0], vec![2.0]];
        assert!(cross_validated_auc(&features, &[true, false, false], 5, 0).is_err());
    }

    #[test]
    fn fold_count_shrinks_to_minority_class() {
        let features: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        let labels: Vec<bool> = (0..10).map(|i| i < 3).collect();
        assert_eq!(cross_validated_auc(&features, &labels, 5, 0).unwrap().len(), 3);
    }

    #[test]
    fn classifier_learns_threshold() {
        let features: Vec<Vec<f64>> = (0..40).map(|i| vec![i as f64]).collect();
        let labels: Vec<bool> = (0..40).map(|i| i >= 20).collect();
        let model = LogisticRegression::fit(&features, &labels);
        assert!(model.predict(&[35.0]) > 0.9);
        assert!(model.predict(&[5.0]) < 0.1);
    }
}
