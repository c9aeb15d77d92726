use rand_distr::{Distribution, StandardNormal};

use super::config::{Init, TrainConfig};
use super::matrix::{squared_distance, Matrix};
use crate::error::{Error, Result};
use crate::seed;
use crate::NodeId;

/// Per-timestep embedding matrices plus the shared context matrix.
///
/// All matrices cover the global vocabulary. `present[t]` lists the nodes
/// that have edges in timestep `t`; other rows exist but only ever receive
/// prior updates. Timesteps are zero based in this API.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSet {
    steps: Vec<Matrix>,
    alpha: Matrix,
    present: Vec<Vec<NodeId>>,
}

impl EmbeddingSet {
    /// Every node is marked present at every timestep.
    pub fn new(steps: Vec<Matrix>, alpha: Matrix) -> Result<Self> {
        let all: Vec<NodeId> = (0..alpha.rows() as NodeId).collect();
        let present = vec![all; steps.len()];
        Self::with_presence(steps, alpha, present)
    }

    pub fn with_presence(steps: Vec<Matrix>, alpha: Matrix, mut present: Vec<Vec<NodeId>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Shape("at least one timestep is required".into()));
        }
        for (t, m) in steps.iter().enumerate() {
            if m.rows() != alpha.rows() || m.cols() != alpha.cols() {
                return Err(Error::Shape(format!(
                    "timestep {} is {}x{}, context matrix is {}x{}",
                    t + 1,
                    m.rows(),
                    m.cols(),
                    alpha.rows(),
                    alpha.cols()
                )));
            }
        }
        if present.len() != steps.len() {
            return Err(Error::Shape(format!(
                "{} presence lists for {} timesteps",
                present.len(),
                steps.len()
            )));
        }
        for list in &mut present {
            list.sort_unstable();
            list.dedup();
            if list.last().is_some_and(|&v| v as usize >= alpha.rows()) {
                return Err(Error::Shape("presence list names a node outside the vocabulary".into()));
            }
        }
        Ok(EmbeddingSet { steps, alpha, present })
    }

    pub fn timesteps(&self) -> usize {
        self.steps.len()
    }

    pub fn dim(&self) -> usize {
        self.alpha.cols()
    }

    pub fn vocab_size(&self) -> usize {
        self.alpha.rows()
    }

    pub fn step(&self, t: usize) -> &Matrix {
        &self.steps[t]
    }

    pub fn step_mut(&mut self, t: usize) -> &mut Matrix {
        &mut self.steps[t]
    }

    pub fn steps(&self) -> &[Matrix] {
        &self.steps
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn alpha_mut(&mut self) -> &mut Matrix {
        &mut self.alpha
    }

    /// Embedding of `node` at timestep `t`.
    pub fn vector(&self, t: usize, node: NodeId) -> &[f64] {
        self.steps[t].row(node as usize)
    }

    pub fn present(&self, t: usize) -> &[NodeId] {
        &self.present[t]
    }

    pub fn is_present(&self, t: usize, node: NodeId) -> bool {
        self.present[t].binary_search(&node).is_ok()
    }

    /// `||y^(t+1) - y^(t)||`.
    pub fn displacement(&self, t: usize, node: NodeId) -> f64 {
        squared_distance(self.vector(t + 1, node), self.vector(t, node)).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.is_finite() && self.steps.iter().all(Matrix::is_finite)
    }

    pub(crate) fn into_parts(self) -> (Vec<Matrix>, Matrix, Vec<Vec<NodeId>>) {
        (self.steps, self.alpha, self.present)
    }
}

fn gaussian(matrix: &mut Matrix, sd: f64, rng: &mut seed::Rng) {
    for v in matrix.as_mut_slice() {
        let z: f64 = StandardNormal.sample(rng);
        *v += sd * z;
    }
}

/// Initialises `alpha` and `M_1` from `N(0, 1/lambda1)` and every later
/// `M_t` as `M_{t-1} + N(0, 1/lambda)`, or from pretrained matrices.
pub fn init_embeddings(vocab_size: usize, timesteps: usize, config: &TrainConfig) -> Result<EmbeddingSet> {
    if vocab_size == 0 || timesteps == 0 {
        return Err(Error::Shape(
            "vocabulary and timestep count must both be positive".into(),
        ));
    }
    config.validate()?;
    let d = config.dim;
    let mut rng = seed::rng(seed::named(config.seed, "init"));
    let prior_sd = config.lambda1.recip().sqrt();
    let drift_sd = config.lambda.recip().sqrt();

    let check = |m: &Matrix, what: &str| -> Result<()> {
        if m.rows() != vocab_size || m.cols() != d {
            return Err(Error::Shape(format!(
                "pretrained {what} is {}x{}, expected {vocab_size}x{d}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    };

    let (first, alpha) = match &config.init {
        Init::GaussianPrior => {
            let mut alpha = Matrix::zeros(vocab_size, d);
            gaussian(&mut alpha, prior_sd, &mut rng);
            let mut first = Matrix::zeros(vocab_size, d);
            gaussian(&mut first, prior_sd, &mut rng);
            (first, alpha)
        }
        Init::Pretrained { embedding, context } => {
            check(embedding, "embedding")?;
            let alpha = match context {
                Some(c) => {
                    check(c, "context")?;
                    c.clone()
                }
                None => {
                    let mut alpha = Matrix::zeros(vocab_size, d);
                    gaussian(&mut alpha, prior_sd, &mut rng);
                    alpha
                }
            };
            (embedding.clone(), alpha)
        }
    };

    let mut steps = Vec::with_capacity(timesteps);
    steps.push(first);
    for t in 1..timesteps {
        let mut next = steps[t - 1].clone();
        if matches!(config.init, Init::GaussianPrior) {
            gaussian(&mut next, drift_sd, &mut rng);
        }
        steps.push(next);
    }
    EmbeddingSet::new(steps, alpha)
}
