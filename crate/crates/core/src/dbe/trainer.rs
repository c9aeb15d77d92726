use std::cell::Cell;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::TrainConfig;
use super::embeddings::{init_embeddings, EmbeddingSet};
use super::matrix::Matrix;
use super::objective::{context_of, log_sigmoid, sigmoid};
use super::sampler::NegativeSampler;
use crate::error::{Error, Result};
use crate::seed;
use crate::temporal_graph::DynamicNetwork;
use crate::walks::{unigram_counts, WalkSet};
use crate::NodeId;

/// Positions a worker processes before publishing its progress.
const PROGRESS_FLUSH: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    /// Objective after every epoch: data terms accumulated over the epoch
    /// plus the prior terms at its end.
    pub objective: Vec<f64>,
    pub positions_per_epoch: u64,
}

/// Row-major parameter storage updated through shared references.
trait Store: Sized {
    fn from_matrix(m: &Matrix) -> Self;
    fn cols(&self) -> usize;
    fn len(&self) -> usize;
    fn get(&self, k: usize) -> f64;
    fn set(&self, k: usize, v: f64);
    fn accumulate_row(&self, r: usize, out: &mut [f64]);
    fn add_row(&self, r: usize, scale: f64, src: &[f64]);
    fn dot_row(&self, r: usize, v: &[f64]) -> f64;
    /// `grad += g·row` followed by `row += step·ctx`, in one pass.
    fn scatter_row(&self, r: usize, g: f64, step: f64, ctx: &[f64], grad: &mut [f64]);

    fn to_matrix(&self) -> Matrix {
        let rows = self.len() / self.cols();
        Matrix::from_vec(rows, self.cols(), (0..self.len()).map(|k| self.get(k)).collect())
    }

    fn first_non_finite_row(&self) -> Option<usize> {
        (0..self.len())
            .position(|k| !self.get(k).is_finite())
            .map(|k| k / self.cols())
    }

    fn squared_norm(&self) -> f64 {
        (0..self.len()).map(|k| self.get(k).powi(2)).sum()
    }
}

/// Single-threaded storage; plain loads and stores that vectorise.
struct LocalMatrix {
    cols: usize,
    data: Vec<Cell<f64>>,
}

impl LocalMatrix {
    fn row(&self, r: usize) -> &[Cell<f64>] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

impl Store for LocalMatrix {
    fn from_matrix(m: &Matrix) -> Self {
        LocalMatrix {
            cols: m.cols(),
            data: m.as_slice().iter().copied().map(Cell::new).collect(),
        }
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn len(&self) -> usize {
        self.data.len()
    }

    fn get(&self, k: usize) -> f64 {
        self.data[k].get()
    }

    fn set(&self, k: usize, v: f64) {
        self.data[k].set(v);
    }

    fn accumulate_row(&self, r: usize, out: &mut [f64]) {
        for (o, c) in out.iter_mut().zip(self.row(r)) {
            *o += c.get();
        }
    }

    fn add_row(&self, r: usize, scale: f64, src: &[f64]) {
        for (c, s) in self.row(r).iter().zip(src) {
            c.set(c.get() + scale * s);
        }
    }

    fn dot_row(&self, r: usize, v: &[f64]) -> f64 {
        let row = self.row(r);
        let mut acc = [0.0; 8];
        let mut cells = row.chunks_exact(8);
        let mut values = v.chunks_exact(8);
        for (c, x) in cells.by_ref().zip(values.by_ref()) {
            for k in 0..8 {
                acc[k] += c[k].get() * x[k];
            }
        }
        let tail: f64 = cells
            .remainder()
            .iter()
            .zip(values.remainder())
            .map(|(c, x)| c.get() * x)
            .sum();
        acc.iter().sum::<f64>() + tail
    }

    fn scatter_row(&self, r: usize, g: f64, step: f64, ctx: &[f64], grad: &mut [f64]) {
        for ((c, x), cg) in self.row(r).iter().zip(ctx).zip(grad) {
            let y = c.get();
            *cg += g * y;
            c.set(y + step * x);
        }
    }
}

/// Row-major matrix of `f64` bit patterns updated with relaxed atomics.
///
/// Concurrent updates to the same row may be lost, which asynchronous SGD
/// tolerates.
struct SharedMatrix {
    cols: usize,
    data: Vec<AtomicU64>,
}

impl SharedMatrix {
    fn row(&self, r: usize) -> &[AtomicU64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

fn load(a: &AtomicU64) -> f64 {
    f64::from_bits(a.load(Ordering::Relaxed))
}

fn store(a: &AtomicU64, v: f64) {
    a.store(v.to_bits(), Ordering::Relaxed);
}

impl Store for SharedMatrix {
    fn from_matrix(m: &Matrix) -> Self {
        SharedMatrix {
            cols: m.cols(),
            data: m.as_slice().iter().map(|v| AtomicU64::new(v.to_bits())).collect(),
        }
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn len(&self) -> usize {
        self.data.len()
    }

    fn get(&self, k: usize) -> f64 {
        load(&self.data[k])
    }

    fn set(&self, k: usize, v: f64) {
        store(&self.data[k], v);
    }

    fn accumulate_row(&self, r: usize, out: &mut [f64]) {
        for (o, a) in out.iter_mut().zip(self.row(r)) {
            *o += load(a);
        }
    }

    fn add_row(&self, r: usize, scale: f64, src: &[f64]) {
        for (a, s) in self.row(r).iter().zip(src) {
            store(a, load(a) + scale * s);
        }
    }

    fn dot_row(&self, r: usize, v: &[f64]) -> f64 {
        self.row(r).iter().zip(v).map(|(a, x)| load(a) * x).sum()
    }

    fn scatter_row(&self, r: usize, g: f64, step: f64, ctx: &[f64], grad: &mut [f64]) {
        for ((a, x), cg) in self.row(r).iter().zip(ctx).zip(grad) {
            let y = load(a);
            *cg += g * y;
            store(a, y + step * x);
        }
    }
}

/// Implicit step on the quadratic priors.
///
/// Solves `(I + s·P) x = y` per node and dimension, where `P` is the
/// tridiagonal precision of the chain `M_1 .. M_T` (`lambda1` on `M_1`,
/// `lambda` on every consecutive difference). Unlike an explicit gradient
/// step this stays stable for any `s·lambda`.
struct PriorStep {
    pivots: Vec<f64>,
    upper: Vec<f64>,
    off: f64,
}

impl PriorStep {
    fn new(timesteps: usize, step: f64, config: &TrainConfig) -> Self {
        let (l1, l) = (config.lambda1, config.lambda);
        let diag: Vec<f64> = (0..timesteps)
            .map(|t| {
                let mut p = if t == 0 { l1 } else { 0.0 };
                if t > 0 {
                    p += l;
                }
                if t + 1 < timesteps {
                    p += l;
                }
                1.0 + step * p
            })
            .collect();
        let off = -step * l;
        let mut pivots = Vec::with_capacity(timesteps);
        let mut upper = Vec::with_capacity(timesteps);
        for t in 0..timesteps {
            let pivot = if t == 0 { diag[0] } else { diag[t] - off * upper[t - 1] };
            pivots.push(pivot);
            upper.push(off / pivot);
        }
        PriorStep { pivots, upper, off }
    }

    fn solve(&self, values: &mut [f64]) {
        let n = values.len();
        values[0] /= self.pivots[0];
        for t in 1..n {
            values[t] = (values[t] - self.off * values[t - 1]) / self.pivots[t];
        }
        for t in (0..n.saturating_sub(1)).rev() {
            values[t] -= self.upper[t] * values[t + 1];
        }
    }
}

struct Model<S> {
    steps: Vec<S>,
    alpha: S,
    dim: usize,
}

impl<S: Store> Model<S> {
    fn apply_priors(&self, step: f64, config: &TrainConfig) {
        let shrink = 1.0 / (1.0 + step * config.lambda1);
        for k in 0..self.alpha.len() {
            self.alpha.set(k, self.alpha.get(k) * shrink);
        }
        let chain = PriorStep::new(self.steps.len(), step, config);
        let mut values = vec![0.0; self.steps.len()];
        for k in 0..self.alpha.len() {
            for (v, m) in values.iter_mut().zip(&self.steps) {
                *v = m.get(k);
            }
            chain.solve(&mut values);
            for (v, m) in values.iter().zip(&self.steps) {
                m.set(k, *v);
            }
        }
    }

    fn prior_terms(&self, config: &TrainConfig) -> f64 {
        let mut total = -0.5 * config.lambda1 * (self.alpha.squared_norm() + self.steps[0].squared_norm());
        for t in 1..self.steps.len() {
            let (cur, prev) = (&self.steps[t], &self.steps[t - 1]);
            let drift: f64 = (0..cur.len()).map(|k| (cur.get(k) - prev.get(k)).powi(2)).sum();
            total -= 0.5 * config.lambda * drift;
        }
        total
    }
}

struct Pass<'a, S> {
    model: &'a Model<S>,
    config: &'a TrainConfig,
    sampler: &'a NegativeSampler,
    timestep: usize,
    processed: &'a AtomicU64,
    total: f64,
}

impl<S: Store> Pass<'_, S> {
    /// Runs SGD over the given walks; returns the accumulated data terms.
    fn run(&self, walks: &[&Vec<NodeId>], rng: &mut seed::Rng) -> f64 {
        let d = self.model.dim;
        let half = self.config.half_window();
        let m = &self.model.steps[self.timestep];
        let alpha = &self.model.alpha;

        let mut ctx = vec![0.0; d];
        let mut ctx_grad = vec![0.0; d];
        let mut context: Vec<NodeId> = Vec::with_capacity(2 * half);
        let mut objective = 0.0;
        let mut local = 0u64;
        let mut lr = self
            .config
            .learning_rate_at(self.processed.load(Ordering::Relaxed) as f64 / self.total);

        for walk in walks {
            if walk.len() < 2 {
                continue;
            }
            for i in 0..walk.len() {
                let center = walk[i];
                context.clear();
                context.extend(context_of(walk, i, half));
                ctx.fill(0.0);
                for &c in &context {
                    alpha.accumulate_row(c as usize, &mut ctx);
                }

                ctx_grad.fill(0.0);
                let eta = m.dot_row(center as usize, &ctx);
                let g = 1.0 - sigmoid(eta);
                objective += log_sigmoid(eta);
                m.scatter_row(center as usize, g, lr * g, &ctx, &mut ctx_grad);

                for _ in 0..self.config.negatives {
                    let Some(n) = self.sampler.sample(rng, center) else {
                        break;
                    };
                    let eta = m.dot_row(n as usize, &ctx);
                    let g = -sigmoid(eta);
                    objective += log_sigmoid(-eta);
                    m.scatter_row(n as usize, g, lr * g, &ctx, &mut ctx_grad);
                }

                for &c in &context {
                    alpha.add_row(c as usize, lr, &ctx_grad);
                }

                local += 1;
                if local == PROGRESS_FLUSH {
                    let done = self.processed.fetch_add(local, Ordering::Relaxed) + local;
                    local = 0;
                    lr = self.config.learning_rate_at(done as f64 / self.total);
                }
            }
        }
        self.processed.fetch_add(local, Ordering::Relaxed);
        objective
    }
}

/// Fits the per-timestep embeddings and the shared context matrix to the
/// walk corpora by SGD.
///
/// Within an epoch timesteps are visited in order and each timestep's walks
/// in a seeded random order. After each timestep's pass the prior terms take
/// an implicit step sized to that pass's share of the epoch.
/// With `config.workers == 1` the result is bit-reproducible.
pub fn train(network: &DynamicNetwork, walks: &[WalkSet], config: &TrainConfig) -> Result<(EmbeddingSet, TrainReport)> {
    config.validate()?;
    let timesteps = network.len();
    if walks.len() != timesteps {
        return Err(Error::InvalidConfig(format!(
            "{} walk sets for {timesteps} snapshots",
            walks.len()
        )));
    }
    let vocab = network.node_count();
    for (t, set) in walks.iter().enumerate() {
        if set.walks.iter().flatten().any(|&v| v as usize >= vocab) {
            return Err(Error::InvalidConfig(format!(
                "walks of timestep {} reference nodes outside the vocabulary",
                t + 1
            )));
        }
    }

    let init = init_embeddings(vocab, timesteps, config)?;
    let (steps, alpha, _) = init.into_parts();
    let counts = unigram_counts(walks, vocab);
    let samplers: Vec<NegativeSampler> = network
        .snapshots()
        .iter()
        .map(|g| NegativeSampler::new(&counts, g.nodes()))
        .collect();
    let positions_per_epoch: u64 = walks
        .iter()
        .flat_map(|s| &s.walks)
        .filter(|w| w.len() >= 2)
        .map(|w| w.len() as u64)
        .sum();
    let sgd_seed = seed::named(config.seed, "sgd");

    let (steps, alpha, objective) = if config.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot start workers: {e}")))?;
        let model = Model::<SharedMatrix>::new(&steps, &alpha, config.dim);
        let objective = fit(
            &model,
            walks,
            config,
            &samplers,
            positions_per_epoch,
            |pass, order, key| {
                let chunk = order.len().div_ceil(config.workers).max(1);
                pool.install(|| {
                    order
                        .par_chunks(chunk)
                        .enumerate()
                        .map(|(k, walks)| {
                            let mut rng = seed::rng(seed::derive(sgd_seed, &[key[0], key[1], k as u64 + 1]));
                            pass.run(walks, &mut rng)
                        })
                        .sum()
                })
            },
        )?;
        let (steps, alpha) = model.into_matrices();
        (steps, alpha, objective)
    } else {
        let model = Model::<LocalMatrix>::new(&steps, &alpha, config.dim);
        let objective = fit(
            &model,
            walks,
            config,
            &samplers,
            positions_per_epoch,
            |pass, order, key| {
                let mut rng = seed::rng(seed::derive(sgd_seed, &[key[0], key[1], 0]));
                pass.run(order, &mut rng)
            },
        )?;
        let (steps, alpha) = model.into_matrices();
        (steps, alpha, objective)
    };

    let present = network.snapshots().iter().map(|g| g.nodes().to_vec()).collect();
    let embeddings = EmbeddingSet::with_presence(steps, alpha, present)?;
    Ok((
        embeddings,
        TrainReport {
            objective,
            positions_per_epoch,
        },
    ))
}

impl<S: Store> Model<S> {
    fn new(steps: &[Matrix], alpha: &Matrix, dim: usize) -> Self {
        Model {
            steps: steps.iter().map(S::from_matrix).collect(),
            alpha: S::from_matrix(alpha),
            dim,
        }
    }

    fn into_matrices(self) -> (Vec<Matrix>, Matrix) {
        (self.steps.iter().map(S::to_matrix).collect(), self.alpha.to_matrix())
    }
}

/// The epoch loop shared by both storage kinds. `run_pass` processes one
/// timestep's shuffled walks, keyed by `[epoch, timestep]`, and returns
/// their data terms.
fn fit<S: Store>(
    model: &Model<S>,
    walks: &[WalkSet],
    config: &TrainConfig,
    samplers: &[NegativeSampler],
    positions_per_epoch: u64,
    run_pass: impl Fn(&Pass<'_, S>, &[&Vec<NodeId>], [u64; 2]) -> f64,
) -> Result<Vec<f64>> {
    let timesteps = walks.len();
    let total = (positions_per_epoch * config.epochs as u64).max(1) as f64;
    let processed = AtomicU64::new(0);
    let sgd_seed = seed::named(config.seed, "sgd");

    let mut objective = Vec::with_capacity(config.epochs);
    for epoch in 0..config.epochs {
        let mut data_terms = 0.0;
        for (t, set) in walks.iter().enumerate() {
            let mut order: Vec<&Vec<NodeId>> = set.walks.iter().collect();
            order.shuffle(&mut seed::rng(seed::derive(sgd_seed, &[epoch as u64, t as u64])));
            let pass = Pass {
                model,
                config,
                sampler: &samplers[t],
                timestep: t,
                processed: &processed,
                total,
            };
            let before = processed.load(Ordering::Relaxed);
            data_terms += run_pass(&pass, &order, [epoch as u64, t as u64]);
            let after = processed.load(Ordering::Relaxed);

            // The priors take their share of the epoch after every pass, at
            // the pass's mean learning rate, so the timesteps never drift
            // apart for long.
            let share = (after - before) as f64 / positions_per_epoch.max(1) as f64;
            let mid = (before + after) as f64 / 2.0 / total;
            model.apply_priors(share * config.learning_rate_at(mid), config);

            let bad = model.steps[t]
                .first_non_finite_row()
                .or_else(|| model.alpha.first_non_finite_row());
            if let Some(row) = bad {
                return Err(Error::NumericFailure {
                    epoch: epoch + 1,
                    timestep: t + 1,
                    row,
                    learning_rate: config.learning_rate_at(processed.load(Ordering::Relaxed) as f64 / total),
                });
            }
        }

        let value = data_terms + model.prior_terms(config);
        if !value.is_finite() {
            return Err(Error::NumericFailure {
                epoch: epoch + 1,
                timestep: timesteps,
                row: 0,
                learning_rate: config.learning_rate_at((epoch + 1) as f64 / config.epochs as f64),
            });
        }
        log::debug!("epoch {}: objective {value:.6e}", epoch + 1);
        objective.push(value);
    }
    Ok(objective)
}
