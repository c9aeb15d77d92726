//! Dynamic Bernoulli embeddings over random-walk corpora.
//!
//! Every timestep `t` owns an embedding matrix `M_t`; all timesteps share a
//! single context matrix `alpha`. A walk position with centre node `g` and
//! context nodes `c_1..c_k` contributes
//!
//! ```text
//! log σ(y_g · Σ α_c) + Σ_{n ~ φ} log(1 − σ(y_n · Σ α_c))
//! ```
//!
//! to the objective, where the negatives `n` are drawn from the corpus
//! unigram distribution raised to 0.75. Gaussian priors tie `alpha` and
//! `M_1` to the origin (precision `lambda1`) and every `M_t` to `M_{t-1}`
//! (precision `lambda`).

mod config;
mod embeddings;
mod matrix;
pub mod objective;
mod sampler;
mod trainer;

pub use config::{Init, TrainConfig};
pub use embeddings::{init_embeddings, EmbeddingSet};
pub use matrix::Matrix;
pub use objective::{eta, gradient, loss, ContextWindow, Gradient, Objective};
pub use sampler::NegativeSampler;
pub use trainer::{train, TrainReport};
