//! Dynamic network embeddings.
//!
//! A temporal edge stream is sliced into (possibly overlapping) graph
//! snapshots, every snapshot is turned into a corpus of uniform random
//! walks, and one embedding matrix per snapshot is learned jointly with a
//! single shared context matrix by dynamic Bernoulli embeddings. Because
//! every timestep is scored against the same context vectors, the
//! per-timestep embeddings live in one vector space and can be compared
//! directly, without any post-hoc alignment.
//!
//! The crate also ships the evaluation side: time-ordered link prediction,
//! evolving-node detection with ranking metrics, trajectory export and a
//! synthetic generator of community networks with planted evolving nodes.
//!
//! ```no_run
//! use dynnet::{ingest_edge_list, build_by_events, random_walks, train, TrainConfig, WalkConfig};
//! use dynnet::temporal_graph::Schema;
//!
//! let text = std::fs::read_to_string("edges.txt").unwrap();
//! let stream = ingest_edge_list(text.as_bytes(), &Schema::default()).unwrap();
//! let network = build_by_events(&stream, 8000, 4000).unwrap();
//! let walks = random_walks(&network, &WalkConfig::default(), 42).unwrap();
//! let (embeddings, _report) = train(&network, &walks, &TrainConfig::default()).unwrap();
//! println!("{} timesteps", embeddings.timesteps());
//! ```

pub mod dbe;
pub mod error;
pub mod eval;
pub mod io;
pub mod seed;
pub mod synth;
pub mod temporal_graph;
pub mod walks;

pub use dbe::{train, EmbeddingSet, Init, Matrix, NegativeSampler, TrainConfig, TrainReport};
pub use error::{Error, Result};
pub use eval::{detect_evolving, export_trajectories, link_prediction, ranking_metrics, ActivityRanking, EvalReport};
pub use synth::{generate, sample_degrees, SynthConfig, SynthNetwork};
pub use temporal_graph::{
    build_by_events, build_by_time, ingest_edge_list, time_split, DynamicNetwork, EventStream, Snapshot, TemporalEdge,
};
pub use walks::{random_walks, WalkConfig, WalkSet};

/// Dense node identifier, an index into a [`EventStream`]'s vocabulary.
pub type NodeId = u32;
