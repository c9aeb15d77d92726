use super::evolving::detect_evolving;
use crate::dbe::EmbeddingSet;
use crate::error::{Error, Result};
use crate::NodeId;

/// One node at one timestep.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRow {
    pub node: NodeId,
    /// One based.
    pub t: usize,
    pub vector: Vec<f64>,
    /// Distance to the next timestep's embedding; `None` at the last timestep.
    pub displacement: Option<f64>,
    /// Whether the node is in the active set of the transition `t -> t+1`.
    pub active: bool,
}

/// Embedding trajectory of every requested node, `T` rows per node.
pub fn export_trajectories(embeddings: &EmbeddingSet, nodes: &[NodeId]) -> Result<Vec<TrajectoryRow>> {
    let unknown: Vec<u64> = nodes
        .iter()
        .filter(|&&g| g as usize >= embeddings.vocab_size())
        .map(|&g| u64::from(g))
        .collect();
    if !unknown.is_empty() {
        return Err(Error::UnknownNodes(unknown));
    }
    let steps = embeddings.timesteps();
    let ranking = if steps >= 2 {
        Some(detect_evolving(embeddings)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(nodes.len() * steps);
    for &g in nodes {
        for t in 0..steps {
            let last = t + 1 == steps;
            rows.push(TrajectoryRow {
                node: g,
                t: t + 1,
                vector: embeddings.vector(t, g).to_vec(),
                displacement: (!last).then(|| embeddings.displacement(t, g)),
                active: ranking.as_ref().is_some_and(|r| r.is_active(t, g)),
            });
        }
    }
    Ok(rows)
}
