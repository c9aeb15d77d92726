//! Uniform random walks over every snapshot.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;
use crate::temporal_graph::{DynamicNetwork, Snapshot};
use crate::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConfig {
    /// Walks started from every node of every snapshot (`r`).
    pub walks_per_node: usize,
    /// Maximum number of nodes in a walk (`L`).
    pub walk_length: usize,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            walks_per_node: 10,
            walk_length: 80,
        }
    }
}

impl WalkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.walks_per_node < 1 {
            return Err(Error::InvalidConfig("walks per node must be at least 1".into()));
        }
        if self.walk_length < 2 {
            return Err(Error::InvalidConfig("walk length must be at least 2".into()));
        }
        Ok(())
    }
}

/// Walk corpus of one timestep, ordered by root id then walk index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkSet {
    /// One based, like [`Snapshot::index`].
    pub timestep: usize,
    pub walks: Vec<Vec<NodeId>>,
    pub seed: u64,
}

impl WalkSet {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    pub fn positions(&self) -> usize {
        self.walks.iter().map(Vec::len).sum()
    }
}

/// Walks from `root`, stepping to a uniformly chosen distinct neighbour of
/// the current node. Stops early only if the current node has no neighbour.
pub fn walk_from<R: rand::Rng + ?Sized>(snapshot: &Snapshot, root: NodeId, length: usize, rng: &mut R) -> Vec<NodeId> {
    let mut walk = Vec::with_capacity(length);
    walk.push(root);
    let mut current = root;
    while walk.len() < length {
        let ns = snapshot.neighbors(current);
        if ns.is_empty() {
            break;
        }
        current = ns[rng.random_range(0..ns.len())];
        walk.push(current);
    }
    walk
}

/// Generates `r` walks of length `L` from every non-isolated node of every
/// snapshot.
///
/// Each root draws from its own stream derived from `(seed, timestep, root)`,
/// so the result does not depend on how roots are scheduled across threads.
pub fn random_walks(network: &DynamicNetwork, config: &WalkConfig, seed: u64) -> Result<Vec<WalkSet>> {
    config.validate()?;
    Ok(network
        .snapshots()
        .iter()
        .map(|snapshot| walk_snapshot(snapshot, config, seed))
        .collect())
}

fn walk_snapshot(snapshot: &Snapshot, config: &WalkConfig, seed: u64) -> WalkSet {
    let t = snapshot.index() as u64;
    let per_root: Vec<Vec<Vec<NodeId>>> = snapshot
        .nodes()
        .par_iter()
        .filter(|&&root| snapshot.degree(root) > 0)
        .map(|&root| {
            let mut rng = seed::rng(seed::derive(seed, &[t, u64::from(root)]));
            (0..config.walks_per_node)
                .map(|_| walk_from(snapshot, root, config.walk_length, &mut rng))
                .collect()
        })
        .collect();
    WalkSet {
        timestep: snapshot.index(),
        walks: per_root.into_iter().flatten().collect(),
        seed,
    }
}

/// Occurrence count of every node across all walk sets.
pub fn unigram_counts(walks: &[WalkSet], vocab_size: usize) -> Vec<u64> {
    let mut counts = vec![0u64; vocab_size];
    for set in walks {
        for walk in &set.walks {
            for &v in walk {
                counts[v as usize] += 1;
            }
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temporal_graph::{build_by_events, EventStream, TemporalEdge};

    fn network(pairs: &[(u32, u32)], n: usize) -> DynamicNetwork {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| TemporalEdge::new(u, v, i as f64))
            .collect();
        let stream = EventStream::from_edges(edges, (0..n as u64).collect()).unwrap();
        build_by_events(&stream, pairs.len(), pairs.len()).unwrap()
    }

    #[test]
    fn path_graph_bounces() {
        let net = network(&[(0, 1)], 2);
        let mut rng = seed::rng(1);
        let walk = walk_from(&net.snapshots()[0], 0, 3, &mut rng);
        assert_eq!(walk, vec![0, 1, 0]);
    }

    #[test]
    fn star_alternates_through_center() {
        let net = network(&[(0, 1), (0, 2), (0, 3), (0, 4)], 5);
        let mut rng = seed::rng(3);
        let walk = walk_from(&net.snapshots()[0], 2, 9, &mut rng);
        assert_eq!(walk.len(), 9);
        for (i, &v) in walk.iter().enumerate() {
            if i % 2 == 1 {
                assert_eq!(v, 0);
            } else {
                assert_ne!(v, 0);
            }
        }
    }

    #[test]
    fn isolated_root_truncates() {
        let net = network(&[(0, 1)], 3);
        let mut rng = seed::rng(0);
        assert_eq!(walk_from(&net.snapshots()[0], 2, 5, &mut rng), vec![2]);
    }

    #[test]
    fn count_and_canonical_order() {
        let net = network(&[(0, 1), (1, 2), (3, 4)], 6);
        let cfg = WalkConfig {
            walks_per_node: 3,
            walk_length: 4,
        };
        let sets = random_walks(&net, &cfg, 9).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].len(), 15);
        let roots: Vec<u32> = sets[0].walks.iter().map(|w| w[0]).collect();
        assert_eq!(roots, vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4]);
    }

    #[test]
    fn rejects_bad_config() {
        let net = network(&[(0, 1)], 2);
        let bad = WalkConfig {
            walks_per_node: 1,
            walk_length: 1,
        };
        assert!(random_walks(&net, &bad, 0).is_err());
        let bad = WalkConfig {
            walks_per_node: 0,
            walk_length: 5,
        };
        assert!(random_walks(&net, &bad, 0).is_err());
    }

    #[test]
    fn counts_cover_corpus() {
        let net = network(&[(0, 1), (1, 2)], 4);
        let sets = random_walks(
            &net,
            &WalkConfig {
                walks_per_node: 2,
                walk_length: 5,
            },
            4,
        )
        .unwrap();
        let counts = unigram_counts(&sets, 4);
        assert_eq!(counts.iter().sum::<u64>(), 3 * 2 * 5);
        assert_eq!(counts[3], 0);
    }
}
