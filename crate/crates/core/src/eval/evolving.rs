use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::metrics::{average_precision, mean_reciprocal_rank, top_k};
use super::{EvalReport, Task};
use crate::dbe::EmbeddingSet;
use crate::error::{Error, Result};
use crate::NodeId;

/// Share of nodes flagged active per timestep, and evolving overall.
pub const ACTIVE_FRACTION: f64 = 0.10;

/// `ceil(ACTIVE_FRACTION · n)`.
pub fn active_quota(n: usize) -> usize {
    // Shave floating-point noise so that e.g. 10% of 50 is exactly 5.
    ((n as f64 * ACTIVE_FRACTION) - 1e-9).ceil().max(0.0) as usize
}

/// Displacement rankings of every timestep transition and the resulting
/// evolving-node ranking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActivityRanking {
    /// For transition `t -> t+1` (zero based `t`), nodes present at both
    /// ends sorted by descending displacement, ties by ascending id.
    pub per_timestep: Vec<Vec<(NodeId, f64)>>,
    /// The first `ceil(10%)` nodes of every per-timestep ranking.
    pub active_sets: Vec<Vec<NodeId>>,
    /// Every node ranked in at least one transition, sorted by descending
    /// active-timestep count, then descending summed displacement, then id.
    pub evolving_ranking: Vec<NodeId>,
    /// Active-timestep count per vocabulary node.
    pub active_counts: Vec<usize>,
    /// Displacement summed over the transitions where the node was ranked.
    pub summed_displacement: Vec<f64>,
}

impl ActivityRanking {
    /// The top `ceil(10%)` of the evolving ranking.
    pub fn evolving_nodes(&self) -> &[NodeId] {
        &self.evolving_ranking[..active_quota(self.evolving_ranking.len())]
    }

    pub fn is_active(&self, t: usize, node: NodeId) -> bool {
        self.active_sets.get(t).is_some_and(|set| set.contains(&node))
    }
}

/// Ranks nodes by how far their embedding moves between adjacent timesteps.
pub fn detect_evolving(embeddings: &EmbeddingSet) -> Result<ActivityRanking> {
    let steps = embeddings.timesteps();
    if steps < 2 {
        return Err(Error::Evaluation(
            "evolving-node detection needs at least two timesteps".into(),
        ));
    }
    let vocab = embeddings.vocab_size();
    let mut active_counts = vec![0usize; vocab];
    let mut summed = vec![0.0; vocab];
    let mut ranked = vec![false; vocab];
    let mut per_timestep = Vec::with_capacity(steps - 1);
    let mut active_sets = Vec::with_capacity(steps - 1);

    for t in 0..steps - 1 {
        let mut row: Vec<(NodeId, f64)> = embeddings
            .present(t)
            .iter()
            .copied()
            .filter(|&g| embeddings.is_present(t + 1, g))
            .map(|g| (g, embeddings.displacement(t, g)))
            .collect();
        row.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        for &(g, d) in &row {
            ranked[g as usize] = true;
            summed[g as usize] += d;
        }
        let active: Vec<NodeId> = row[..active_quota(row.len())].iter().map(|&(g, _)| g).collect();
        for &g in &active {
            active_counts[g as usize] += 1;
        }
        per_timestep.push(row);
        active_sets.push(active);
    }

    let mut evolving_ranking: Vec<NodeId> = (0..vocab as NodeId).filter(|&g| ranked[g as usize]).collect();
    evolving_ranking.sort_by(|&a, &b| {
        let (ia, ib) = (a as usize, b as usize);
        active_counts[ib]
            .cmp(&active_counts[ia])
            .then(summed[ib].total_cmp(&summed[ia]))
            .then(a.cmp(&b))
    });

    Ok(ActivityRanking {
        per_timestep,
        active_sets,
        evolving_ranking,
        active_counts,
        summed_displacement: summed,
    })
}

/// MAP, MRR and TOP-K of the evolving ranking against the planted set.
/// `k` defaults to the size of the ground truth.
pub fn ranking_metrics(ranking: &ActivityRanking, ground_truth: &[NodeId], k: Option<usize>) -> Result<EvalReport> {
    if ground_truth.is_empty() {
        return Err(Error::Evaluation("ground truth is empty".into()));
    }
    let order = &ranking.evolving_ranking;
    if order.is_empty() {
        return Err(Error::Evaluation("ranking is empty".into()));
    }
    let relevant: HashSet<NodeId> = ground_truth.iter().copied().collect();
    let k = k.unwrap_or(relevant.len());
    let mut report = EvalReport::new(Task::EvolvingDetection, 0);
    report.metrics.insert("MAP".into(), average_precision(order, &relevant));
    report
        .metrics
        .insert("MRR".into(), mean_reciprocal_rank(order, &relevant));
    report.metrics.insert("TOPK".into(), top_k(order, &relevant, k));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dbe::Matrix;

    fn constant(vocab: usize, steps: usize) -> EmbeddingSet {
        let m = Matrix::from_vec(vocab, 2, (0..vocab * 2).map(|i| i as f64).collect());
        EmbeddingSet::new(vec![m; steps], Matrix::zeros(vocab, 2)).unwrap()
    }

    #[test]
    fn quota_uses_ceiling() {
        assert_eq!(active_quota(0), 0);
        assert_eq!(active_quota(1), 1);
        assert_eq!(active_quota(10), 1);
        assert_eq!(active_quota(11), 2);
        assert_eq!(active_quota(50), 5);
        assert_eq!(active_quota(500), 50);
    }

    #[test]
    fn zero_motion_falls_back_to_id_order() {
        let r = detect_evolving(&constant(12, 3)).unwrap();
        assert_eq!(r.per_timestep.len(), 2);
        assert!(r.per_timestep.iter().flatten().all(|&(_, d)| d == 0.0));
        assert_eq!(r.active_sets, vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(r.evolving_ranking[..3], [0, 1, 2]);
        assert_eq!(r.evolving_ranking.len(), 12);
    }

    #[test]
    fn dominant_mover_tops_everything() {
        let mut e = constant(8, 4);
        for t in 1..4 {
            let row = e.step_mut(t).row_mut(5);
            row[0] += 10.0 * t as f64;
        }
        let r = detect_evolving(&e).unwrap();
        for row in &r.per_timestep {
            assert_eq!(row[0].0, 5);
            assert_eq!(row[0].1, 10.0);
        }
        assert_eq!(r.evolving_ranking[0], 5);
        assert_eq!(r.active_counts[5], 3);
        assert_eq!(r.evolving_nodes(), &[5]);
    }

    #[test]
    fn absent_nodes_are_excluded() {
        let m = Matrix::zeros(3, 2);
        let e = EmbeddingSet::with_presence(
            vec![m.clone(), m.clone(), m],
            Matrix::zeros(3, 2),
            vec![vec![0, 1], vec![1, 2], vec![0, 1]],
        )
        .unwrap();
        let r = detect_evolving(&e).unwrap();
        let ids: Vec<Vec<NodeId>> = r
            .per_timestep
            .iter()
            .map(|row| row.iter().map(|&(g, _)| g).collect())
            .collect();
        assert_eq!(ids, vec![vec![1], vec![1]]);
        assert_eq!(r.evolving_ranking, vec![1]);
    }

    #[test]
    fn needs_two_timesteps() {
        assert!(detect_evolving(&constant(3, 1)).is_err());
    }

    #[test]
    fn metrics_on_ranking() {
        let mut e = constant(10, 2);
        e.step_mut(1).row_mut(7)[0] += 5.0;
        e.step_mut(1).row_mut(3)[0] += 4.0;
        let r = detect_evolving(&e).unwrap();
        let report = ranking_metrics(&r, &[7, 3], None).unwrap();
        assert_eq!(report.metric("TOPK"), Some(1.0));
        assert_eq!(report.metric("MAP"), Some(1.0));
        assert_eq!(report.metric("MRR"), Some(1.0));
        assert!(ranking_metrics(&r, &[], None).is_err());
    }
}
