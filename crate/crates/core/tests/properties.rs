use std::collections::HashSet;

use dynnet::eval::metrics::{auc, average_precision, mean_reciprocal_rank, top_k};
use dynnet::temporal_graph::Schema;
use dynnet::{
    build_by_events, build_by_time, detect_evolving, ingest_edge_list, random_walks, train, EmbeddingSet, EventStream,
    Matrix, TemporalEdge, TrainConfig, WalkConfig,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;

/// Edge-list text over `nodes` ids with integer timestamps.
fn edge_list(nodes: u32) -> impl Strategy<Value = String> {
    prop::collection::vec((0..nodes, 0..nodes, 0u32..100, 1u32..4), 1..150).prop_map(|rows| {
        rows.into_iter()
            .map(|(u, v, t, w)| format!("{u} {v} {t} {w}\n"))
            .collect()
    })
}

fn has_edges(text: &str) -> bool {
    text.lines().any(|l| {
        let f: Vec<&str> = l.split_whitespace().collect();
        f[0] != f[1]
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn disjoint_windows_conserve_raw_edges(text in edge_list(15).prop_filter("edges", |t| has_edges(t)), k in 1usize..10, w in 1u32..30) {
        let stream = ingest_edge_list(text.as_bytes(), &Schema::default()).unwrap();
        let by_events = build_by_events(&stream, k, k).unwrap();
        let raw: usize = by_events.snapshots().iter().map(|s| s.raw_edge_count()).sum();
        prop_assert_eq!(raw, stream.len());
        let by_time = build_by_time(&stream, f64::from(w), f64::from(w)).unwrap();
        let raw: usize = by_time.snapshots().iter().map(|s| s.raw_edge_count()).sum();
        prop_assert_eq!(raw, stream.len());
    }

    #[test]
    fn collapsed_weights_sum_parallel_edges(text in edge_list(6).prop_filter("edges", |t| has_edges(t))) {
        let stream = ingest_edge_list(text.as_bytes(), &Schema::default()).unwrap();
        let net = build_by_events(&stream, stream.len(), stream.len()).unwrap();
        let g = &net.snapshots()[0];
        let total: f64 = g.edges().map(|(_, _, w)| w).sum();
        let input: f64 = stream.edges().iter().map(|e| e.weight).sum();
        prop_assert!((total - input).abs() < 1e-9);
    }

    #[test]
    fn construction_is_deterministic(text in edge_list(10).prop_filter("edges", |t| has_edges(t)), k in 1usize..6) {
        let a = ingest_edge_list(text.as_bytes(), &Schema::default()).unwrap();
        let b = ingest_edge_list(text.as_bytes(), &Schema::default()).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(build_by_events(&a, 2 * k, k).unwrap(), build_by_events(&b, 2 * k, k).unwrap());
    }

    #[test]
    fn walks_are_reproducible_and_start_from_every_connected_node(text in edge_list(10).prop_filter("edges", |t| has_edges(t)), seed in any::<u64>()) {
        let stream = ingest_edge_list(text.as_bytes(), &Schema::default()).unwrap();
        let net = build_by_events(&stream, 8, 4).unwrap();
        let cfg = WalkConfig { walks_per_node: 3, walk_length: 12 };
        let a = random_walks(&net, &cfg, seed).unwrap();
        prop_assert_eq!(&a, &random_walks(&net, &cfg, seed).unwrap());
        for (set, g) in a.iter().zip(net.snapshots()) {
            prop_assert_eq!(set.walks.len(), 3 * g.nodes().iter().filter(|&&v| g.degree(v) >= 1).count());
        }
    }

    #[test]
    fn auc_is_invariant_under_monotone_transforms(
        data in prop::collection::vec((-5.0f64..5.0, any::<bool>()), 2..60),
        scale in 0.1f64..10.0,
        shift in -3.0f64..3.0,
    ) {
        let scores: Vec<f64> = data.iter().map(|d| d.0).collect();
        let labels: Vec<bool> = data.iter().map(|d| d.1).collect();
        let base = auc(&scores, &labels);
        let transforms: [&dyn Fn(f64) -> f64; 3] = [
            &|x| scale * x + shift,
            &|x: f64| x.exp(),
            &|x: f64| x.powi(3) + x,
        ];
        for f in transforms {
            let mapped: Vec<f64> = scores.iter().map(|&x| f(x)).collect();
            prop_assert_eq!(base, auc(&mapped, &labels));
        }
    }

    #[test]
    fn ranking_metrics_are_one_exactly_when_truth_leads(n in 2usize..9, g in 1usize..8, seed in any::<u64>()) {
        let g = g.min(n - 1).max(1);
        let mut ranking: Vec<usize> = (0..n).collect();
        ranking.shuffle(&mut dynnet::seed::rng(seed));
        let relevant: HashSet<usize> = (0..g).collect();
        let leads = ranking[..g].iter().all(|x| relevant.contains(x));
        prop_assert_eq!(average_precision(&ranking, &relevant) == 1.0, leads);
        prop_assert_eq!(top_k(&ranking, &relevant, g) == 1.0, leads);
        prop_assert_eq!(mean_reciprocal_rank(&ranking, &relevant) == 1.0, leads);
    }
}

/// Orthogonal matrix from Gram-Schmidt on Gaussian columns.
fn random_orthogonal(dim: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand_distr::{Distribution, StandardNormal};
    let mut rng = dynnet::seed::rng(seed);
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

fn rotate(m: &Matrix, q: &[Vec<f64>]) -> Matrix {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for (i, qi) in q.iter().enumerate() {
            out.set(r, i, qi.iter().zip(m.row(r)).map(|(a, b)| a * b).sum());
        }
    }
    out
}

#[test]
fn detection_is_invariant_under_rotations() {
    use rand_distr::{Distribution, StandardNormal};
    let (vocab, dim, steps) = (40, 6, 4);
    for seed in 0..5u64 {
        let mut rng = dynnet::seed::rng(100 + seed);
        let mats: Vec<Matrix> = (0..steps)
            .map(|_| {
                Matrix::from_vec(
                    vocab,
                    dim,
                    (0..vocab * dim).map(|_| StandardNormal.sample(&mut rng)).collect(),
                )
            })
            .collect();
        let q = random_orthogonal(dim, seed);
        let rotated: Vec<Matrix> = mats.iter().map(|m| rotate(m, &q)).collect();
        let a = detect_evolving(&EmbeddingSet::new(mats, Matrix::zeros(vocab, dim)).unwrap()).unwrap();
        let b = detect_evolving(&EmbeddingSet::new(rotated, Matrix::zeros(vocab, dim)).unwrap()).unwrap();
        assert_eq!(a.evolving_ranking, b.evolving_ranking);
        assert_eq!(a.active_sets, b.active_sets);
        for (x, y) in a.summed_displacement.iter().zip(&b.summed_displacement) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn single_snapshot_training_ignores_drift_precision() {
    let edges: Vec<TemporalEdge> = (0..30u32)
        .flat_map(|i| {
            [
                TemporalEdge::new(i % 10, (i + 1) % 10, 0.0),
                TemporalEdge::new(i % 10, (i + 3) % 10, 0.0),
            ]
        })
        .collect();
    let stream = EventStream::from_edges(edges, (0..10).collect()).unwrap();
    let net = build_by_events(&stream, stream.len(), stream.len()).unwrap();
    assert_eq!(net.len(), 1);
    let walks = random_walks(
        &net,
        &WalkConfig {
            walks_per_node: 4,
            walk_length: 10,
        },
        1,
    )
    .unwrap();
    let fit = |lambda: f64| {
        let cfg = TrainConfig {
            dim: 8,
            epochs: 2,
            lambda,
            seed: 5,
            ..TrainConfig::default()
        };
        train(&net, &walks, &cfg).unwrap()
    };
    let (a, ra) = fit(1.0);
    let (b, rb) = fit(1e6);
    assert_eq!(a, b);
    assert_eq!(ra.objective, rb.objective);
}
