//! Ranking and classification metrics.

use std::collections::HashSet;
use std::hash::Hash;

/// Average precision of `ranking` against the relevant set: the mean, over
/// all relevant items, of precision at the rank where each one appears
/// (relevant items missing from the ranking contribute zero).
pub fn average_precision<T: Eq + Hash>(ranking: &[T], relevant: &HashSet<T>) -> f64 {
    if relevant.is_empty() {
        return 0.0;
    }
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (i, item) in ranking.iter().enumerate() {
        if relevant.contains(item) {
            hits += 1;
            sum += hits as f64 / (i + 1) as f64;
        }
    }
    sum / relevant.len() as f64
}

/// Mean reciprocal rank of the relevant items, each ranked only against
/// the non-relevant items (filtered rank): an item preceded by `m`
/// non-relevant items scores `1 / (m + 1)`. Missing items score zero.
pub fn mean_reciprocal_rank<T: Eq + Hash>(ranking: &[T], relevant: &HashSet<T>) -> f64 {
    if relevant.is_empty() {
        return 0.0;
    }
    let mut misses = 0usize;
    let mut sum = 0.0;
    for item in ranking {
        if relevant.contains(item) {
            sum += 1.0 / (misses + 1) as f64;
        } else {
            misses += 1;
        }
    }
    sum / relevant.len() as f64
}

/// Fraction of the first `k` ranked items that are relevant.
pub fn top_k<T: Eq + Hash>(ranking: &[T], relevant: &HashSet<T>, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let hits = ranking.iter().take(k).filter(|x| relevant.contains(x)).count();
    hits as f64 / k as f64
}

/// Area under the ROC curve by the Mann–Whitney statistic; tied scores
/// receive averaged ranks. Returns `None` when either class is empty.
pub fn auc(scores: &[f64], labels: &[bool]) -> Option<f64> {
    assert_eq!(scores.len(), labels.len());
    let positives = labels.iter().filter(|&&l| l).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return None;
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        // ranks i+1 ..= j+1 share their mean
        let mean_rank = (i + j + 2) as f64 / 2.0;
        for &k in &order[i..=j] {
            if labels[k] {
                rank_sum += mean_rank;
            }
        }
        i = j + 1;
    }
    let p = positives as f64;
    Some((rank_sum - p * (p + 1.0) / 2.0) / (p * negatives as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[char]) -> HashSet<char> {
        items.iter().copied().collect()
    }

    #[test]
    fn average_precision_example() {
        let ap = average_precision(&['a', 'x', 'b', 'y'], &set(&['a', 'b']));
        assert!((ap - (1.0 + 2.0 / 3.0) / 2.0).abs() < 1e-12);
        assert!((ap - 0.8333).abs() < 1e-4);
    }

    #[test]
    fn perfect_ranking() {
        let r = ['a', 'b', 'x', 'y'];
        let gt = set(&['a', 'b']);
        assert_eq!(average_precision(&r, &gt), 1.0);
        assert_eq!(mean_reciprocal_rank(&r, &gt), 1.0);
        assert_eq!(top_k(&r, &gt, 2), 1.0);
    }

    #[test]
    fn reciprocal_rank_example() {
        let r = ['w', 'x', 'y', 'a'];
        assert_eq!(mean_reciprocal_rank(&r, &set(&['a'])), 0.25);
    }

    #[test]
    fn missing_items_score_zero() {
        let r = ['a', 'x'];
        let gt = set(&['a', 'b']);
        assert_eq!(average_precision(&r, &gt), 0.5);
        assert_eq!(mean_reciprocal_rank(&r, &gt), 0.5);
    }

    #[test]
    fn auc_basics() {
        assert_eq!(auc(&[0.9, 0.8, 0.1, 0.2], &[true, true, false, false]), Some(1.0));
        assert_eq!(auc(&[0.1, 0.2, 0.9, 0.8], &[true, true, false, false]), Some(0.0));
        assert_eq!(auc(&[0.5, 0.5], &[true, false]), Some(0.5));
        assert_eq!(auc(&[0.5, 0.7], &[true, true]), None);
    }
}
