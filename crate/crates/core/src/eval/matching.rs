use serde::{Deserialize, Serialize};

use crate::grid::Location;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchResult {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    /// `(true, detected)` pairs.
    pub matched_pairs: Vec<(Location, Location)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub precision: f64,
    pub tpr: f64,
    pub f1: f64,
}

/// One-to-one matching of detections to true anchors.
///
/// A pair is eligible when its Chebyshev distance is at most `w / 2` (real
/// division). Eligible pairs are taken greedily by ascending distance, then
/// truth index, then detection index.
pub fn match_detections(truth: &[Location], detected: &[Location], w: usize) -> MatchResult {
    let mut candidates = Vec::new();
    for (ti, &t) in truth.iter().enumerate() {
        for (di, &d) in detected.iter().enumerate() {
            let dist = t.chebyshev(d);
            if 2 * dist <= w {
                candidates.push((dist, ti, di));
            }
        }
    }
    candidates.sort_unstable();

    let mut truth_used = vec![false; truth.len()];
    let mut det_used = vec![false; detected.len()];
    let mut matched_pairs = Vec::new();
    for (_, ti, di) in candidates {
        if truth_used[ti] || det_used[di] {
            continue;
        }
        truth_used[ti] = true;
        det_used[di] = true;
        matched_pairs.push((truth[ti], detected[di]));
    }
    let tp = matched_pairs.len();
    MatchResult {
        true_positives: tp,
        false_positives: detected.len() - tp,
        false_negatives: truth.len() - tp,
        matched_pairs,
    }
}

/// Precision, true-positive rate and their harmonic mean; zero denominators give 0.
pub fn score(matched: &MatchResult, n_detections: usize, n_truth: usize) -> Scores {
    let tp = matched.true_positives as f64;
    let ratio = |den: usize| if den == 0 { 0.0 } else { tp / den as f64 };
    let precision = ratio(n_detections);
    let tpr = ratio(n_truth);
    let f1 = if precision + tpr > 0.0 {
        2.0 * precision * tpr / (precision + tpr)
    } else {
        0.0
    };
    Scores { precision, tpr, f1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn locs(v: &[(usize, usize)]) -> Vec<Location> {
        v.iter().map(|&(n, m)| Location::new(n, m)).collect()
    }

    #[test]
    fn identical_sets_score_one() {
        let t = locs(&[(0, 0), (5, 5), (9, 1)]);
        let r = match_detections(&t, &t, 3);
        assert_eq!((r.true_positives, r.false_positives, r.false_negatives), (3, 0, 0));
        assert_eq!(score(&r, 3, 3).f1, 1.0);
    }

    #[test]
    fn distance_two_is_too_far_for_w3() {
        let r = match_detections(&locs(&[(0, 0)]), &locs(&[(0, 2)]), 3);
        assert_eq!((r.true_positives, r.false_positives, r.false_negatives), (0, 1, 1));
        // w=4 admits distance 2
        assert_eq!(match_detections(&locs(&[(0, 0)]), &locs(&[(0, 2)]), 4).true_positives, 1);
    }

    #[test]
    fn nearest_truth_wins() {
        let r = match_detections(&locs(&[(0, 0), (0, 3)]), &locs(&[(0, 1)]), 3);
        assert_eq!(r.matched_pairs, vec![(Location::new(0, 0), Location::new(0, 1))]);
        assert_eq!((r.true_positives, r.false_positives, r.false_negatives), (1, 0, 1));
    }

    #[test]
    fn duplicate_detections_count_once() {
        let r = match_detections(&locs(&[(4, 4)]), &locs(&[(4, 4), (4, 5)]), 3);
        assert_eq!((r.true_positives, r.false_positives), (1, 1));
    }

    #[test]
    fn score_examples() {
        let m = |tp| MatchResult {
            true_positives: tp,
            false_positives: 0,
            false_negatives: 0,
            matched_pairs: vec![],
        };
        assert_eq!(score(&m(4), 4, 4), Scores { precision: 1.0, tpr: 1.0, f1: 1.0 });
        assert_eq!(score(&m(0), 4, 4), Scores { precision: 0.0, tpr: 0.0, f1: 0.0 });
        assert_eq!(score(&m(0), 0, 4).precision, 0.0);
        let s = score(&m(7), 8, 10);
        assert_eq!(s.precision, 0.875);
        assert_eq!(s.tpr, 0.7);
        // 2 * 0.875 * 0.7 / 1.575 = 7 / 9
        assert!((s.f1 - 0.7778).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn matching_is_one_to_one_and_scores_bounded(
            truth in prop::collection::vec((0usize..15, 0usize..15), 0..8),
            det in prop::collection::vec((0usize..15, 0usize..15), 0..8),
            w in 1usize..6,
        ) {
            let truth = locs(&truth);
            let det = locs(&det);
            let r = match_detections(&truth, &det, w);
            prop_assert_eq!(r.true_positives + r.false_negatives, truth.len());
            prop_assert_eq!(r.true_positives + r.false_positives, det.len());
            for (t, d) in &r.matched_pairs {
                prop_assert!(2 * t.chebyshev(*d) <= w);
            }
            let s = score(&r, det.len(), truth.len());
            for v in [s.precision, s.tpr, s.f1] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
            prop_assert_eq!(s.f1 == 0.0, r.true_positives == 0);
            if det.len() == truth.len() {
                prop_assert_eq!(s.precision, s.tpr);
            }
        }
    }
}
