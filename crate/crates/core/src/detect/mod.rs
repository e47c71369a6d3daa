//! Bounding-box detection evaluation: exact IoU, greedy matching, and the
//! TP/FP/FN counts that feed the metrics layer.
//!
//! True negatives never appear here. In open-world detection the negative
//! class (every box that correctly was not predicted) is unbounded, so
//! evaluation produces [`PartialCounts`] and an MCC marked not-computable.

mod dataset;

pub use dataset::{evaluate_dataset, DatasetError, DatasetEvaluation, DetectionDataset};

use thiserror::Error;

use crate::exact::Rational;
use crate::metrics::{MetricReport, PartialCounts};

/// Errors from box construction and matching.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectError {
    #[error("degenerate box: requires x_min < x_max and y_min < y_max")]
    InvalidBox,
    #[error("detection score must lie in [0, 1]")]
    InvalidScore,
    #[error("IoU threshold must satisfy 0 < threshold <= 1")]
    InvalidThreshold,
}

/// An axis-aligned box with exact rational pixel coordinates and positive
/// area.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BBox {
    x_min: Rational,
    y_min: Rational,
    x_max: Rational,
    y_max: Rational,
}

impl BBox {
    pub fn new(
        x_min: Rational,
        y_min: Rational,
        x_max: Rational,
        y_max: Rational,
    ) -> Result<Self, DetectError> {
        if x_min >= x_max || y_min >= y_max {
            return Err(DetectError::InvalidBox);
        }
        Ok(Self {
            x_min,
            y_min,
            x_max,
            y_max,
        })
    }

    pub fn from_i64(x_min: i64, y_min: i64, x_max: i64, y_max: i64) -> Result<Self, DetectError> {
        Self::new(
            Rational::from_int(x_min),
            Rational::from_int(y_min),
            Rational::from_int(x_max),
            Rational::from_int(y_max),
        )
    }

    pub fn x_min(&self) -> &Rational {
        &self.x_min
    }

    pub fn y_min(&self) -> &Rational {
        &self.y_min
    }

    pub fn x_max(&self) -> &Rational {
        &self.x_max
    }

    pub fn y_max(&self) -> &Rational {
        &self.y_max
    }

    pub fn area(&self) -> Rational {
        &(&self.x_max - &self.x_min) * &(&self.y_max - &self.y_min)
    }
}

/// A predicted box with a confidence score in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detection {
    pub bbox: BBox,
    score: Rational,
}

impl Detection {
    pub fn new(bbox: BBox, score: Rational) -> Result<Self, DetectError> {
        if score.is_negative() || score > Rational::one() {
            return Err(DetectError::InvalidScore);
        }
        Ok(Self { bbox, score })
    }

    pub fn score(&self) -> &Rational {
        &self.score
    }
}

/// Outcome of matching predictions against ground truths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchResult {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
    /// Matched `(prediction index, ground-truth index)` pairs; each index
    /// appears at most once.
    pub pairs: Vec<(usize, usize)>,
}

impl MatchResult {
    pub fn to_partial_counts(&self) -> PartialCounts {
        PartialCounts::from_u64(self.tp, self.fp, self.fn_)
    }
}

/// Exact intersection-over-union of two boxes, in `[0, 1]`.
pub fn iou(a: &BBox, b: &BBox) -> Rational {
    let ix = std::cmp::min(&a.x_max, &b.x_max) - std::cmp::max(&a.x_min, &b.x_min);
    let iy = std::cmp::min(&a.y_max, &b.y_max) - std::cmp::max(&a.y_min, &b.y_min);
    if !ix.is_positive() || !iy.is_positive() {
        return Rational::zero();
    }
    let inter = &ix * &iy;
    let union = &(&a.area() + &b.area()) - &inter;
    inter
        .checked_div(&union)
        .expect("union of valid boxes is positive")
}

/// Greedy one-to-one matching of predictions to ground truths.
///
/// Predictions are processed in descending score order, ties broken by
/// ascending input index. Each prediction claims the not-yet-matched ground
/// truth with the highest IoU, provided that IoU is at least the threshold;
/// IoU ties go to the lowest ground-truth index. The threshold comparison is
/// exact, so an IoU exactly at the threshold matches.
pub fn greedy_match(
    preds: &[Detection],
    gts: &[BBox],
    iou_threshold: &Rational,
) -> Result<MatchResult, DetectError> {
    if !iou_threshold.is_positive() || iou_threshold > &Rational::one() {
        return Err(DetectError::InvalidThreshold);
    }

    let mut order: Vec<usize> = (0..preds.len()).collect();
    order.sort_by(|&a, &b| preds[b].score.cmp(&preds[a].score).then_with(|| a.cmp(&b)));

    let mut gt_taken = vec![false; gts.len()];
    let mut pairs = Vec::new();
    for &pi in &order {
        let mut best: Option<(usize, Rational)> = None;
        for (gi, gt) in gts.iter().enumerate() {
            if gt_taken[gi] {
                continue;
            }
            let overlap = iou(&preds[pi].bbox, gt);
            if &overlap < iou_threshold {
                continue;
            }
            let better = match &best {
                None => true,
                Some((_, best_iou)) => overlap > *best_iou,
            };
            if better {
                best = Some((gi, overlap));
            }
        }
        if let Some((gi, _)) = best {
            gt_taken[gi] = true;
            pairs.push((pi, gi));
        }
    }
    pairs.sort_unstable();

    let tp = pairs.len() as u64;
    Ok(MatchResult {
        tp,
        fp: preds.len() as u64 - tp,
        fn_: gts.len() as u64 - tp,
        pairs,
    })
}

/// Matches and reports metrics in one step. MCC comes back not-computable:
/// these counts have no true negatives.
pub fn evaluate_detections(
    preds: &[Detection],
    gts: &[BBox],
    iou_threshold: &Rational,
) -> Result<MetricReport, DetectError> {
    let matched = greedy_match(preds, gts, iou_threshold)?;
    Ok(MetricReport::from_partial(&matched.to_partial_counts()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::MccStatus;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d)).unwrap()
    }

    fn unit_square_at(x: i64, y: i64) -> BBox {
        BBox::from_i64(x, y, x + 1, y + 1).unwrap()
    }

    fn det(bbox: BBox, score_n: i64, score_d: i64) -> Detection {
        Detection::new(bbox, rat(score_n, score_d)).unwrap()
    }

    #[test]
    fn box_validation() {
        assert!(BBox::from_i64(0, 0, 1, 1).is_ok());
        assert_eq!(BBox::from_i64(1, 0, 1, 1), Err(DetectError::InvalidBox));
        assert_eq!(BBox::from_i64(0, 2, 1, 1), Err(DetectError::InvalidBox));
        assert_eq!(
            Detection::new(unit_square_at(0, 0), rat(3, 2)),
            Err(DetectError::InvalidScore)
        );
        assert_eq!(
            Detection::new(unit_square_at(0, 0), rat(-1, 2)),
            Err(DetectError::InvalidScore)
        );
    }

    #[test]
    fn iou_reference_values() {
        let a = unit_square_at(0, 0);
        assert_eq!(iou(&a, &a), Rational::one());
        assert_eq!(iou(&a, &unit_square_at(5, 5)), Rational::zero());
        // Unit squares offset by 1/2 horizontally: intersection 1/2, union
        // 3/2.
        let b = BBox::new(rat(1, 2), rat(0, 1), rat(3, 2), rat(1, 1)).unwrap();
        assert_eq!(iou(&a, &b), rat(1, 3));
        // Boxes sharing only an edge intersect with zero area.
        assert_eq!(iou(&a, &unit_square_at(1, 0)), Rational::zero());
    }

    #[test]
    fn matching_basics() {
        let gt = [unit_square_at(0, 0)];
        let preds = [det(unit_square_at(0, 0), 9, 10)];
        let m = greedy_match(&preds, &gt, &rat(1, 2)).unwrap();
        assert_eq!((m.tp, m.fp, m.fn_), (1, 0, 0));
        assert_eq!(m.pairs, vec![(0, 0)]);

        let m = greedy_match(
            &[],
            &[unit_square_at(0, 0), unit_square_at(3, 3)],
            &rat(1, 2),
        )
        .unwrap();
        assert_eq!((m.tp, m.fp, m.fn_), (0, 0, 2));
    }

    #[test]
    fn higher_score_wins_contested_ground_truth() {
        let gt = [unit_square_at(0, 0)];
        let preds = [
            det(unit_square_at(0, 0), 1, 2),
            det(unit_square_at(0, 0), 9, 10),
        ];
        let m = greedy_match(&preds, &gt, &rat(1, 2)).unwrap();
        assert_eq!((m.tp, m.fp, m.fn_), (1, 1, 0));
        assert_eq!(m.pairs, vec![(1, 0)]);
    }

    #[test]
    fn score_ties_break_by_input_index() {
        let gt = [unit_square_at(0, 0)];
        let preds = [
            det(unit_square_at(0, 0), 1, 2),
            det(unit_square_at(0, 0), 1, 2),
        ];
        let m = greedy_match(&preds, &gt, &rat(1, 2)).unwrap();
        assert_eq!(m.pairs, vec![(0, 0)]);
    }

    #[test]
    fn iou_ties_break_by_ground_truth_index() {
        let gt = [unit_square_at(0, 0), unit_square_at(0, 0)];
        let preds = [det(unit_square_at(0, 0), 1, 2)];
        let m = greedy_match(&preds, &gt, &rat(1, 2)).unwrap();
        assert_eq!(m.pairs, vec![(0, 0)]);
        assert_eq!((m.tp, m.fp, m.fn_), (1, 0, 1));
    }

    #[test]
    fn threshold_boundary_is_inclusive() {
        // IoU of these boxes is exactly 1/3.
        let a = unit_square_at(0, 0);
        let b = BBox::new(rat(1, 2), rat(0, 1), rat(3, 2), rat(1, 1)).unwrap();
        let preds = [Detection::new(b, rat(1, 1)).unwrap()];
        let gts = [a];
        let at = greedy_match(&preds, &gts, &rat(1, 3)).unwrap();
        assert_eq!(at.tp, 1);
        let above = greedy_match(&preds, &gts, &rat(34, 100)).unwrap();
        assert_eq!(above.tp, 0);
    }

    #[test]
    fn threshold_validation() {
        let err = greedy_match(&[], &[], &rat(0, 1));
        assert_eq!(err, Err(DetectError::InvalidThreshold));
        assert_eq!(
            greedy_match(&[], &[], &rat(11, 10)),
            Err(DetectError::InvalidThreshold)
        );
        assert!(greedy_match(&[], &[], &rat(1, 1)).is_ok());
    }

    #[test]
    fn evaluation_report_examples() {
        // Perfect detection of 3 boxes.
        let gts = [
            unit_square_at(0, 0),
            unit_square_at(5, 0),
            unit_square_at(0, 5),
        ];
        let preds: Vec<Detection> = gts
            .iter()
            .map(|b| Detection::new(b.clone(), rat(1, 1)).unwrap())
            .collect();
        let report = evaluate_detections(&preds, &gts, &rat(1, 2)).unwrap();
        assert_eq!(report.ppv, Some(Rational::one()));
        assert_eq!(report.tpr, Some(Rational::one()));
        assert_eq!(report.f1, Some(Rational::one()));
        assert_eq!(report.fm.as_ref().unwrap().to_string(), "1");
        assert_eq!(report.mcc, MccStatus::NotComputable);

        // One matched, one spurious, one missed: counts (1,1,1).
        let gts = [unit_square_at(0, 0), unit_square_at(5, 5)];
        let preds = [
            det(unit_square_at(0, 0), 9, 10),
            det(unit_square_at(20, 20), 8, 10),
        ];
        let report = evaluate_detections(&preds, &gts, &rat(1, 2)).unwrap();
        assert_eq!(report.f1, Some(rat(1, 2)));
        assert_eq!(report.fm.as_ref().unwrap().to_string(), "1/2");

        // Nothing predicted, nothing to find.
        let report = evaluate_detections(&[], &[], &rat(1, 2)).unwrap();
        assert_eq!(report.ppv, None);
        assert_eq!(report.tpr, None);
        assert_eq!(report.f1, None);
        assert_eq!(report.fm, None);
    }

    // Independent re-statement of the matching policy: no sorting, just
    // repeated linear scans picking the next (score, index) extremum.
    fn oracle_match(
        preds: &[Detection],
        gts: &[BBox],
        threshold: &Rational,
    ) -> Vec<(usize, usize)> {
        let mut done = vec![false; preds.len()];
        let mut taken = vec![false; gts.len()];
        let mut pairs = Vec::new();
        loop {
            let mut next: Option<usize> = None;
            for i in 0..preds.len() {
                if done[i] {
                    continue;
                }
                next = match next {
                    None => Some(i),
                    Some(j) if preds[i].score > preds[j].score => Some(i),
                    keep => keep,
                };
            }
            let Some(pi) = next else { break };
            done[pi] = true;
            let mut best_gi = None;
            let mut best = rat(-1, 1);
            for gi in (0..gts.len()).rev() {
                if taken[gi] {
                    continue;
                }
                let v = iou(&preds[pi].bbox, &gts[gi]);
                if &v >= threshold && v >= best {
                    best = v;
                    best_gi = Some(gi);
                }
            }
            if let Some(gi) = best_gi {
                taken[gi] = true;
                pairs.push((pi, gi));
            }
        }
        pairs.sort_unstable();
        pairs
    }

    fn arb_box() -> impl Strategy<Value = BBox> {
        (0i64..6, 0i64..6, 1i64..5, 1i64..5)
            .prop_map(|(x, y, w, h)| BBox::from_i64(x, y, x + w, y + h).unwrap())
    }

    fn arb_detection() -> impl Strategy<Value = Detection> {
        (arb_box(), 0i64..=10).prop_map(|(b, s)| Detection::new(b, rat(s, 10)).unwrap())
    }

    proptest! {
        #[test]
        fn iou_is_symmetric_and_bounded(a in arb_box(), b in arb_box()) {
            let ab = iou(&a, &b);
            prop_assert_eq!(ab.clone(), iou(&b, &a));
            prop_assert!(!ab.is_negative());
            prop_assert!(ab <= Rational::one());
            prop_assert_eq!(iou(&a, &a), Rational::one());
        }

        #[test]
        fn match_counts_conserve(
            preds in proptest::collection::vec(arb_detection(), 0..6),
            gts in proptest::collection::vec(arb_box(), 0..6),
        ) {
            let m = greedy_match(&preds, &gts, &rat(1, 2)).unwrap();
            prop_assert_eq!(m.tp + m.fp, preds.len() as u64);
            prop_assert_eq!(m.tp + m.fn_, gts.len() as u64);
            prop_assert_eq!(m.tp as usize, m.pairs.len());
            let mut seen_p: Vec<usize> = m.pairs.iter().map(|p| p.0).collect();
            let mut seen_g: Vec<usize> = m.pairs.iter().map(|p| p.1).collect();
            seen_p.dedup();
            seen_g.sort_unstable();
            seen_g.dedup();
            prop_assert_eq!(seen_p.len(), m.pairs.len());
            prop_assert_eq!(seen_g.len(), m.pairs.len());
        }

        #[test]
        fn matches_brute_force_oracle(
            preds in proptest::collection::vec(arb_detection(), 0..6),
            gts in proptest::collection::vec(arb_box(), 0..6),
        ) {
            let m = greedy_match(&preds, &gts, &rat(1, 2)).unwrap();
            prop_assert_eq!(m.pairs, oracle_match(&preds, &gts, &rat(1, 2)));
        }

        #[test]
        fn distinct_scores_make_order_irrelevant(
            boxes in proptest::collection::vec((arb_box(), arb_box()), 1..5),
        ) {
            // Build predictions with strictly distinct scores, then reverse
            // the input order: counts must not change.
            let gts: Vec<BBox> = boxes.iter().map(|(g, _)| g.clone()).collect();
            let preds: Vec<Detection> = boxes
                .iter()
                .enumerate()
                .map(|(i, (_, p))| Detection::new(p.clone(), rat(i as i64 + 1, boxes.len() as i64 + 1)).unwrap())
                .collect();
            let forward = greedy_match(&preds, &gts, &rat(1, 2)).unwrap();
            let reversed: Vec<Detection> = preds.iter().rev().cloned().collect();
            let backward = greedy_match(&reversed, &gts, &rat(1, 2)).unwrap();
            prop_assert_eq!((forward.tp, forward.fp, forward.fn_), (backward.tp, backward.fp, backward.fn_));
        }
    }
}
