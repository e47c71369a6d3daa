//! JSON input for multi-image evaluation runs.
//!
//! The document holds two flat lists keyed by `image_id`:
//!
//! ```json
//! {
//!   "ground_truth": [
//!     {"image_id": "frame-1", "box": [0, 0, 10, 10]}
//!   ],
//!   "predictions": [
//!     {"image_id": "frame-1", "box": [0.5, 0, 10.5, 10], "score": 0.9}
//!   ]
//! }
//! ```
//!
//! Coordinates and scores are decimal text (JSON numbers or strings) and are
//! converted to exact rationals with no float round-trip: `0.1` really is
//! one tenth. Images are evaluated independently and the counts pooled, so
//! totals are micro-averaged.

use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use super::{greedy_match, BBox, DetectError, Detection, MatchResult};
use crate::batch;
use crate::exact::Rational;
use crate::metrics::{MetricReport, PartialCounts};

/// Why a dataset document was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    /// Malformed JSON or a shape mismatch. The message already names the
    /// line and column; the fields carry them for callers that need them.
    #[error("parse error: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    /// Structurally valid JSON holding an invalid value.
    #[error("invalid value at {context}: {message}")]
    Value { context: String, message: String },
}

impl DatasetError {
    fn value(context: impl fmt::Display, message: impl Into<String>) -> Self {
        DatasetError::Value {
            context: context.to_string(),
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for DatasetError {
    fn from(e: serde_json::Error) -> Self {
        DatasetError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDataset {
    ground_truth: Vec<RawGroundTruth>,
    predictions: Vec<RawPrediction>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroundTruth {
    image_id: String,
    #[serde(rename = "box")]
    bbox: [Value; 4],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrediction {
    image_id: String,
    #[serde(rename = "box")]
    bbox: [Value; 4],
    score: Value,
}

fn rational_from_value(v: &Value) -> Result<Rational, String> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(format!("expected a decimal number, found {other}")),
    };
    Rational::from_decimal_str(&text).map_err(|e| e.to_string())
}

fn bbox_from_values(raw: &[Value; 4], context: &str) -> Result<BBox, DatasetError> {
    let mut coords = Vec::with_capacity(4);
    for (i, v) in raw.iter().enumerate() {
        coords.push(
            rational_from_value(v)
                .map_err(|m| DatasetError::value(format!("{context}.box[{i}]"), m))?,
        );
    }
    let [x_min, y_min, x_max, y_max]: [Rational; 4] = coords.try_into().unwrap();
    BBox::new(x_min, y_min, x_max, y_max)
        .map_err(|e| DatasetError::value(format!("{context}.box"), e.to_string()))
}

/// Everything recorded for one image: its predictions and its ground truths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageScene {
    pub image_id: String,
    pub predictions: Vec<Detection>,
    pub ground_truths: Vec<BBox>,
}

/// A parsed evaluation input, grouped by image in first-appearance order
/// (ground-truth list first, then predictions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionDataset {
    images: Vec<ImageScene>,
}

impl DetectionDataset {
    pub fn from_json_str(text: &str) -> Result<Self, DatasetError> {
        let raw: RawDataset = serde_json::from_str(text)?;

        let mut images: Vec<ImageScene> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut scene_of = |images: &mut Vec<ImageScene>, id: &str| -> usize {
            *index.entry(id.to_string()).or_insert_with(|| {
                images.push(ImageScene {
                    image_id: id.to_string(),
                    predictions: Vec::new(),
                    ground_truths: Vec::new(),
                });
                images.len() - 1
            })
        };

        for (i, gt) in raw.ground_truth.iter().enumerate() {
            let context = format!("ground_truth[{i}]");
            let bbox = bbox_from_values(&gt.bbox, &context)?;
            let at = scene_of(&mut images, &gt.image_id);
            images[at].ground_truths.push(bbox);
        }
        for (i, pred) in raw.predictions.iter().enumerate() {
            let context = format!("predictions[{i}]");
            let bbox = bbox_from_values(&pred.bbox, &context)?;
            let score = rational_from_value(&pred.score)
                .map_err(|m| DatasetError::value(format!("{context}.score"), m))?;
            let detection = Detection::new(bbox, score)
                .map_err(|e| DatasetError::value(format!("{context}.score"), e.to_string()))?;
            let at = scene_of(&mut images, &pred.image_id);
            images[at].predictions.push(detection);
        }

        Ok(Self { images })
    }

    pub fn images(&self) -> &[ImageScene] {
        &self.images
    }
}

/// Pooled result of evaluating every image in a dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetEvaluation {
    pub counts: PartialCounts,
    pub report: MetricReport,
    pub per_image: Vec<(String, MatchResult)>,
}

/// Matches each image independently (concurrently when the `parallel`
/// feature is on), then folds counts in image order and reports
/// micro-averaged metrics.
pub fn evaluate_dataset(
    dataset: &DetectionDataset,
    iou_threshold: &Rational,
) -> Result<DatasetEvaluation, DetectError> {
    greedy_match(&[], &[], iou_threshold)?;

    let matched = batch::map(dataset.images(), |scene| {
        let m = greedy_match(&scene.predictions, &scene.ground_truths, iou_threshold)
            .expect("threshold already validated");
        (scene.image_id.clone(), m)
    });

    let (mut tp, mut fp, mut fn_) = (0u64, 0u64, 0u64);
    for (_, m) in &matched {
        tp += m.tp;
        fp += m.fp;
        fn_ += m.fn_;
    }
    let counts = PartialCounts::from_u64(tp, fp, fn_);
    Ok(DatasetEvaluation {
        report: MetricReport::from_partial(&counts),
        counts,
        per_image: matched,
    })
}
