//! Threshold-sweep ROC and AUC between an attention map and a gaze
//! histogram.
//!
//! The map binarizes with a strict `value > threshold` test. Per threshold,
//! `TPR = Σ(G⁺ ∘ C_bin) / ΣG⁺` weights pixels by gaze count, while
//! `FPR = Σ(G⁻ ∘ C_bin) / ΣG⁻` counts non-gazed pixels (G⁻ is the binary
//! negation of the histogram). The curve sweeps every distinct map value
//! plus a sentinel above the maximum; a final below-minimum point pins the
//! (1, 1) endpoint that a strict comparison can never reach on its own.
//! Duplicate (FPR, TPR) pairs collapse to the highest-threshold
//! representative. AUC is the trapezoidal integral over FPR, which for this
//! construction equals the count-weighted rank statistic with ties at half
//! weight.

use serde::Serialize;
use thiserror::Error;

use crate::field::{BinaryField, ScalarField};
use crate::gaze::{GazeHistogram, GazeStats};

/// One ROC sample.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct RocPoint {
    pub threshold: f64,
    pub fpr: f64,
    pub tpr: f64,
}

/// Evaluation result for one (snippet, gaze log) pair.
#[derive(Clone, PartialEq, Serialize, Debug)]
pub struct EvalReport {
    pub snippet_id: String,
    pub auc: f64,
    /// Thresholds swept: distinct map values plus the above-maximum
    /// sentinel.
    pub n_thresholds: usize,
    pub gaze_stats: GazeStats,
    #[serde(skip)]
    pub roc: Vec<RocPoint>,
}

#[derive(Error, Debug)]
pub enum RocError {
    #[error("degenerate gaze: both gazed and non-gazed pixels are required")]
    DegenerateGaze,
    #[error("grids disagree: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("malformed ROC curve: {0}")]
    MalformedCurve(String),
}

/// 1 where the map value strictly exceeds the threshold.
pub fn binarize(field: &ScalarField, threshold: f64) -> BinaryField {
    let bits = field.values().iter().map(|&v| u8::from(v > threshold)).collect();
    BinaryField::new(field.width(), field.height(), bits)
}

/// Gaze-count-weighted TPR and non-gazed FPR of one binarized map.
pub fn tpr_fpr(
    gplus: &GazeHistogram,
    gminus: &BinaryField,
    cbin: &BinaryField,
) -> Result<(f64, f64), RocError> {
    let dims = (gplus.width(), gplus.height());
    for (w, h) in [(gminus.width(), gminus.height()), (cbin.width(), cbin.height())] {
        if (w, h) != dims {
            return Err(RocError::DimensionMismatch(dims.0, dims.1, w, h));
        }
    }
    let pos: u64 = gplus.sum();
    let neg = gminus.count_ones() as u64;
    if pos == 0 || neg == 0 {
        return Err(RocError::DegenerateGaze);
    }
    let tp: u64 = gplus
        .counts()
        .iter()
        .zip(cbin.bits())
        .map(|(&c, &b)| c * b as u64)
        .sum();
    let fp: u64 = gminus
        .bits()
        .iter()
        .zip(cbin.bits())
        .map(|(&g, &b)| (g & b) as u64)
        .sum();
    Ok((tp as f64 / pos as f64, fp as f64 / neg as f64))
}

/// Full threshold sweep; points sorted by (FPR, TPR) with both endpoints
/// present.
pub fn roc_curve(field: &ScalarField, gplus: &GazeHistogram) -> Result<Vec<RocPoint>, RocError> {
    sweep(field, gplus).map(|(points, _)| points)
}

fn sweep(field: &ScalarField, gplus: &GazeHistogram) -> Result<(Vec<RocPoint>, usize), RocError> {
    if field.width() != gplus.width() || field.height() != gplus.height() {
        return Err(RocError::DimensionMismatch(
            field.width(),
            field.height(),
            gplus.width(),
            gplus.height(),
        ));
    }
    let pos_total: u64 = gplus.sum();
    let neg_total: u64 = gplus.counts().iter().filter(|&&c| c == 0).count() as u64;
    if pos_total == 0 || neg_total == 0 {
        return Err(RocError::DegenerateGaze);
    }

    // Pixels sorted by map value, descending; equal values form one
    // threshold class.
    let mut cells: Vec<(f64, u64, u64)> = field
        .values()
        .iter()
        .zip(gplus.counts())
        .map(|(&v, &c)| (v, c, u64::from(c == 0)))
        .collect();
    cells.sort_by(|a, b| b.0.total_cmp(&a.0));
    let vmax = cells[0].0;
    let vmin = cells[cells.len() - 1].0;

    let mut raw = vec![RocPoint { threshold: vmax + 1.0, fpr: 0.0, tpr: 0.0 }];
    let mut cum_tp = 0u64;
    let mut cum_fp = 0u64;
    let mut n_distinct = 0usize;
    let mut i = 0;
    while i < cells.len() {
        let v = cells[i].0;
        n_distinct += 1;
        // Strict `> v`: exactly the cells of the classes above this one.
        raw.push(RocPoint {
            threshold: v,
            fpr: cum_fp as f64 / neg_total as f64,
            tpr: cum_tp as f64 / pos_total as f64,
        });
        while i < cells.len() && cells[i].0 == v {
            cum_tp += cells[i].1;
            cum_fp += cells[i].2;
            i += 1;
        }
    }
    raw.push(RocPoint { threshold: vmin - 1.0, fpr: 1.0, tpr: 1.0 });

    let mut points: Vec<RocPoint> = Vec::with_capacity(raw.len());
    for p in raw {
        if points.last().map(|q| (q.fpr, q.tpr) == (p.fpr, p.tpr)).unwrap_or(false) {
            continue;
        }
        points.push(p);
    }
    Ok((points, n_distinct + 1))
}

/// Trapezoidal area under a sorted ROC curve with endpoints present.
pub fn auc(roc: &[RocPoint]) -> Result<f64, RocError> {
    if roc.len() < 2 {
        return Err(RocError::MalformedCurve("need at least two points".into()));
    }
    for w in roc.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.fpr < a.fpr || (b.fpr == a.fpr && b.tpr < a.tpr) {
            return Err(RocError::MalformedCurve("points not sorted by (fpr, tpr)".into()));
        }
        if b.tpr < a.tpr {
            return Err(RocError::MalformedCurve("tpr decreases along the curve".into()));
        }
    }
    let has = |x: f64, y: f64| roc.iter().any(|p| p.fpr == x && p.tpr == y);
    if !has(0.0, 0.0) || !has(1.0, 1.0) {
        return Err(RocError::MalformedCurve("endpoints (0,0) and (1,1) required".into()));
    }
    let mut area = 0.0;
    for w in roc.windows(2) {
        area += (w[1].fpr - w[0].fpr) * (w[0].tpr + w[1].tpr) / 2.0;
    }
    Ok(area)
}

/// Sweep, integrate, and package a report.
pub fn evaluate(
    field: &ScalarField,
    gplus: &GazeHistogram,
    gaze_stats: GazeStats,
    snippet_id: impl Into<String>,
) -> Result<EvalReport, RocError> {
    let (roc, n_thresholds) = sweep(field, gplus)?;
    let auc = auc(&roc)?;
    Ok(EvalReport { snippet_id: snippet_id.into(), auc, n_thresholds, gaze_stats, roc })
}
