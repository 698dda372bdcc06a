//! Gaze-log ingestion, clipping, and per-pixel histograms.
//!
//! Gaze CSV: a `timestamp,x,y` header, then one sample per line in
//! full-stimulus pixel coordinates; `#` lines are comments. Loading drops
//! loss samples (non-finite or negative coordinates) and points outside the
//! clip square — membership is half-open, `x ∈ [x0, x0+side)` — and
//! translates the survivors to clip-local coordinates. Raw points are used
//! as-is: no fixation filtering or smoothing.

use std::io::{self, BufRead};

use serde::Serialize;
use thiserror::Error;

use crate::field::BinaryField;
use crate::spatial_map::LayoutConfig;

/// One gaze sample, seconds and full-stimulus pixels.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GazePoint {
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

/// Load/clip accounting. `removed_fraction = (loss + out_of_bounds) / total`
/// over the points inside the time window.
#[derive(Clone, Copy, PartialEq, Serialize, Debug, Default)]
pub struct GazeStats {
    pub total: usize,
    pub retained: usize,
    pub loss: usize,
    pub out_of_bounds: usize,
    pub removed_fraction: f64,
    /// Samples whose timestamp went backwards; a data-quality warning, not
    /// an error.
    pub nonmonotonic: usize,
}

#[derive(Error, Debug)]
pub enum GazeError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("gaze format error at line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("no gaze points retained after clipping")]
    EmptyInput,
    #[error("downsample factor {downsample} does not divide the clip side {side}")]
    BadDownsample { downsample: u32, side: u32 },
}

/// Parse a gaze CSV, window it, clip it, and translate retained points to
/// clip-local coordinates.
pub fn load_gaze<R: BufRead>(
    r: R,
    cfg: &LayoutConfig,
    t_range: Option<(f64, f64)>,
) -> Result<(Vec<GazePoint>, GazeStats), GazeError> {
    let x0 = cfg.clip.x0;
    let y0 = cfg.clip.y0;
    let side = cfg.clip.side as f64;

    let mut stats = GazeStats::default();
    let mut retained = Vec::new();
    let mut header_seen = false;
    let mut prev_t = f64::NEG_INFINITY;
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line).trim_end();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != "timestamp,x,y" {
                return Err(GazeError::Format {
                    line: lineno,
                    message: "expected `timestamp,x,y` header".into(),
                });
            }
            header_seen = true;
            continue;
        }
        let mut parts = line.split(',');
        let mut next_field = |name: &str| -> Result<f64, GazeError> {
            parts
                .next()
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| GazeError::Format {
                    line: lineno,
                    message: format!("bad {name} field"),
                })
        };
        let t = next_field("timestamp")?;
        let x = next_field("x")?;
        let y = next_field("y")?;
        if parts.next().is_some() {
            return Err(GazeError::Format { line: lineno, message: "too many fields".into() });
        }

        if t.is_finite() {
            if t < prev_t {
                stats.nonmonotonic += 1;
            }
            prev_t = t;
        }
        if let Some((a, b)) = t_range {
            if !t.is_finite() || t < a || t >= b {
                continue;
            }
        }
        stats.total += 1;
        if !t.is_finite() || !x.is_finite() || !y.is_finite() || x < 0.0 || y < 0.0 {
            stats.loss += 1;
            continue;
        }
        let in_clip = x >= x0 && x < x0 + side && y >= y0 && y < y0 + side;
        if !in_clip {
            stats.out_of_bounds += 1;
            continue;
        }
        retained.push(GazePoint { t, x: x - x0, y: y - y0 });
    }
    if !header_seen {
        return Err(GazeError::Format { line: 1, message: "missing `timestamp,x,y` header".into() });
    }
    stats.retained = retained.len();
    if stats.total > 0 {
        stats.removed_fraction = (stats.loss + stats.out_of_bounds) as f64 / stats.total as f64;
    }
    if retained.is_empty() {
        return Err(GazeError::EmptyInput);
    }
    Ok((retained, stats))
}

/// Per-cell gaze counts over the clip grid, plus the load accounting that
/// produced the points.
#[derive(Clone, PartialEq, Debug)]
pub struct GazeHistogram {
    width: usize,
    height: usize,
    counts: Vec<u64>,
    pub removed_fraction: f64,
}

impl GazeHistogram {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn at(&self, x: usize, y: usize) -> u64 {
        self.counts[y * self.width + x]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn sum(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn from_counts(width: usize, height: usize, counts: Vec<u64>) -> Self {
        debug_assert_eq!(counts.len(), width * height);
        GazeHistogram { width, height, counts, removed_fraction: 0.0 }
    }
}

/// Bin clip-local points into `side/downsample` square cells; each point
/// lands in cell `(floor(x/d), floor(y/d))`.
pub fn gaze_histogram(
    points: &[GazePoint],
    clip_side: u32,
    downsample: u32,
    removed_fraction: f64,
) -> Result<GazeHistogram, GazeError> {
    if downsample == 0 || !clip_side.is_multiple_of(downsample) {
        return Err(GazeError::BadDownsample { downsample, side: clip_side });
    }
    let n = (clip_side / downsample) as usize;
    let d = downsample as f64;
    let mut counts = vec![0u64; n * n];
    for p in points {
        let cx = (p.x / d).floor() as usize;
        let cy = (p.y / d).floor() as usize;
        counts[cy * n + cx] += 1;
    }
    Ok(GazeHistogram { width: n, height: n, counts, removed_fraction })
}

/// Binary negation: 1 exactly where the count is zero.
pub fn negate_histogram(g: &GazeHistogram) -> BinaryField {
    let bits = g.counts.iter().map(|&c| u8::from(c == 0)).collect();
    BinaryField::new(g.width, g.height, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spatial_map::ClipRect;

    fn cfg() -> LayoutConfig {
        LayoutConfig {
            clip: ClipRect { x0: 540.0, y0: 120.0, side: 840 },
            ..LayoutConfig::default()
        }
    }

    fn gaze_csv(points: &[(f64, f64, f64)]) -> String {
        let mut s = String::from("timestamp,x,y\n");
        for (t, x, y) in points {
            s.push_str(&format!("{t},{x},{y}\n"));
        }
        s
    }

    #[test]
    fn clip_membership_is_half_open() {
        let src = gaze_csv(&[
            (0.0, 540.0, 120.0),   // corner: retained at local (0, 0)
            (0.1, 1380.0, 500.0),  // x0 + side: removed
            (0.2, 1379.999, 959.999), // just inside
        ]);
        let (pts, stats) = load_gaze(src.as_bytes(), &cfg(), None).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!((pts[0].x, pts[0].y), (0.0, 0.0));
        assert_eq!(stats.out_of_bounds, 1);
    }

    #[test]
    fn six_point_file_with_two_outliers() {
        let src = gaze_csv(&[
            (0.0, 600.0, 200.0),
            (0.1, 700.0, 300.0),
            (0.2, 10.0, 10.0),
            (0.3, 800.0, 400.0),
            (0.4, 1900.0, 1000.0),
            (0.5, 900.0, 500.0),
        ]);
        let (pts, stats) = load_gaze(src.as_bytes(), &cfg(), None).unwrap();
        assert_eq!(pts.len(), 4);
        assert_eq!(stats.total, 6);
        assert_eq!(stats.out_of_bounds, 2);
        assert!((stats.removed_fraction - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn loss_samples_are_counted_separately() {
        let mut src = gaze_csv(&[(0.0, 600.0, 200.0)]);
        src.push_str("0.1,NaN,200\n0.2,-1,200\n");
        let (pts, stats) = load_gaze(src.as_bytes(), &cfg(), None).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(stats.loss, 2);
        assert_eq!(stats.out_of_bounds, 0);
        assert!((stats.removed_fraction - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn low_removal_regime() {
        let mut pts: Vec<(f64, f64, f64)> = (0..9995)
            .map(|i| (i as f64 / 120.0, 600.0 + (i % 700) as f64, 200.0 + (i % 700) as f64))
            .collect();
        for i in 0..5 {
            pts.push((100.0 + i as f64, 1.0, 1.0));
        }
        let src = gaze_csv(&pts);
        let (_, stats) = load_gaze(src.as_bytes(), &cfg(), None).unwrap();
        assert!(stats.removed_fraction < 0.001);
    }

    #[test]
    fn t_range_windows_before_accounting() {
        let src = gaze_csv(&[
            (0.0, 600.0, 200.0),
            (1.0, 600.0, 200.0),
            (2.0, 10.0, 10.0),
            (3.0, 600.0, 200.0),
        ]);
        let (pts, stats) = load_gaze(src.as_bytes(), &cfg(), Some((1.0, 3.0))).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(stats.total, 2);
        assert_eq!(stats.out_of_bounds, 1);
    }

    #[test]
    fn reloading_clipped_points_removes_nothing() {
        let src = gaze_csv(&[(0.0, 600.0, 200.0), (0.1, 700.0, 300.0), (0.2, 1379.0, 959.0)]);
        let c = cfg();
        let (pts, _) = load_gaze(src.as_bytes(), &c, None).unwrap();
        let back: Vec<(f64, f64, f64)> =
            pts.iter().map(|p| (p.t, p.x + c.clip.x0, p.y + c.clip.y0)).collect();
        let (pts2, stats2) = load_gaze(gaze_csv(&back).as_bytes(), &c, None).unwrap();
        assert_eq!(pts2.len(), pts.len());
        assert_eq!(stats2.removed_fraction, 0.0);
    }

    #[test]
    fn nonmonotonic_timestamps_are_warnings() {
        let src = gaze_csv(&[(1.0, 600.0, 200.0), (0.5, 600.0, 200.0), (2.0, 600.0, 200.0)]);
        let (pts, stats) = load_gaze(src.as_bytes(), &cfg(), None).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(stats.nonmonotonic, 1);
    }

    #[test]
    fn format_errors_carry_line_numbers() {
        match load_gaze(&b"timestamp,x,y\n1,2\n"[..], &cfg(), None) {
            Err(GazeError::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected format error, got {other:?}"),
        }
        assert!(matches!(
            load_gaze(&b"wrong,header\n"[..], &cfg(), None),
            Err(GazeError::Format { line: 1, .. })
        ));
    }

    #[test]
    fn all_points_outside_clip_is_empty_input() {
        let src = gaze_csv(&[(0.0, 1.0, 1.0), (0.1, 2.0, 2.0)]);
        assert!(matches!(load_gaze(src.as_bytes(), &cfg(), None), Err(GazeError::EmptyInput)));
    }

    #[test]
    fn histogram_bins_by_floor_division() {
        let pts = vec![
            GazePoint { t: 0.0, x: 0.0, y: 0.0 },
            GazePoint { t: 0.1, x: 3.9, y: 3.9 },
            GazePoint { t: 0.2, x: 4.0, y: 0.0 },
        ];
        let h = gaze_histogram(&pts, 840, 4, 0.0).unwrap();
        assert_eq!(h.at(0, 0), 2);
        assert_eq!(h.at(1, 0), 1);
        assert_eq!(h.sum(), 3);
    }

    #[test]
    fn scanpath_tally_matches_direct_count() {
        // 120 Hz for 10 s bouncing over three pixels.
        let cells = [(10.0, 10.0), (50.0, 10.0), (90.0, 90.0)];
        let pts: Vec<GazePoint> = (0..1200)
            .map(|i| {
                let (x, y) = cells[i % 3];
                GazePoint { t: i as f64 / 120.0, x, y }
            })
            .collect();
        let h = gaze_histogram(&pts, 840, 1, 0.0).unwrap();
        assert_eq!(h.at(10, 10), 400);
        assert_eq!(h.at(50, 10), 400);
        assert_eq!(h.at(90, 90), 400);
        assert_eq!(h.sum(), 1200);
    }

    #[test]
    fn negation_is_the_exact_complement() {
        let h = GazeHistogram::from_counts(2, 2, vec![0, 3, 1, 0]);
        let neg = negate_histogram(&h);
        assert_eq!(neg.bits(), &[1, 0, 0, 1]);

        let all = GazeHistogram::from_counts(2, 2, vec![1, 2, 3, 4]);
        assert_eq!(negate_histogram(&all).count_ones(), 0);
    }
}
