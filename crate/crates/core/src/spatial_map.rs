//! Token layout and Gaussian attention-map generation.
//!
//! Tokens live on a monospace grid: `cell_w` pixels per character column,
//! `cell_h` per text line, offset by the text margins inside the stimulus.
//! Each token with a representative node gets a 2D Gaussian centered on the
//! token box, peak height equal to the node's attention value, and sigma of
//! a quarter of the box size per axis (the box spans ±2σ). The map is the
//! plain sum of those Gaussians, evaluated exactly at cell centers of the
//! clip-square grid — no truncation radius, so superposition and scaling
//! identities hold to float precision.

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::attention::NodeAttention;
use crate::field::ScalarField;
use crate::syntax::{SyntaxTree, Token};

/// Analysis window cropped from the stimulus, `side` pixels square.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize, Debug)]
pub struct ClipRect {
    pub x0: f64,
    pub y0: f64,
    pub side: u32,
}

/// Monospace layout constants and stimulus geometry, all in pixels.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize, Debug)]
#[serde(default)]
pub struct LayoutConfig {
    pub cell_w: f64,
    pub cell_h: f64,
    pub margin_x: f64,
    pub margin_y: f64,
    pub stimulus_w: u32,
    pub stimulus_h: u32,
    pub clip: ClipRect,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            cell_w: 12.0,
            cell_h: 24.0,
            margin_x: 560.0,
            margin_y: 140.0,
            stimulus_w: 1920,
            stimulus_h: 1080,
            // Horizontally and vertically centered 840 px analysis square.
            clip: ClipRect { x0: 540.0, y0: 120.0, side: 840 },
        }
    }
}

impl LayoutConfig {
    pub fn validate(&self) -> Result<(), SpatialError> {
        if !(self.cell_w > 0.0 && self.cell_h > 0.0) {
            return Err(SpatialError::BadConfig("cell_w and cell_h must be positive".into()));
        }
        let inside = self.clip.x0 >= 0.0
            && self.clip.y0 >= 0.0
            && self.clip.x0 + self.clip.side as f64 <= self.stimulus_w as f64
            && self.clip.y0 + self.clip.side as f64 <= self.stimulus_h as f64;
        if !inside {
            return Err(SpatialError::BadConfig("clip square must lie inside the stimulus".into()));
        }
        Ok(())
    }
}

/// A laid-out token: center and extent in clip-local pixels.
#[derive(Clone, PartialEq, Debug)]
pub struct TokenGeometry {
    pub token: Token,
    pub center_x: f64,
    pub center_y: f64,
    pub width_px: f64,
    pub height_px: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
}

#[derive(Error, Debug)]
pub enum SpatialError {
    #[error("token `{text}` at {line}:{col} exceeds the stimulus bounds")]
    LayoutOverflow { text: String, line: u32, col: u32 },
    #[error("downsample factor {downsample} does not divide the clip side {side}")]
    BadDownsample { downsample: u32, side: u32 },
    #[error("invalid layout config: {0}")]
    BadConfig(String),
}

/// Geometry for every representative token of the tree.
///
/// Centers are clip-local; tokens whose centers fall outside the clip
/// square are kept (their Gaussians can still spill into it). A token whose
/// box leaves the stimulus itself is an error.
pub fn layout_tokens(tree: &SyntaxTree, cfg: &LayoutConfig) -> Result<Vec<TokenGeometry>, SpatialError> {
    cfg.validate()?;
    let mut out = Vec::new();
    for token in tree.tokens() {
        out.push(layout_token(token, cfg)?);
    }
    Ok(out)
}

fn layout_token(token: &Token, cfg: &LayoutConfig) -> Result<TokenGeometry, SpatialError> {
    let chars = token.text.chars().count() as f64;
    let line = token.span.start_line as f64;
    let col = token.span.start_col as f64;

    let x_min = cfg.margin_x + col * cfg.cell_w;
    let x_max = x_min + chars * cfg.cell_w;
    let y_min = cfg.margin_y + line * cfg.cell_h;
    let y_max = y_min + cfg.cell_h;
    if x_min < 0.0
        || y_min < 0.0
        || x_max > cfg.stimulus_w as f64
        || y_max > cfg.stimulus_h as f64
    {
        return Err(SpatialError::LayoutOverflow {
            text: token.text.clone(),
            line: token.span.start_line,
            col: token.span.start_col,
        });
    }

    let width_px = chars * cfg.cell_w;
    let height_px = cfg.cell_h;
    Ok(TokenGeometry {
        token: token.clone(),
        center_x: cfg.margin_x + (col + chars / 2.0) * cfg.cell_w - cfg.clip.x0,
        center_y: cfg.margin_y + (line + 0.5) * cfg.cell_h - cfg.clip.y0,
        width_px,
        height_px,
        sigma_x: width_px / 4.0,
        sigma_y: height_px / 4.0,
    })
}

/// Sum of per-token Gaussians over the clip grid.
///
/// `C(x, y) = Σ_t a_t exp(-((x-cx)²/2σx² + (y-cy)²/2σy²))` evaluated at the
/// centers of `side/downsample` square cells. Tokens with zero attention are
/// skipped. Rows are evaluated in parallel; within a pixel the token order
/// is fixed, so results are identical under any schedule.
pub fn generate_attention_map(
    geoms: &[TokenGeometry],
    node_attn: &NodeAttention,
    cfg: &LayoutConfig,
    downsample: u32,
) -> Result<ScalarField, SpatialError> {
    let side = cfg.clip.side;
    if downsample == 0 || !side.is_multiple_of(downsample) {
        return Err(SpatialError::BadDownsample { downsample, side });
    }
    let n = (side / downsample) as usize;
    let d = downsample as f64;

    struct Blob {
        cx: f64,
        cy: f64,
        inv_2sx2: f64,
        inv_2sy2: f64,
        a: f64,
    }
    let blobs: Vec<Blob> = geoms
        .iter()
        .filter_map(|g| {
            let a = node_attn.value(g.token.owner);
            (a != 0.0).then(|| Blob {
                cx: g.center_x,
                cy: g.center_y,
                inv_2sx2: 1.0 / (2.0 * g.sigma_x * g.sigma_x),
                inv_2sy2: 1.0 / (2.0 * g.sigma_y * g.sigma_y),
                a,
            })
        })
        .collect();

    let mut field = ScalarField::zeros(n, n);
    field
        .values_mut()
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(row, chunk)| {
            let y = (row as f64 + 0.5) * d;
            for (i, cell) in chunk.iter_mut().enumerate() {
                let x = (i as f64 + 0.5) * d;
                let mut sum = 0.0;
                for b in &blobs {
                    let dx = x - b.cx;
                    let dy = y - b.cy;
                    sum += b.a * (-(dx * dx * b.inv_2sx2 + dy * dy * b.inv_2sy2)).exp();
                }
                *cell = sum;
            }
        });
    Ok(field)
}

/// Write a field as a raw-value CSV grid plus a max-normalized PGM.
pub fn render_field(field: &ScalarField, csv_path: &Path, pgm_path: &Path) -> io::Result<()> {
    field.write_csv(BufWriter::new(File::create(csv_path)?))?;
    field.write_pgm(BufWriter::new(File::create(pgm_path)?))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{NodeId, Span};

    fn bare_cfg(cell_w: f64, cell_h: f64) -> LayoutConfig {
        LayoutConfig {
            cell_w,
            cell_h,
            margin_x: 0.0,
            margin_y: 0.0,
            stimulus_w: 1920,
            stimulus_h: 1080,
            clip: ClipRect { x0: 0.0, y0: 0.0, side: 840 },
        }
    }

    fn tok(text: &str, line: u32, col: u32, owner: usize) -> Token {
        Token {
            text: text.into(),
            span: Span::on_line(line, col, text.chars().count() as u32),
            owner: NodeId(owner),
        }
    }

    #[test]
    fn layout_formula_for_a_two_char_token() {
        let cfg = bare_cfg(10.0, 20.0);
        let g = layout_token(&tok("if", 0, 4, 0), &cfg).unwrap();
        assert_eq!((g.center_x, g.center_y), (50.0, 10.0));
        assert_eq!((g.width_px, g.height_px), (20.0, 20.0));
        assert_eq!((g.sigma_x, g.sigma_y), (5.0, 5.0));
    }

    #[test]
    fn layout_formula_for_a_single_char_token() {
        let cfg = bare_cfg(10.0, 20.0);
        let g = layout_token(&tok("x", 0, 0, 0), &cfg).unwrap();
        assert_eq!((g.center_x, g.center_y), (5.0, 10.0));
        assert_eq!(g.width_px, 10.0);
        assert_eq!(g.sigma_x, 2.5);
    }

    #[test]
    fn clip_offset_shifts_centers_but_not_sigmas() {
        let mut cfg = bare_cfg(10.0, 20.0);
        cfg.margin_x = 560.0;
        cfg.margin_y = 140.0;
        cfg.clip = ClipRect { x0: 540.0, y0: 120.0, side: 840 };
        let g = layout_token(&tok("if", 0, 4, 0), &cfg).unwrap();
        assert_eq!((g.center_x, g.center_y), (560.0 + 50.0 - 540.0, 140.0 + 10.0 - 120.0));
        assert_eq!((g.sigma_x, g.sigma_y), (5.0, 5.0));
    }

    #[test]
    fn overflowing_token_is_rejected() {
        let cfg = bare_cfg(10.0, 20.0);
        let long = "x".repeat(200);
        let err = layout_token(&tok(&long, 0, 0, 0), &cfg).unwrap_err();
        assert!(matches!(err, SpatialError::LayoutOverflow { .. }));
        // 1080 / 20 = 54 lines fit; line 54 starts at y = 1080.
        let err = layout_token(&tok("x", 54, 0, 0), &cfg).unwrap_err();
        assert!(matches!(err, SpatialError::LayoutOverflow { .. }));
    }

    #[test]
    fn token_outside_the_clip_is_kept_and_spills_in() {
        // Clip starts at x = 200; the token sits left of it, inside the
        // stimulus, with a sigma wide enough to reach across the edge.
        let cfg = LayoutConfig {
            cell_w: 40.0,
            cell_h: 20.0,
            margin_x: 0.0,
            margin_y: 0.0,
            stimulus_w: 1920,
            stimulus_h: 1080,
            clip: ClipRect { x0: 200.0, y0: 0.0, side: 200 },
        };
        let g = layout_token(&tok("abcd", 0, 0, 0), &cfg).unwrap();
        assert_eq!(g.center_x, 80.0 - 200.0);
        assert!(g.center_x < 0.0);

        let attn = NodeAttention::from_values(vec![1.0]);
        let field = generate_attention_map(&[g], &attn, &cfg, 1).unwrap();
        assert!(field.at(0, 0) > 0.0, "gaussian tail must reach into the clip");
        assert!(field.at(0, 0) < 1.0);
    }

    #[test]
    fn peak_equals_attention_at_the_exact_center() {
        // Geometry chosen so the token center lands on a cell center:
        // 1 char, cell 9x7 at col 0 line 0 -> center (4.5, 3.5) = cell (4, 3).
        let cfg = bare_cfg(9.0, 7.0);
        let g = layout_token(&tok("x", 0, 0, 7), &cfg).unwrap();
        assert_eq!((g.center_x, g.center_y), (4.5, 3.5));
        let mut values = vec![0.0; 8];
        values[7] = 1.33;
        let attn = NodeAttention::from_values(values);
        let field = generate_attention_map(&[g], &attn, &cfg, 1).unwrap();
        assert!((field.at(4, 3) - 1.33).abs() <= 1e-9 * 1.33);
    }

    #[test]
    fn zero_attention_yields_zero_field() {
        let cfg = bare_cfg(10.0, 20.0);
        let g = layout_token(&tok("x", 0, 0, 0), &cfg).unwrap();
        let attn = NodeAttention::zeros(1);
        let field = generate_attention_map(&[g], &attn, &cfg, 4).unwrap();
        assert!(field.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn two_blob_map_matches_direct_evaluation() {
        let cfg = bare_cfg(10.0, 20.0);
        let g1 = layout_token(&tok("ab", 1, 2, 0), &cfg).unwrap();
        let g2 = layout_token(&tok("cdef", 5, 9, 1), &cfg).unwrap();
        let attn = NodeAttention::from_values(vec![0.3, 0.5]);
        let field = generate_attention_map(&[g1.clone(), g2.clone()], &attn, &cfg, 4).unwrap();

        let eval = |x: f64, y: f64| {
            let term = |g: &TokenGeometry, a: f64| {
                let dx = x - g.center_x;
                let dy = y - g.center_y;
                a * (-(dx * dx / (2.0 * g.sigma_x * g.sigma_x)
                    + dy * dy / (2.0 * g.sigma_y * g.sigma_y)))
                    .exp()
            };
            term(&g1, 0.3) + term(&g2, 0.5)
        };
        for (cx, cy) in [(0usize, 0usize), (7, 2), (3, 28), (50, 50), (209, 209)] {
            let x = (cx as f64 + 0.5) * 4.0;
            let y = (cy as f64 + 0.5) * 4.0;
            let expect = eval(x, y);
            let got = field.at(cx, cy);
            assert!((got - expect).abs() <= 1e-12 + 1e-9 * expect.abs(), "cell ({cx},{cy})");
        }
    }

    #[test]
    fn bad_downsample_is_rejected() {
        let cfg = bare_cfg(10.0, 20.0);
        let err = generate_attention_map(&[], &NodeAttention::zeros(0), &cfg, 11).unwrap_err();
        assert!(matches!(err, SpatialError::BadDownsample { downsample: 11, side: 840 }));
        assert!(generate_attention_map(&[], &NodeAttention::zeros(0), &cfg, 0).is_err());
    }
}
