//! Dense row-major grids over the analysis clip square.
//!
//! [`ScalarField`] holds non-negative finite reals (the attention map);
//! [`BinaryField`] holds 0/1 cells (binarized maps, gaze negations). The
//! grid CSV format is a `width,height` header line followed by one row per
//! line of comma-separated decimal values; floats are written with Rust's
//! shortest round-trip formatting, so re-reading a written grid reproduces
//! it exactly. The PGM writer emits binary `P5`, maxval 255, scaled by the
//! field maximum.

use std::io::{self, BufRead, Write};

use thiserror::Error;

#[derive(Error, Debug)]
pub enum FieldError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("grid format error at line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("grid value at ({x}, {y}) is {value}, expected non-negative finite")]
    InvalidValue { x: usize, y: usize, value: f64 },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Row-major grid of non-negative finite reals.
#[derive(Clone, PartialEq, Debug)]
pub struct ScalarField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(width: usize, height: usize) -> Self {
        ScalarField { width, height, values: vec![0.0; width * height] }
    }

    /// Build from row-major values, validating length and value range.
    pub fn from_values(width: usize, height: usize, values: Vec<f64>) -> Result<Self, FieldError> {
        if values.len() != width * height {
            return Err(FieldError::LengthMismatch { expected: width * height, got: values.len() });
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(FieldError::InvalidValue { x: i % width, y: i / width, value: v });
            }
        }
        Ok(ScalarField { width, height, values })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `width,height` header, then one comma-separated row per line.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{},{}", self.width, self.height)?;
        let mut line = String::new();
        for row in self.values.chunks(self.width) {
            line.clear();
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    line.push(',');
                }
                line.push_str(&v.to_string());
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self, FieldError> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| FieldError::Format { line: 1, message: "empty grid file".into() })?;
        let header = header?;
        let mut parts = header.trim().split(',');
        let parse_dim = |s: Option<&str>| -> Result<usize, FieldError> {
            s.and_then(|v| v.trim().parse().ok()).ok_or_else(|| FieldError::Format {
                line: 1,
                message: "expected `width,height` header".into(),
            })
        };
        let width = parse_dim(parts.next())?;
        let height = parse_dim(parts.next())?;
        if parts.next().is_some() || width == 0 || height == 0 {
            return Err(FieldError::Format {
                line: 1,
                message: "expected `width,height` header".into(),
            });
        }
        let mut values = Vec::with_capacity(width * height);
        let mut rows = 0usize;
        for (idx, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            rows += 1;
            let mut cols = 0usize;
            for cell in line.trim().split(',') {
                let v: f64 = cell.trim().parse().map_err(|_| FieldError::Format {
                    line: idx + 1,
                    message: format!("bad value `{cell}`"),
                })?;
                values.push(v);
                cols += 1;
            }
            if cols != width {
                return Err(FieldError::Format {
                    line: idx + 1,
                    message: format!("expected {width} columns, got {cols}"),
                });
            }
        }
        if rows != height {
            return Err(FieldError::Format {
                line: rows + 1,
                message: format!("expected {height} rows, got {rows}"),
            });
        }
        ScalarField::from_values(width, height, values)
    }

    /// Binary PGM (`P5`, maxval 255). Each pixel is `floor(255 * v / max)`;
    /// an all-zero field produces an all-zero image.
    pub fn write_pgm<W: Write>(&self, mut w: W) -> io::Result<()> {
        write!(w, "P5\n{} {}\n255\n", self.width, self.height)?;
        let max = self.max();
        let mut row = Vec::with_capacity(self.width);
        for chunk in self.values.chunks(self.width) {
            row.clear();
            for &v in chunk {
                let px = if max > 0.0 { (255.0 * v / max).floor() as u8 } else { 0 };
                row.push(px);
            }
            w.write_all(&row)?;
        }
        Ok(())
    }
}

/// Row-major 0/1 grid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryField {
    width: usize,
    height: usize,
    bits: Vec<u8>,
}

impl BinaryField {
    pub fn new(width: usize, height: usize, bits: Vec<u8>) -> Self {
        debug_assert_eq!(bits.len(), width * height);
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BinaryField { width, height, bits }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn at(&self, x: usize, y: usize) -> u8 {
        self.bits[y * self.width + x]
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}
