//! Run configuration: one JSON file holding device and model constants,
//! overridable per invocation by flags. Reports embed a digest of the
//! effective configuration so outputs stay attributable.

use std::fs;
use std::path::{Path, PathBuf};

use attnmap::pathctx::ExtractionLimits;
use attnmap::spatial_map::LayoutConfig;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Where per-path attention weights come from: `"uniform"` or
/// `{"file": "<path>"}` in config JSON.
#[derive(Clone, PartialEq, Serialize, Deserialize, Debug)]
#[serde(try_from = "SourceRepr", into = "SourceRepr")]
pub enum AttentionSource {
    /// Equal weight per extracted context.
    Uniform,
    /// Tab-separated `<canonical_string>\t<value>` records.
    File(PathBuf),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum SourceRepr {
    Keyword(String),
    File { file: PathBuf },
}

impl TryFrom<SourceRepr> for AttentionSource {
    type Error = String;

    fn try_from(r: SourceRepr) -> Result<Self, String> {
        match r {
            SourceRepr::Keyword(s) if s == "uniform" => Ok(AttentionSource::Uniform),
            SourceRepr::Keyword(s) => Err(format!("unknown attention source `{s}`")),
            SourceRepr::File { file } => Ok(AttentionSource::File(file)),
        }
    }
}

impl From<AttentionSource> for SourceRepr {
    fn from(a: AttentionSource) -> Self {
        match a {
            AttentionSource::Uniform => SourceRepr::Keyword("uniform".into()),
            AttentionSource::File(file) => SourceRepr::File { file },
        }
    }
}

#[derive(Clone, PartialEq, Serialize, Deserialize, Debug)]
#[serde(default)]
pub struct RunConfig {
    pub layout: LayoutConfig,
    pub limits: ExtractionLimits,
    pub attention_source: AttentionSource,
    pub downsample: u32,
    pub t_range: Option<(f64, f64)>,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            layout: LayoutConfig::default(),
            limits: ExtractionLimits::default(),
            attention_source: AttentionSource::Uniform,
            downsample: 1,
            t_range: None,
            output_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("bad config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.limits.validate().map_err(|e| CliError::Config(e.to_string()))?;
        self.layout.validate().map_err(|e| CliError::Config(e.to_string()))?;
        let side = self.layout.clip.side;
        if self.downsample == 0 || !side.is_multiple_of(self.downsample) {
            return Err(CliError::Config(format!(
                "downsample {} does not divide the clip side {side}",
                self.downsample
            )));
        }
        if let Some((a, b)) = self.t_range {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(CliError::Config(format!("bad t range {a}..{b}")));
            }
        }
        if let AttentionSource::File(file) = &self.attention_source {
            if !file.exists() {
                return Err(CliError::Config(format!(
                    "attention file {} does not exist",
                    file.display()
                )));
            }
        }
        Ok(())
    }

    /// SHA-256 of the effective configuration's canonical JSON.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(json.as_bytes());
        let out = hasher.finalize();
        let mut hex = String::with_capacity(out.len() * 2);
        for b in out {
            hex.push_str(&format!("{b:02x}"));
        }
        hex
    }
}
