//! Snippet normalization and selection statistics.
//!
//! Snippets are normalized by expanding each tab to two spaces. Selection
//! works on superficial shape only: lines of code and mean characters per
//! line, z-scored against the whole corpus; a snippet's deviation is the
//! Euclidean norm of its two z-scores and the least-deviant `k` snippets
//! per algorithm label are kept. A statistic with zero spread contributes
//! nothing to any deviation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::BufRead;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::SourceSnippet;

/// Replace every tab with two spaces; no other change. Idempotent.
pub fn normalize_indent(text: &str) -> String {
    text.replace('\t', "  ")
}

/// Superficial snippet statistics. `deviation` is zero until the snippet is
/// scored against a corpus by [`select_snippets`].
#[derive(Clone, PartialEq, Serialize, Debug)]
pub struct SnippetStats {
    pub id: String,
    pub label: String,
    /// Total lines, blanks included.
    pub loc: usize,
    /// Characters-per-line summary (mean by default), newlines excluded.
    pub cpl_mean: f64,
    pub deviation: f64,
}

/// How per-line character counts fold into the CPL statistic.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Debug, Default)]
#[serde(rename_all = "lowercase")]
pub enum CplStat {
    #[default]
    Mean,
    Median,
    Max,
}

/// LOC and mean CPL of one normalized snippet.
pub fn compute_stats(snippet: &SourceSnippet, label: impl Into<String>) -> SnippetStats {
    compute_stats_with(snippet, label, CplStat::Mean)
}

pub fn compute_stats_with(
    snippet: &SourceSnippet,
    label: impl Into<String>,
    stat: CplStat,
) -> SnippetStats {
    let loc = snippet.line_count;
    let trimmed = snippet.text.strip_suffix('\n').unwrap_or(&snippet.text);
    let mut lengths: Vec<usize> = trimmed.split('\n').map(|l| l.chars().count()).collect();
    let cpl = match stat {
        CplStat::Mean => lengths.iter().sum::<usize>() as f64 / loc as f64,
        CplStat::Median => {
            lengths.sort_unstable();
            let mid = lengths.len() / 2;
            if lengths.len() % 2 == 1 {
                lengths[mid] as f64
            } else {
                (lengths[mid - 1] + lengths[mid]) as f64 / 2.0
            }
        }
        CplStat::Max => lengths.iter().copied().max().unwrap_or(0) as f64,
    };
    SnippetStats {
        id: snippet.id.clone(),
        label: label.into(),
        loc,
        cpl_mean: cpl,
        deviation: 0.0,
    }
}

/// Per-label selection sizes: a default `k` with per-label overrides.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize, Debug)]
pub struct SelectionRule {
    pub default_k: usize,
    #[serde(default)]
    pub per_label: BTreeMap<String, usize>,
}

impl SelectionRule {
    pub fn uniform(k: usize) -> Self {
        SelectionRule { default_k: k, per_label: BTreeMap::new() }
    }

    pub fn k_for(&self, label: &str) -> usize {
        self.per_label.get(label).copied().unwrap_or(self.default_k)
    }
}

impl Default for SelectionRule {
    fn default() -> Self {
        SelectionRule::uniform(6)
    }
}

#[derive(Error, Debug)]
pub enum CorpusError {
    #[error("label `{label}` has {have} snippets, need {need}")]
    InsufficientSnippets { label: String, have: usize, need: usize },
    #[error("invalid corpus manifest: {0}")]
    Manifest(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Score deviations against the whole corpus and pick the `k` least deviant
/// snippets per label (ties by id). Returns the selected ids; `stats` keeps
/// the computed deviations for reporting.
pub fn select_snippets(
    stats: &mut [SnippetStats],
    rule: &SelectionRule,
) -> Result<BTreeSet<String>, CorpusError> {
    score_deviations(stats);

    let mut by_label: HashMap<&str, Vec<&SnippetStats>> = HashMap::new();
    for s in stats.iter() {
        by_label.entry(s.label.as_str()).or_default().push(s);
    }
    let mut selected = BTreeSet::new();
    for (label, mut group) in by_label {
        let k = rule.k_for(label);
        if group.len() < k {
            return Err(CorpusError::InsufficientSnippets {
                label: label.to_string(),
                have: group.len(),
                need: k,
            });
        }
        group.sort_by(|a, b| {
            a.deviation.total_cmp(&b.deviation).then_with(|| a.id.cmp(&b.id))
        });
        for s in &group[..k] {
            selected.insert(s.id.clone());
        }
    }
    Ok(selected)
}

/// deviation = sqrt(z_loc² + z_cpl²) with population mean/stddev over the
/// full list; a zero-stddev statistic contributes 0.
fn score_deviations(stats: &mut [SnippetStats]) {
    if stats.is_empty() {
        return;
    }
    let n = stats.len() as f64;
    let z = |values: Vec<f64>| -> (f64, f64) {
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        (mean, var.sqrt())
    };
    let (loc_mean, loc_sd) = z(stats.iter().map(|s| s.loc as f64).collect());
    let (cpl_mean, cpl_sd) = z(stats.iter().map(|s| s.cpl_mean).collect());
    for s in stats.iter_mut() {
        let zl = if loc_sd > 0.0 { (s.loc as f64 - loc_mean) / loc_sd } else { 0.0 };
        let zc = if cpl_sd > 0.0 { (s.cpl_mean - cpl_mean) / cpl_sd } else { 0.0 };
        s.deviation = (zl * zl + zc * zc).sqrt();
    }
}

/// One corpus manifest row.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize, Debug)]
pub struct ManifestEntry {
    pub id: String,
    pub path: PathBuf,
    pub label: String,
}

pub fn load_manifest<R: BufRead>(r: R) -> Result<Vec<ManifestEntry>, CorpusError> {
    Ok(serde_json::from_reader(r)?)
}
