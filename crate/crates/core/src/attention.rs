//! Path-attention ingestion and per-node aggregation.
//!
//! Attention files address extracted path contexts by canonical string:
//! one `<canonical_string><TAB><value>` record per line, `#` lines are
//! comments, duplicate keys collapse to the last value. Aggregation adds
//! each matched context's weight to every node on its path; a key matches
//! every extracted instance with that canonical string. Contexts with no
//! record contribute nothing and are only counted in the stats.

use std::collections::{HashMap, HashSet};
use std::io::{self, BufRead};

use thiserror::Error;

use crate::pathctx::{canonical_string, PathContext};
use crate::syntax::{NodeId, SyntaxTree};

/// One attention record: canonical path-context key and non-negative weight.
#[derive(Clone, PartialEq, Debug)]
pub struct PathAttention {
    pub key: String,
    pub value: f64,
}

#[derive(Error, Debug)]
pub enum AttentionError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("attention format error at line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("attention value at line {line} is {value}, expected non-negative finite")]
    Value { line: usize, value: f64 },
    #[error("no path contexts to weight")]
    EmptyInput,
}

/// Parse an attention file. Records keep file order; a repeated key keeps
/// its first position with the last value seen.
pub fn load_attention<R: BufRead>(r: R) -> Result<Vec<PathAttention>, AttentionError> {
    let mut records: Vec<PathAttention> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let Some((key, value_str)) = line.split_once('\t') else {
            return Err(AttentionError::Format {
                line: lineno,
                message: "expected `<key><TAB><value>`".into(),
            });
        };
        let value: f64 = value_str.parse().map_err(|_| AttentionError::Format {
            line: lineno,
            message: format!("bad decimal value `{value_str}`"),
        })?;
        if !value.is_finite() || value < 0.0 {
            return Err(AttentionError::Value { line: lineno, value });
        }
        match index.get(key) {
            Some(&at) => records[at].value = value,
            None => {
                index.insert(key.to_string(), records.len());
                records.push(PathAttention { key: key.to_string(), value });
            }
        }
    }
    Ok(records)
}

/// Surrogate weighting when no model output is available: `1/N` per
/// context. Duplicate canonical strings collapse last-wins, so at bind time
/// one record still matches every instance.
pub fn uniform_attention(
    tree: &SyntaxTree,
    contexts: &[PathContext],
) -> Result<Vec<PathAttention>, AttentionError> {
    if contexts.is_empty() {
        return Err(AttentionError::EmptyInput);
    }
    let w = 1.0 / contexts.len() as f64;
    let mut records: Vec<PathAttention> = Vec::new();
    let mut seen = HashSet::new();
    for pc in contexts {
        let key = canonical_string(tree, pc);
        if seen.insert(key.clone()) {
            records.push(PathAttention { key, value: w });
        }
    }
    Ok(records)
}

/// Attention mass per node, dense over node ids.
#[derive(Clone, PartialEq, Debug)]
pub struct NodeAttention {
    values: Vec<f64>,
}

impl NodeAttention {
    pub fn zeros(node_count: usize) -> Self {
        NodeAttention { values: vec![0.0; node_count] }
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        NodeAttention { values }
    }

    pub fn value(&self, id: NodeId) -> f64 {
        self.values.get(id.0).copied().unwrap_or(0.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn scale(&mut self, c: f64) {
        for v in &mut self.values {
            *v *= c;
        }
    }
}

/// Bind/aggregate statistics, reported alongside the distribution.
#[derive(Clone, Copy, PartialEq, Debug, Default, serde::Serialize)]
pub struct AggregateStats {
    pub matched: usize,
    pub unmatched: usize,
    /// Sum over matched contexts of `weight * path node count`; equals the
    /// total node mass.
    pub total_mass: f64,
}

/// Add each matched context's weight to every node on its path.
///
/// Contexts are processed in their given order, so repeated runs produce
/// identical sums bit for bit.
pub fn aggregate_node_attention(
    tree: &SyntaxTree,
    contexts: &[PathContext],
    attentions: &[PathAttention],
) -> (NodeAttention, AggregateStats) {
    let mut by_key: HashMap<&str, f64> = HashMap::new();
    for rec in attentions {
        by_key.insert(rec.key.as_str(), rec.value);
    }
    let mut attn = NodeAttention::zeros(tree.len());
    let mut stats = AggregateStats::default();
    for pc in contexts {
        let key = canonical_string(tree, pc);
        match by_key.get(key.as_str()) {
            Some(&a) => {
                for &node in &pc.node_path {
                    attn.values[node.0] += a;
                }
                stats.matched += 1;
                stats.total_mass += a * pc.node_path.len() as f64;
            }
            None => stats.unmatched += 1,
        }
    }
    (attn, stats)
}
