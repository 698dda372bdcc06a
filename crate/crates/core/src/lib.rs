//! Token-level attention maps for source code, scored against recorded gaze.
//!
//! The pipeline, end to end:
//!
//! 1. [`syntax`] parses a Java snippet into a syntax tree whose nodes carry
//!    source spans and representative tokens (`if` for an `IfStmt`, `>` for a
//!    `GreaterThan`, identifiers and literals for themselves).
//! 2. [`pathctx`] enumerates leaf-to-leaf path contexts through the tree and
//!    serializes each one to a canonical string key.
//! 3. [`attention`] binds per-path attention weights to those keys and folds
//!    them into a per-node attention distribution.
//! 4. [`spatial_map`] lays tokens out on a monospace pixel grid and sums a
//!    token-centered 2D Gaussian per attended token into a scalar field over
//!    the analysis clip square.
//! 5. [`gaze`] ingests eye-tracker logs, clips them to the same square, and
//!    bins them into a per-pixel count histogram.
//! 6. [`rocauc`] sweeps a binarization threshold over the field, computes
//!    gaze-weighted TPR / FPR per threshold, and integrates the ROC curve to
//!    an AUC consistency score.
//!
//! [`corpus`] holds the snippet normalization and selection-statistics
//! helpers used to assemble a stimulus set in the first place.

pub mod attention;
pub mod corpus;
pub mod field;
pub mod gaze;
pub mod pathctx;
pub mod rocauc;
pub mod spatial_map;
pub mod syntax;

pub use attention::{aggregate_node_attention, load_attention, uniform_attention, NodeAttention};
pub use field::{BinaryField, ScalarField};
pub use gaze::{gaze_histogram, load_gaze, negate_histogram, GazeHistogram, GazePoint};
pub use pathctx::{canonical_string, extract_path_contexts, ExtractionLimits, PathContext};
pub use rocauc::{auc, binarize, roc_curve, tpr_fpr, EvalReport, RocPoint};
pub use spatial_map::{generate_attention_map, layout_tokens, LayoutConfig, TokenGeometry};
pub use syntax::{parse_source, SourceSnippet, Span, SyntaxTree};
