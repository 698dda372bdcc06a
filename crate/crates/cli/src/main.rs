//! Pipeline driver.
//!
//! Subcommands: `contexts` (extract and print canonical path contexts),
//! `map` (attention map CSV + PGM + diagnostics), `eval` (ROC/AUC of a map
//! against a gaze log), `corpus` (snippet statistics and selection), and
//! `normalize` (tab expansion). Data goes to stdout or the output files;
//! status and warnings go to stderr.
//!
//! Exit codes: 0 success, 2 parse or encoding error in a source snippet,
//! 3 configuration error, 4 attention file error, 5 degenerate gaze
//! (nothing retained, or no gazed / no empty pixels), 1 anything else.

mod commands;
mod config;
mod out;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use config::{AttentionSource, RunConfig};

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Attention(String),
    #[error("{0}")]
    Gaze(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Config(_) => 3,
            CliError::Attention(_) => 4,
            CliError::Gaze(_) => 5,
            CliError::Other(_) => 1,
        }
    }
}

impl From<attnmap::syntax::ParseError> for CliError {
    fn from(e: attnmap::syntax::ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<attnmap::syntax::SnippetReadError> for CliError {
    fn from(e: attnmap::syntax::SnippetReadError) -> Self {
        match e {
            attnmap::syntax::SnippetReadError::Encoding(enc) => CliError::Parse(enc.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<attnmap::attention::AttentionError> for CliError {
    fn from(e: attnmap::attention::AttentionError) -> Self {
        CliError::Attention(e.to_string())
    }
}

impl From<attnmap::spatial_map::SpatialError> for CliError {
    fn from(e: attnmap::spatial_map::SpatialError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<attnmap::gaze::GazeError> for CliError {
    fn from(e: attnmap::gaze::GazeError) -> Self {
        use attnmap::gaze::GazeError::*;
        match e {
            EmptyInput => CliError::Gaze(e.to_string()),
            BadDownsample { .. } => CliError::Config(e.to_string()),
            Format { .. } => CliError::Other(e.to_string()),
            Io(io) => CliError::Other(io.to_string()),
        }
    }
}

impl From<attnmap::rocauc::RocError> for CliError {
    fn from(e: attnmap::rocauc::RocError) -> Self {
        use attnmap::rocauc::RocError::*;
        match e {
            DegenerateGaze => CliError::Gaze(e.to_string()),
            DimensionMismatch(..) => CliError::Config(e.to_string()),
            MalformedCurve(_) => CliError::Other(e.to_string()),
        }
    }
}

impl From<attnmap::field::FieldError> for CliError {
    fn from(e: attnmap::field::FieldError) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "attnmap", version, about = "Attention maps for source code, scored against gaze")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by the pipeline subcommands; each overrides the config file.
#[derive(Args, Debug, Default)]
struct ConfigArgs {
    /// Run configuration JSON
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides config `output_dir`)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid downsample factor; must divide the clip side
    #[arg(long)]
    downsample: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Extract path contexts and print one canonical string per line
    Contexts {
        java_file: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Maximum path length (edges)
        #[arg(long)]
        max_length: Option<usize>,
        /// Maximum path width at the common ancestor
        #[arg(long)]
        max_width: Option<usize>,
        /// Cap on the number of contexts
        #[arg(long)]
        max_contexts: Option<usize>,
        /// Dump the syntax tree instead (id, type, span, token per line)
        #[arg(long)]
        dump_ast: bool,
    },
    /// Generate the attention map: CSV grid, PGM image, diagnostics JSON
    Map {
        java_file: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Attention file (canonical string TAB value per line)
        #[arg(long, conflicts_with = "uniform")]
        attention: Option<PathBuf>,
        /// Weight every context equally
        #[arg(long)]
        uniform: bool,
    },
    /// Score a map CSV against a gaze CSV: report JSON plus ROC CSV
    Eval {
        map_csv: PathBuf,
        gaze_csv: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Keep only samples with timestamp in [A, B) seconds, as `A:B`
        #[arg(long, value_name = "A:B")]
        t_range: Option<String>,
        /// Snippet id recorded in the report (default: map file stem)
        #[arg(long)]
        snippet_id: Option<String>,
    },
    /// Snippet statistics and per-label selection over a corpus manifest
    Corpus {
        manifest: PathBuf,
        #[command(flatten)]
        cfg: ConfigArgs,
        /// Snippets kept per label
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Per-label override, `LABEL=K`; repeatable
        #[arg(long = "k-label", value_name = "LABEL=K")]
        k_label: Vec<String>,
        /// Characters-per-line summary statistic
        #[arg(long, value_enum, default_value_t = CplArg::Mean)]
        cpl_stat: CplArg,
    },
    /// Expand tabs to two spaces (stdout, or --out FILE)
    Normalize {
        file: PathBuf,
        /// Write here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum CplArg {
    Mean,
    Median,
    Max,
}

impl From<CplArg> for attnmap::corpus::CplStat {
    fn from(a: CplArg) -> Self {
        match a {
            CplArg::Mean => attnmap::corpus::CplStat::Mean,
            CplArg::Median => attnmap::corpus::CplStat::Median,
            CplArg::Max => attnmap::corpus::CplStat::Max,
        }
    }
}

/// Config file + flag overrides + validation.
fn effective_config(args: &ConfigArgs) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    if let Some(d) = args.downsample {
        cfg.downsample = d;
    }
    Ok(cfg)
}

fn parse_t_range(s: &str) -> Result<(f64, f64), CliError> {
    let err = || CliError::Config(format!("bad --t-range `{s}`, expected `A:B` seconds"));
    let (a, b) = s.split_once(':').ok_or_else(err)?;
    let a: f64 = a.trim().parse().map_err(|_| err())?;
    let b: f64 = b.trim().parse().map_err(|_| err())?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(err());
    }
    Ok((a, b))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Contexts { java_file, cfg, max_length, max_width, max_contexts, dump_ast } => {
            let mut run_cfg = effective_config(&cfg)?;
            if let Some(v) = max_length {
                run_cfg.limits.max_length = v;
            }
            if let Some(v) = max_width {
                run_cfg.limits.max_width = v;
            }
            if let Some(v) = max_contexts {
                run_cfg.limits.max_contexts = v;
            }
            run_cfg.validate()?;
            commands::contexts(&java_file, &run_cfg, dump_ast)
        }
        Command::Map { java_file, cfg, attention, uniform } => {
            let mut run_cfg = effective_config(&cfg)?;
            if let Some(path) = attention {
                run_cfg.attention_source = AttentionSource::File(path);
            } else if uniform {
                run_cfg.attention_source = AttentionSource::Uniform;
            }
            run_cfg.validate()?;
            commands::map(&java_file, &run_cfg)
        }
        Command::Eval { map_csv, gaze_csv, cfg, t_range, snippet_id } => {
            let mut run_cfg = effective_config(&cfg)?;
            if let Some(s) = &t_range {
                run_cfg.t_range = Some(parse_t_range(s)?);
            }
            run_cfg.validate()?;
            commands::eval(&map_csv, &gaze_csv, &run_cfg, snippet_id.as_deref())
        }
        Command::Corpus { manifest, cfg, k, k_label, cpl_stat } => {
            let run_cfg = effective_config(&cfg)?;
            let mut rule = attnmap::corpus::SelectionRule::uniform(k);
            for spec in &k_label {
                let (label, kv) = spec.split_once('=').ok_or_else(|| {
                    CliError::Config(format!("bad --k-label `{spec}`, expected `LABEL=K`"))
                })?;
                let kv: usize = kv
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad --k-label count in `{spec}`")))?;
                rule.per_label.insert(label.to_string(), kv);
            }
            commands::corpus(&manifest, &run_cfg, &rule, cpl_stat.into())
        }
        Command::Normalize { file, out } => commands::normalize(&file, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
