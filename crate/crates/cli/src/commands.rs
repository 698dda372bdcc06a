//! Subcommand implementations. Each one is a thin orchestration over the
//! library: parse, extract, bind, aggregate, lay out, paint, score, write.

use std::fs::{self, File};
use std::io::BufReader;
use std::path::Path;

use attnmap::attention::{aggregate_node_attention, load_attention, uniform_attention};
use attnmap::corpus::{compute_stats_with, load_manifest, normalize_indent, select_snippets, CplStat, SelectionRule};
use attnmap::field::ScalarField;
use attnmap::gaze::{gaze_histogram, load_gaze, GazeStats};
use attnmap::pathctx::{canonical_string, extract_path_contexts};
use attnmap::rocauc::evaluate;
use attnmap::spatial_map::{generate_attention_map, layout_tokens};
use attnmap::syntax::{parse_source, SourceSnippet, SyntaxTree};
use serde::Serialize;

use crate::config::{AttentionSource, RunConfig};
use crate::out::write_atomic;
use crate::CliError;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn load_snippet(path: &Path) -> Result<(SourceSnippet, SyntaxTree), CliError> {
    let snippet = SourceSnippet::from_file(path)?;
    let tree = parse_source(&snippet)?;
    Ok((snippet, tree))
}

pub fn contexts(java_file: &Path, cfg: &RunConfig, dump_ast: bool) -> Result<(), CliError> {
    let (_, tree) = load_snippet(java_file)?;
    if dump_ast {
        print!("{}", tree.dump_ast());
        return Ok(());
    }
    let ctxs = extract_path_contexts(&tree, &cfg.limits);
    let mut buf = String::new();
    for pc in &ctxs {
        buf.push_str(&canonical_string(&tree, pc));
        buf.push('\n');
    }
    print!("{buf}");
    Ok(())
}

#[derive(Serialize)]
struct MapDiagnostics<'a> {
    snippet_id: &'a str,
    tool_version: &'a str,
    config_digest: &'a str,
    context_count: usize,
    matched: usize,
    unmatched: usize,
    node_mass_total: f64,
    /// Attention mass on nodes without a representative token; it produces
    /// no Gaussian.
    tokenless_mass: f64,
    field_width: usize,
    field_height: usize,
    field_max: f64,
    warnings: Vec<String>,
}

pub fn map(java_file: &Path, cfg: &RunConfig) -> Result<(), CliError> {
    let (snippet, tree) = load_snippet(java_file)?;
    let ctxs = extract_path_contexts(&tree, &cfg.limits);
    let mut warnings = Vec::new();

    let records = match &cfg.attention_source {
        AttentionSource::Uniform => {
            if ctxs.is_empty() {
                warnings.push("no path contexts extracted; map will be all zeros".to_string());
                Vec::new()
            } else {
                uniform_attention(&tree, &ctxs)?
            }
        }
        AttentionSource::File(path) => {
            let file = File::open(path).map_err(|e| {
                CliError::Attention(format!("cannot open attention file {}: {e}", path.display()))
            })?;
            load_attention(BufReader::new(file))?
        }
    };
    if records.is_empty() && !ctxs.is_empty() {
        warnings.push("empty attention input; map will be all zeros".to_string());
    }

    let (node_attn, stats) = aggregate_node_attention(&tree, &ctxs, &records);
    if stats.unmatched > 0 {
        warnings.push(format!("{} contexts had no attention record", stats.unmatched));
    }
    let tokenless_mass: f64 = tree
        .nodes()
        .filter(|n| tree.node_token(n.id).unwrap().is_none())
        .map(|n| node_attn.value(n.id))
        .sum();

    let geoms = layout_tokens(&tree, &cfg.layout)?;
    let field = generate_attention_map(&geoms, &node_attn, &cfg.layout, cfg.downsample)?;

    let stem = &snippet.id;
    let csv_path = cfg.output_dir.join(format!("{stem}_map.csv"));
    let pgm_path = cfg.output_dir.join(format!("{stem}_map.pgm"));
    let diag_path = cfg.output_dir.join(format!("{stem}_diagnostics.json"));

    let mut csv = Vec::new();
    field.write_csv(&mut csv)?;
    write_atomic(&csv_path, &csv)?;
    let mut pgm = Vec::new();
    field.write_pgm(&mut pgm)?;
    write_atomic(&pgm_path, &pgm)?;

    let diag = MapDiagnostics {
        snippet_id: stem,
        tool_version: TOOL_VERSION,
        config_digest: &cfg.digest(),
        context_count: ctxs.len(),
        matched: stats.matched,
        unmatched: stats.unmatched,
        node_mass_total: stats.total_mass,
        tokenless_mass,
        field_width: field.width(),
        field_height: field.height(),
        field_max: field.max(),
        warnings: warnings.clone(),
    };
    let mut json = serde_json::to_vec_pretty(&diag).expect("diagnostics serialize");
    json.push(b'\n');
    write_atomic(&diag_path, &json)?;

    for w in &warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "map: {} contexts ({} matched), field {}x{}, max {} -> {}",
        ctxs.len(),
        stats.matched,
        field.width(),
        field.height(),
        field.max(),
        csv_path.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct EvalReportOut<'a> {
    snippet_id: &'a str,
    auc: f64,
    n_thresholds: usize,
    gaze_stats: GazeStats,
    tool_version: &'a str,
    config_digest: &'a str,
}

pub fn eval(
    map_csv: &Path,
    gaze_csv: &Path,
    cfg: &RunConfig,
    snippet_id: Option<&str>,
) -> Result<(), CliError> {
    let file = File::open(map_csv)
        .map_err(|e| CliError::Other(format!("cannot open map {}: {e}", map_csv.display())))?;
    let field = ScalarField::read_csv(BufReader::new(file))?;
    if field.width() != field.height() {
        return Err(CliError::Config(format!(
            "map grid {}x{} is not square",
            field.width(),
            field.height()
        )));
    }
    let side = cfg.layout.clip.side;
    if field.width() == 0 || !(side as usize).is_multiple_of(field.width()) {
        return Err(CliError::Config(format!(
            "map grid {} does not tile the clip side {side}",
            field.width()
        )));
    }
    let downsample = side / field.width() as u32;

    let gaze_file = File::open(gaze_csv)
        .map_err(|e| CliError::Other(format!("cannot open gaze {}: {e}", gaze_csv.display())))?;
    let (points, stats) = load_gaze(BufReader::new(gaze_file), &cfg.layout, cfg.t_range)?;
    if stats.nonmonotonic > 0 {
        eprintln!("warning: {} gaze samples with non-monotonic timestamps", stats.nonmonotonic);
    }
    let gplus = gaze_histogram(&points, side, downsample, stats.removed_fraction)?;

    let id = snippet_id
        .map(str::to_string)
        .or_else(|| {
            map_csv
                .file_stem()
                .map(|s| s.to_string_lossy().trim_end_matches("_map").to_string())
        })
        .unwrap_or_else(|| "snippet".to_string());
    let report = evaluate(&field, &gplus, stats, &id)?;

    let report_path = cfg.output_dir.join(format!("{id}_report.json"));
    let roc_path = cfg.output_dir.join(format!("{id}_roc.csv"));

    let out = EvalReportOut {
        snippet_id: &report.snippet_id,
        auc: report.auc,
        n_thresholds: report.n_thresholds,
        gaze_stats: report.gaze_stats,
        tool_version: TOOL_VERSION,
        config_digest: &cfg.digest(),
    };
    let mut json = serde_json::to_vec_pretty(&out).expect("report serializes");
    json.push(b'\n');
    write_atomic(&report_path, &json)?;

    let mut roc = String::from("threshold,fpr,tpr\n");
    for p in &report.roc {
        roc.push_str(&format!("{},{},{}\n", p.threshold, p.fpr, p.tpr));
    }
    write_atomic(&roc_path, roc.as_bytes())?;

    eprintln!(
        "eval: auc {:.4} over {} thresholds ({} gaze points) -> {}",
        report.auc,
        report.n_thresholds,
        report.gaze_stats.retained,
        report_path.display()
    );
    Ok(())
}

pub fn corpus(
    manifest: &Path,
    cfg: &RunConfig,
    rule: &SelectionRule,
    cpl_stat: CplStat,
) -> Result<(), CliError> {
    let file = File::open(manifest)
        .map_err(|e| CliError::Config(format!("cannot open manifest {}: {e}", manifest.display())))?;
    let entries = load_manifest(BufReader::new(file))
        .map_err(|e| CliError::Config(e.to_string()))?;
    let base = manifest.parent().unwrap_or(Path::new("."));

    let mut stats = Vec::with_capacity(entries.len());
    for entry in &entries {
        let path = if entry.path.is_absolute() { entry.path.clone() } else { base.join(&entry.path) };
        let bytes = fs::read(&path)
            .map_err(|e| CliError::Other(format!("cannot read {}: {e}", path.display())))?;
        let raw = String::from_utf8(bytes)
            .map_err(|_| CliError::Parse(format!("{} is not valid UTF-8", path.display())))?;
        let snippet = SourceSnippet::new(entry.id.clone(), normalize_indent(&raw));
        stats.push(compute_stats_with(&snippet, entry.label.clone(), cpl_stat));
    }
    let selected = select_snippets(&mut stats, rule).map_err(|e| CliError::Other(e.to_string()))?;

    let mut csv = String::from("id,label,loc,cpl_mean,deviation,selected\n");
    for s in &stats {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            s.id,
            s.label,
            s.loc,
            s.cpl_mean,
            s.deviation,
            selected.contains(&s.id)
        ));
    }
    let csv_path = cfg.output_dir.join("corpus_stats.csv");
    write_atomic(&csv_path, csv.as_bytes())?;

    let mut listing = String::new();
    for id in &selected {
        listing.push_str(id);
        listing.push('\n');
    }
    print!("{listing}");
    eprintln!("corpus: {} of {} snippets selected -> {}", selected.len(), stats.len(), csv_path.display());
    Ok(())
}

pub fn normalize(file: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let bytes =
        fs::read(file).map_err(|e| CliError::Other(format!("cannot read {}: {e}", file.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::Parse(format!("{} is not valid UTF-8", file.display())))?;
    let normalized = normalize_indent(&text);
    match out {
        Some(path) => write_atomic(path, normalized.as_bytes())?,
        None => print!("{normalized}"),
    }
    Ok(())
}
