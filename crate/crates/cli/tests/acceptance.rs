//! Acceptance suite. One test per criterion; each prints a `pass` line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every oracle here is an independent re-implementation used only by the
//! tests: path enumeration by ancestor-set intersection, canonical strings
//! rebuilt from depths, per-path accumulation, a direct threshold sweep,
//! and the count-weighted rank statistic for AUC. The library is never
//! consulted for expected values.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use attnmap::attention::{aggregate_node_attention, PathAttention};
use attnmap::field::ScalarField;
use attnmap::gaze::{gaze_histogram, load_gaze, GazeHistogram, GazeStats};
use attnmap::pathctx::{canonical_string, extract_path_contexts, ExtractionLimits};
use attnmap::rocauc::{auc, binarize, evaluate, roc_curve, tpr_fpr, RocPoint};
use attnmap::spatial_map::{generate_attention_map, layout_tokens, ClipRect, LayoutConfig};
use attnmap::syntax::{parse_source, NodeId, NodeType, SourceSnippet, Span, SyntaxTree, TreeBuilder};
use attnmap::NodeAttention;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

// ======================================================================
// Oracles
// ======================================================================

mod oracle {
    use super::*;

    fn depths(tree: &SyntaxTree) -> HashMap<NodeId, usize> {
        let mut out = HashMap::new();
        for node in tree.nodes() {
            let mut d = 0;
            let mut cur = node.id;
            while let Some(p) = tree.get(cur).unwrap().parent {
                d += 1;
                cur = p;
            }
            out.insert(node.id, d);
        }
        out
    }

    fn ancestors(tree: &SyntaxTree, mut n: NodeId) -> Vec<NodeId> {
        let mut out = vec![n];
        while let Some(p) = tree.get(n).unwrap().parent {
            out.push(p);
            n = p;
        }
        out
    }

    pub fn terminals(tree: &SyntaxTree) -> Vec<NodeId> {
        let mut t: Vec<NodeId> =
            tree.nodes().filter(|n| n.is_terminal).map(|n| n.id).collect();
        t.sort_by_key(|&id| tree.get(id).unwrap().span);
        t
    }

    /// Leaf-to-leaf route via ancestor-set intersection.
    pub fn path(tree: &SyntaxTree, a: NodeId, b: NodeId) -> Vec<NodeId> {
        let up_a = ancestors(tree, a);
        let up_b = ancestors(tree, b);
        let in_b: HashSet<NodeId> = up_b.iter().copied().collect();
        let lca_pos = up_a.iter().position(|n| in_b.contains(n)).unwrap();
        let lca = up_a[lca_pos];
        let mut route: Vec<NodeId> = up_a[..=lca_pos].to_vec();
        let down: Vec<NodeId> = up_b
            .iter()
            .copied()
            .take_while(|&n| n != lca)
            .collect();
        route.extend(down.into_iter().rev());
        route
    }

    pub fn width(tree: &SyntaxTree, route: &[NodeId]) -> usize {
        let depth = depths(tree);
        let lca_pos = (0..route.len())
            .min_by_key(|&i| depth[&route[i]])
            .unwrap();
        let lca = route[lca_pos];
        let children = &tree.get(lca).unwrap().children;
        let idx = |n: NodeId| children.iter().position(|&c| c == n).unwrap();
        idx(route[lca_pos - 1]).abs_diff(idx(route[lca_pos + 1]))
    }

    /// Canonical serialization rebuilt from scratch: `^` when the walk goes
    /// shallower, `_` when it goes deeper.
    pub fn canonical(tree: &SyntaxTree, route: &[NodeId]) -> String {
        let depth = depths(tree);
        let text = |id: NodeId| tree.node_token(id).unwrap().unwrap().text.clone();
        let mut s = text(route[0]);
        s.push(',');
        for (i, &id) in route.iter().enumerate() {
            if i > 0 {
                s.push(if depth[&id] < depth[&route[i - 1]] { '^' } else { '_' });
            }
            s.push_str(tree.get(id).unwrap().type_name.as_str());
        }
        s.push(',');
        s.push_str(&text(route[route.len() - 1]));
        s
    }

    pub struct OracleContext {
        pub key: String,
        pub length: usize,
        pub width: usize,
        pub route: Vec<NodeId>,
    }

    /// All-pairs enumeration with limit filtering, in source order. The
    /// caller asserts the cap never binds.
    pub fn contexts(tree: &SyntaxTree, limits: &ExtractionLimits) -> Vec<OracleContext> {
        let terms = terminals(tree);
        let mut out = Vec::new();
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                let route = path(tree, terms[i], terms[j]);
                let length = route.len() - 1;
                let w = width(tree, &route);
                if length <= limits.max_length && w <= limits.max_width {
                    out.push(OracleContext {
                        key: canonical(tree, &route),
                        length,
                        width: w,
                        route,
                    });
                }
            }
        }
        assert!(out.len() <= limits.max_contexts, "oracle trees must stay under the cap");
        out
    }

    /// Per-node accumulation done path by path.
    pub fn aggregate(
        tree: &SyntaxTree,
        limits: &ExtractionLimits,
        records: &[PathAttention],
    ) -> (HashMap<NodeId, f64>, f64) {
        let mut by_key: HashMap<&str, f64> = HashMap::new();
        for r in records {
            by_key.insert(r.key.as_str(), r.value);
        }
        let mut sums: HashMap<NodeId, f64> = HashMap::new();
        let mut mass = 0.0;
        for ctx in contexts(tree, limits) {
            if let Some(&a) = by_key.get(ctx.key.as_str()) {
                for &n in &ctx.route {
                    *sums.entry(n).or_insert(0.0) += a;
                }
                mass += a * ctx.route.len() as f64;
            }
        }
        (sums, mass)
    }

    /// Direct threshold sweep: every distinct value plus sentinels, each
    /// binarized and scored from first principles.
    pub fn roc_sweep(field: &ScalarField, gplus: &GazeHistogram) -> Vec<RocPoint> {
        let mut distinct: Vec<f64> = field.values().to_vec();
        distinct.sort_by(|a, b| b.total_cmp(a));
        distinct.dedup();
        let pos: u64 = gplus.counts().iter().sum();
        let neg = gplus.counts().iter().filter(|&&c| c == 0).count() as u64;
        assert!(pos > 0 && neg > 0);

        let score = |t: f64| -> (f64, f64) {
            let mut tp = 0u64;
            let mut fp = 0u64;
            for (&v, &c) in field.values().iter().zip(gplus.counts()) {
                if v > t {
                    if c > 0 {
                        tp += c;
                    } else {
                        fp += 1;
                    }
                }
            }
            (fp as f64 / neg as f64, tp as f64 / pos as f64)
        };

        let mut thresholds = vec![distinct[0] + 1.0];
        thresholds.extend(&distinct);
        let mut raw: Vec<RocPoint> = thresholds
            .into_iter()
            .map(|t| {
                let (fpr, tpr) = score(t);
                RocPoint { threshold: t, fpr, tpr }
            })
            .collect();
        raw.push(RocPoint { threshold: distinct[distinct.len() - 1] - 1.0, fpr: 1.0, tpr: 1.0 });

        let mut points: Vec<RocPoint> = Vec::new();
        for p in raw {
            if points.last().map(|q| (q.fpr, q.tpr) == (p.fpr, p.tpr)).unwrap_or(false) {
                continue;
            }
            points.push(p);
        }
        points
    }

    /// Count-weighted rank statistic: P(gazed draw beats a random non-gazed
    /// pixel) with ties at half weight.
    pub fn rank_auc(field: &ScalarField, gplus: &GazeHistogram) -> f64 {
        let mut num = 0.0;
        let mut pos_weight = 0u64;
        let neg: Vec<f64> = field
            .values()
            .iter()
            .zip(gplus.counts())
            .filter(|(_, &c)| c == 0)
            .map(|(&v, _)| v)
            .collect();
        for (&v, &c) in field.values().iter().zip(gplus.counts()) {
            if c == 0 {
                continue;
            }
            pos_weight += c;
            for &u in &neg {
                if v > u {
                    num += c as f64;
                } else if v == u {
                    num += c as f64 * 0.5;
                }
            }
        }
        num / (pos_weight as f64 * neg.len() as f64)
    }
}

// ======================================================================
// Generators
// ======================================================================

/// Random tree: leaves on a line, contiguous runs grouped bottom-up until a
/// single root remains. Unary runs create deep chains.
fn random_tree(rng: &mut ChaCha8Rng, max_terminals: usize) -> SyntaxTree {
    let n = rng.random_range(2..=max_terminals);
    let mut b = TreeBuilder::new();
    let mut layer: Vec<(usize, Span)> = (0..n)
        .map(|i| {
            let span = Span::on_line(0, (3 * i) as u32, 1);
            (b.leaf(NodeType::NameExpr, span, format!("t{i}")), span)
        })
        .collect();
    let pool = [
        NodeType::Block,
        NodeType::ExprStmt,
        NodeType::MethodCall,
        NodeType::IfStmt,
        NodeType::WhileStmt,
        NodeType::Assign,
        NodeType::FieldAccess,
        NodeType::Parameter,
    ];
    while layer.len() > 1 {
        // Mostly grouping (which shrinks the layer), sometimes a unary
        // wrap for depth variety.
        let unary = rng.random_bool(0.2);
        let start = if unary {
            rng.random_range(0..layer.len())
        } else {
            rng.random_range(0..layer.len() - 1)
        };
        let take = if unary {
            1
        } else {
            rng.random_range(2..=(layer.len() - start).min(4))
        };
        let group: Vec<(usize, Span)> = layer.drain(start..start + take).collect();
        let span = group.iter().fold(group[0].1, |acc, (_, s)| acc.hull(s));
        let ty = pool[rng.random_range(0..pool.len())];
        let id = b.node(ty, span, group.iter().map(|(i, _)| *i).collect());
        layer.insert(start, (id, span));
    }
    let root = layer[0].0;
    b.finish(root, None).unwrap()
}

/// Ten fixed shapes, from stars to deep chains, at most 12 terminals.
fn hand_built_trees() -> Vec<SyntaxTree> {
    let leaf_span = |i: usize| Span::on_line(0, (3 * i) as u32, 1);
    let mut trees = Vec::new();

    // 1: two siblings.
    let mut b = TreeBuilder::new();
    let l0 = b.leaf(NodeType::NameExpr, leaf_span(0), "a");
    let l1 = b.leaf(NodeType::IntegerLiteral, leaf_span(1), "1");
    let root = b.node(NodeType::Block, Span::new(0, 0, 0, 4), vec![l0, l1]);
    trees.push(b.finish(root, None).unwrap());

    // 2: star of 12 leaves (width filter bites).
    let mut b = TreeBuilder::new();
    let leaves: Vec<usize> =
        (0..12).map(|i| b.leaf(NodeType::NameExpr, leaf_span(i), format!("s{i}"))).collect();
    let root = b.node(NodeType::MethodCall, Span::new(0, 0, 0, 34), leaves);
    trees.push(b.finish(root, None).unwrap());

    // 3: deep chain (length filter bites).
    let mut b = TreeBuilder::new();
    let far = b.leaf(NodeType::NameExpr, leaf_span(9), "deep");
    let mut wrapped = far;
    for _ in 0..9 {
        wrapped = b.node(NodeType::ExprStmt, Span::new(0, 27, 0, 28), vec![wrapped]);
    }
    let near = b.leaf(NodeType::NameExpr, leaf_span(0), "near");
    let root = b.node(NodeType::Block, Span::new(0, 0, 0, 28), vec![near, wrapped]);
    trees.push(b.finish(root, None).unwrap());

    // 4: balanced binary over 8 leaves.
    let mut b = TreeBuilder::new();
    let mut level: Vec<(usize, Span)> = (0..8)
        .map(|i| (b.leaf(NodeType::NameExpr, leaf_span(i), format!("b{i}")), leaf_span(i)))
        .collect();
    while level.len() > 1 {
        level = level
            .chunks(2)
            .map(|pair| {
                let span = pair.iter().fold(pair[0].1, |acc, (_, s)| acc.hull(s));
                (b.node(NodeType::Plus, span, pair.iter().map(|(i, _)| *i).collect()), span)
            })
            .collect();
    }
    trees.push(b.finish(level[0].0, None).unwrap());

    // 5: left comb.
    let mut b = TreeBuilder::new();
    let mut acc = b.leaf(NodeType::NameExpr, leaf_span(0), "c0");
    let mut acc_span = leaf_span(0);
    for i in 1..6 {
        let leaf = b.leaf(NodeType::NameExpr, leaf_span(i), format!("c{i}"));
        acc_span = acc_span.hull(&leaf_span(i));
        acc = b.node(NodeType::Minus, acc_span, vec![acc, leaf]);
    }
    trees.push(b.finish(acc, None).unwrap());

    // 6: right comb.
    let mut b = TreeBuilder::new();
    let mut acc = b.leaf(NodeType::NameExpr, leaf_span(5), "r5");
    let mut acc_span = leaf_span(5);
    for i in (0..5).rev() {
        let leaf = b.leaf(NodeType::NameExpr, leaf_span(i), format!("r{i}"));
        acc_span = acc_span.hull(&leaf_span(i));
        acc = b.node(NodeType::Multiply, acc_span, vec![leaf, acc]);
    }
    trees.push(b.finish(acc, None).unwrap());

    // 7: mixed arity, two levels.
    let mut b = TreeBuilder::new();
    let g1: Vec<usize> =
        (0..3).map(|i| b.leaf(NodeType::NameExpr, leaf_span(i), format!("m{i}"))).collect();
    let left = b.node(NodeType::MethodCall, Span::new(0, 0, 0, 7), g1);
    let g2: Vec<usize> =
        (3..7).map(|i| b.leaf(NodeType::IntegerLiteral, leaf_span(i), format!("{i}"))).collect();
    let right = b.node(NodeType::ArrayInitializer, Span::new(0, 9, 0, 19), g2);
    let root = b.node(NodeType::Block, Span::new(0, 0, 0, 19), vec![left, right]);
    trees.push(b.finish(root, None).unwrap());

    // 8: two deep arms joined at the root.
    let mut b = TreeBuilder::new();
    let mut left = b.leaf(NodeType::NameExpr, leaf_span(0), "la");
    for _ in 0..3 {
        left = b.node(NodeType::ExprStmt, leaf_span(0), vec![left]);
    }
    let mut right = b.leaf(NodeType::NameExpr, leaf_span(4), "ra");
    for _ in 0..3 {
        right = b.node(NodeType::IfStmt, leaf_span(4), vec![right]);
    }
    let root = b.node(NodeType::Block, Span::new(0, 0, 0, 13), vec![left, right]);
    trees.push(b.finish(root, None).unwrap());

    // 9: single terminal (no pairs at all).
    let mut b = TreeBuilder::new();
    let only = b.leaf(NodeType::NameExpr, leaf_span(0), "only");
    let root = b.node(NodeType::CompilationUnit, Span::new(0, 0, 0, 1), vec![only]);
    trees.push(b.finish(root, None).unwrap());

    // 10: leaves behind unary stubs of varied depth under one root.
    let mut b = TreeBuilder::new();
    let mut kids = Vec::new();
    for i in 0..6 {
        let mut node = b.leaf(NodeType::NameExpr, leaf_span(i), format!("u{i}"));
        for _ in 0..(i % 3) {
            node = b.node(NodeType::Parameter, leaf_span(i), vec![node]);
        }
        kids.push(node);
    }
    let root = b.node(NodeType::Block, Span::new(0, 0, 0, 16), kids);
    trees.push(b.finish(root, None).unwrap());

    trees
}

// ======================================================================
// Criteria
// ======================================================================

#[test]
fn acceptance_01_path_context_oracle_equivalence() {
    let started = Instant::now();
    let limits = ExtractionLimits::default();
    let trees = hand_built_trees();
    assert_eq!(trees.len(), 10);
    for (i, tree) in trees.iter().enumerate() {
        let got = extract_path_contexts(tree, &limits);
        let want = oracle::contexts(tree, &limits);
        assert_eq!(got.len(), want.len(), "tree {i}: context count");
        for (g, w) in got.iter().zip(&want) {
            assert_eq!(canonical_string(tree, g), w.key, "tree {i}: canonical string");
            assert_eq!(g.length, w.length, "tree {i}: length");
            assert_eq!(g.width, w.width, "tree {i}: width");
            assert_eq!(g.node_path, w.route, "tree {i}: node path");
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("acceptance 1 (path-context oracle equivalence, 10 trees): pass ({elapsed:?})");
}

#[test]
fn acceptance_02_aggregation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA66);
    let limits = ExtractionLimits::default();
    for case in 0..50 {
        let tree = random_tree(&mut rng, 12);
        let ctxs = extract_path_contexts(&tree, &limits);
        // Randomly weight a random subset of the extracted keys.
        let mut records = Vec::new();
        for pc in &ctxs {
            if rng.random_bool(0.7) {
                records.push(PathAttention {
                    key: canonical_string(&tree, pc),
                    value: rng.random_range(0.0..2.0),
                });
            }
        }
        let (got, stats) = aggregate_node_attention(&tree, &ctxs, &records);
        let (want, want_mass) = oracle::aggregate(&tree, &limits, &records);

        for node in tree.nodes() {
            let w = want.get(&node.id).copied().unwrap_or(0.0);
            assert!(
                (got.value(node.id) - w).abs() <= 1e-12,
                "case {case}, node {}: {} vs {w}",
                node.id,
                got.value(node.id)
            );
        }
        // Mass conservation: node total equals sum of weight x path size.
        let total = got.total_mass();
        assert!(
            (total - want_mass).abs() <= 1e-9 * want_mass.abs().max(1.0),
            "case {case}: mass {total} vs {want_mass}"
        );
        assert!((stats.total_mass - want_mass).abs() <= 1e-9 * want_mass.abs().max(1.0));
    }
    println!("acceptance 2 (aggregation oracle, 50 randomized instances): pass");
}

#[test]
fn acceptance_03_gaussian_peak_superposition_scaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    for case in 0..20 {
        // Even cells and half-pixel margins put token centers exactly on
        // pixel centers.
        let cell_w = [6.0, 8.0, 10.0, 12.0][rng.random_range(0..4)];
        let cell_h = [8.0, 12.0][rng.random_range(0..2)];
        let cfg = LayoutConfig {
            cell_w,
            cell_h,
            margin_x: 0.5,
            margin_y: 0.5,
            stimulus_w: 1920,
            stimulus_h: 1080,
            clip: ClipRect { x0: 0.0, y0: 0.0, side: 240 },
        };

        // Three tokens on widely separated lines: spill between them is far
        // below the 1e-6 peak tolerance.
        let mut b = TreeBuilder::new();
        let mut leaves = Vec::new();
        let mut spans = Vec::new();
        for k in 0..3 {
            let line = 3 * k as u32;
            let col = rng.random_range(0..6) * 2;
            let chars = rng.random_range(1..=3);
            let span = Span::on_line(line, col, chars);
            spans.push(span);
            leaves.push(b.leaf(NodeType::NameExpr, span, "x".repeat(chars as usize)));
        }
        let hull = spans.iter().fold(spans[0], |acc, s| acc.hull(s));
        let root = b.node(NodeType::Block, hull, leaves);
        let tree = b.finish(root, None).unwrap();

        let geoms = layout_tokens(&tree, &cfg).unwrap();
        assert_eq!(geoms.len(), 3);
        let mut values = vec![0.0; tree.len()];
        let mut token_attn = Vec::new();
        for g in &geoms {
            let a = rng.random_range(0.1..2.0);
            values[g.token.owner.0] = a;
            token_attn.push((g.clone(), a));
        }
        let attn = NodeAttention::from_values(values.clone());
        let field = generate_attention_map(&geoms, &attn, &cfg, 1).unwrap();

        // Peak contract at each token's center cell.
        for (g, a) in &token_attn {
            let cx = (g.center_x - 0.5) as usize;
            let cy = (g.center_y - 0.5) as usize;
            let peak = field.at(cx, cy);
            assert!(
                (peak - a).abs() <= 1e-6 * a,
                "case {case}: peak {peak} vs attention {a}"
            );
        }

        // Superposition: first token alone plus the other two equals all
        // three together.
        let map_of = |geo: &[attnmap::TokenGeometry]| {
            generate_attention_map(geo, &attn, &cfg, 1).unwrap()
        };
        let a_only = map_of(&geoms[..1]);
        let bc_only = map_of(&geoms[1..]);
        for i in 0..field.values().len() {
            let sum = a_only.values()[i] + bc_only.values()[i];
            let whole = field.values()[i];
            assert!(
                (sum - whole).abs() <= 1e-9 * whole.abs().max(1e-12),
                "case {case}: superposition at {i}: {sum} vs {whole}"
            );
        }

        // Scaling by a positive constant.
        let c = rng.random_range(0.2..3.0);
        let scaled_attn = NodeAttention::from_values(values.iter().map(|v| v * c).collect());
        let scaled = generate_attention_map(&geoms, &scaled_attn, &cfg, 1).unwrap();
        for i in 0..field.values().len() {
            let want = field.values()[i] * c;
            let got = scaled.values()[i];
            assert!(
                (got - want).abs() <= 1e-9 * want.abs().max(1e-12),
                "case {case}: scaling at {i}: {got} vs {want}"
            );
        }
    }
    println!("acceptance 3 (gaussian peak / superposition / scaling, 20 layouts): pass");
}

#[test]
fn acceptance_04_tpr_fpr_equation_fidelity() {
    // Hand-enumerated 2x2: counts [[1,0],[0,2]], map top row selected.
    let gplus = GazeHistogram::from_counts(2, 2, vec![1, 0, 0, 2]);
    let gminus = attnmap::gaze::negate_histogram(&gplus);
    let cbin = binarize(
        &ScalarField::from_values(2, 2, vec![1.0, 1.0, 0.0, 0.0]).unwrap(),
        0.5,
    );
    let (tpr, fpr) = tpr_fpr(&gplus, &gminus, &cbin).unwrap();
    assert_eq!(tpr, 1.0 / 3.0);
    assert_eq!(fpr, 1.0 / 2.0);

    // Binarize endpoints: at/above the maximum nothing passes, below the
    // minimum everything does.
    let f = ScalarField::from_values(2, 2, vec![0.2, 0.8, 0.4, 0.6]).unwrap();
    let none = binarize(&f, 0.8);
    let all = binarize(&f, 0.1);
    assert_eq!(tpr_fpr(&gplus, &gminus, &none).unwrap(), (0.0, 0.0));
    assert_eq!(tpr_fpr(&gplus, &gminus, &all).unwrap(), (1.0, 1.0));
    println!("acceptance 4 (TPR/FPR equation fidelity): pass");
}

#[test]
fn acceptance_05_auc_against_the_rank_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut checked = 0;
    while checked < 100 {
        let w = rng.random_range(2..=8);
        let h = rng.random_range(2..=8);
        // Coarse values make ties common, which is exactly the hard case.
        let values: Vec<f64> =
            (0..w * h).map(|_| rng.random_range(0..10) as f64 / 10.0).collect();
        let counts: Vec<u64> =
            (0..w * h).map(|_| if rng.random_bool(0.5) { rng.random_range(1..4) } else { 0 }).collect();
        if counts.iter().all(|&c| c == 0) || counts.iter().all(|&c| c > 0) {
            continue;
        }
        checked += 1;
        let field = ScalarField::from_values(w, h, values).unwrap();
        let gplus = GazeHistogram::from_counts(w, h, counts);

        let roc = roc_curve(&field, &gplus).unwrap();
        let sweep = oracle::roc_sweep(&field, &gplus);
        assert_eq!(roc.len(), sweep.len(), "curve length");
        for (g, o) in roc.iter().zip(&sweep) {
            assert_eq!((g.threshold, g.fpr, g.tpr), (o.threshold, o.fpr, o.tpr));
        }

        let got = auc(&roc).unwrap();
        let want = oracle::rank_auc(&field, &gplus);
        assert!((got - want).abs() <= 1e-9, "auc {got} vs rank statistic {want}");
    }

    // Exact endpoint laws.
    let constant = ScalarField::from_values(3, 3, vec![0.7; 9]).unwrap();
    let gplus = GazeHistogram::from_counts(3, 3, vec![1, 0, 0, 2, 0, 0, 0, 0, 1]);
    let roc = roc_curve(&constant, &gplus).unwrap();
    assert_eq!(roc.len(), 2);
    assert_eq!(auc(&roc).unwrap(), 0.5);

    let separated =
        ScalarField::from_values(2, 2, vec![0.9, 0.8, 0.1, 0.2]).unwrap();
    let gplus = GazeHistogram::from_counts(2, 2, vec![2, 1, 0, 0]);
    assert_eq!(auc(&roc_curve(&separated, &gplus).unwrap()).unwrap(), 1.0);

    println!("acceptance 5 (AUC vs rank oracle, 100 grids): pass");
}

fn end_to_end_field() -> (ScalarField, LayoutConfig) {
    let cfg: LayoutConfig =
        serde_json::from_str(&fs::read_to_string(fixtures().join("layout.json")).unwrap()).unwrap();
    let snippet =
        SourceSnippet::from_file(&fixtures().join("java/substring_count.java")).unwrap();
    let tree = parse_source(&snippet).unwrap();
    let ctxs = extract_path_contexts(&tree, &ExtractionLimits::default());
    let records = attnmap::attention::load_attention(
        fs::read(fixtures().join("attention/substring_count.tsv")).unwrap().as_slice(),
    )
    .unwrap();
    let (attn, stats) = aggregate_node_attention(&tree, &ctxs, &records);
    assert_eq!(stats.unmatched, 0, "fixture attention covers every context");
    let geoms = layout_tokens(&tree, &cfg).unwrap();
    let field = generate_attention_map(&geoms, &attn, &cfg, 4).unwrap();
    (field, cfg)
}

/// Draw `n` cells with probability proportional to `weight(value)`, then
/// write a gaze CSV at those cell centers in stimulus coordinates.
fn sampled_gaze_csv(
    field: &ScalarField,
    cfg: &LayoutConfig,
    weight: impl Fn(f64) -> f64,
    n: usize,
    rng: &mut ChaCha8Rng,
    path: &std::path::Path,
) {
    let weights: Vec<f64> = field.values().iter().map(|&v| weight(v)).collect();
    let mut cum = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in &weights {
        acc += w;
        cum.push(acc);
    }
    assert!(acc > 0.0);
    let d = (cfg.clip.side as usize / field.width()) as f64;
    let mut csv = String::from("timestamp,x,y\n");
    for i in 0..n {
        let r = rng.random_range(0.0..acc);
        let idx = cum.partition_point(|&c| c <= r).min(weights.len() - 1);
        let cx = (idx % field.width()) as f64;
        let cy = (idx / field.width()) as f64;
        let x = cfg.clip.x0 + cx * d + d / 2.0;
        let y = cfg.clip.y0 + cy * d + d / 2.0;
        csv.push_str(&format!("{},{x},{y}\n", i as f64 / 120.0));
    }
    fs::write(path, csv).unwrap();
}

fn auc_of_gaze(field: &ScalarField, cfg: &LayoutConfig, gaze_path: &std::path::Path) -> f64 {
    let file = fs::File::open(gaze_path).unwrap();
    let (points, stats) = load_gaze(std::io::BufReader::new(file), cfg, None).unwrap();
    let downsample = cfg.clip.side / field.width() as u32;
    let gplus =
        gaze_histogram(&points, cfg.clip.side, downsample, stats.removed_fraction).unwrap();
    evaluate(field, &gplus, GazeStats::default(), "synthetic").unwrap().auc
}

#[test]
fn acceptance_06_synthetic_end_to_end() {
    let started = Instant::now();
    let (field, cfg) = end_to_end_field();
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let max = field.max();

    let hot = dir.path().join("hot.csv");
    sampled_gaze_csv(&field, &cfg, |v| v, 5000, &mut rng, &hot);
    let auc_hot = auc_of_gaze(&field, &cfg, &hot);
    assert!(auc_hot > 0.9, "map-proportional gaze must score high, got {auc_hot}");

    let flat = dir.path().join("flat.csv");
    sampled_gaze_csv(&field, &cfg, |_| 1.0, 5000, &mut rng, &flat);
    let auc_flat = auc_of_gaze(&field, &cfg, &flat);
    assert!(
        (0.45..=0.55).contains(&auc_flat),
        "uniform gaze must score near chance, got {auc_flat}"
    );

    let anti = dir.path().join("anti.csv");
    sampled_gaze_csv(&field, &cfg, |v| max - v, 5000, &mut rng, &anti);
    let auc_anti = auc_of_gaze(&field, &cfg, &anti);
    assert!(auc_anti < 0.5, "anti-map gaze must score below chance, got {auc_anti}");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!(
        "acceptance 6 (synthetic end-to-end: hot {auc_hot:.3}, flat {auc_flat:.3}, anti {auc_anti:.3}): pass ({elapsed:?})"
    );
}

#[test]
fn acceptance_07_monotone_transform_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x70);
    for _ in 0..10 {
        let w = rng.random_range(3..=8);
        let h = rng.random_range(3..=8);
        let values: Vec<f64> = (0..w * h).map(|_| rng.random_range(0.0..4.0)).collect();
        let counts: Vec<u64> =
            (0..w * h).map(|_| if rng.random_bool(0.4) { rng.random_range(1..5) } else { 0 }).collect();
        if counts.iter().all(|&c| c == 0) || counts.iter().all(|&c| c > 0) {
            continue;
        }
        let field = ScalarField::from_values(w, h, values.clone()).unwrap();
        let gplus = GazeHistogram::from_counts(w, h, counts);
        let base_roc = roc_curve(&field, &gplus).unwrap();
        let base_pts: Vec<(f64, f64)> = base_roc.iter().map(|p| (p.fpr, p.tpr)).collect();
        let base_auc = auc(&base_roc).unwrap();

        for f in [|x: f64| x * x * x, |x: f64| 2.0 * x + 1.0] {
            let mapped =
                ScalarField::from_values(w, h, values.iter().map(|&v| f(v)).collect()).unwrap();
            let roc = roc_curve(&mapped, &gplus).unwrap();
            let pts: Vec<(f64, f64)> = roc.iter().map(|p| (p.fpr, p.tpr)).collect();
            assert_eq!(pts, base_pts, "ROC points moved under a monotone transform");
            assert!((auc(&roc).unwrap() - base_auc).abs() <= 1e-12);
        }
    }
    println!("acceptance 7 (monotone-transform invariance): pass");
}

#[test]
fn acceptance_08_corpus_rules() {
    use attnmap::corpus::{compute_stats, normalize_indent, select_snippets, SelectionRule};

    // Idempotence over 1000 random strings.
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0);
    let alphabet: Vec<char> =
        "ab \t\nxyz{}();=+-\u{3bb}\u{e9}".chars().collect();
    for _ in 0..1000 {
        let len = rng.random_range(0..64);
        let s: String =
            (0..len).map(|_| alphabet[rng.random_range(0..alphabet.len())]).collect();
        let once = normalize_indent(&s);
        assert_eq!(normalize_indent(&once), once);
        assert_eq!(once.chars().count(), s.chars().count() + s.matches('\t').count());
        assert!(!once.contains('\t'));
    }

    // The committed snippet is 21 lines.
    let snippet =
        SourceSnippet::from_file(&fixtures().join("java/substring_count.java")).unwrap();
    let stats = compute_stats(&snippet, "substring_search");
    assert_eq!(stats.loc, 21);

    // 11 labels, one picked at 12 and ten at 6: exactly 72 selected.
    let mut all = Vec::new();
    for label_idx in 0..11 {
        let label = format!("algo{label_idx:02}");
        let count = if label_idx == 0 { 15 } else { 9 };
        for j in 0..count {
            let text = "x\n".repeat(10 + (j * 7 + label_idx) % 13);
            let s = SourceSnippet::new(format!("{label}-{j:02}"), text);
            all.push(compute_stats(&s, &label));
        }
    }
    let mut rule = SelectionRule::uniform(6);
    rule.per_label.insert("algo00".into(), 12);
    let selected = select_snippets(&mut all, &rule).unwrap();
    assert_eq!(selected.len(), 72);

    println!("acceptance 8 (corpus rules: idempotence, LOC, 72-snippet selection): pass");
}

#[test]
fn acceptance_09_cmd_map_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let java = fixtures().join("java/substring_count.java");
    let att = fixtures().join("attention/substring_count.tsv");
    let mut artifacts = Vec::new();
    for sub in ["run1", "run2"] {
        let out_dir = dir.path().join(sub);
        let status = Command::new(env!("CARGO_BIN_EXE_attnmap"))
            .args([
                "map",
                java.to_str().unwrap(),
                "--attention",
                att.to_str().unwrap(),
                "--downsample",
                "4",
                "--out",
                out_dir.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(status.success());
        artifacts.push((
            fs::read(out_dir.join("substring_count_map.csv")).unwrap(),
            fs::read(out_dir.join("substring_count_map.pgm")).unwrap(),
        ));
    }
    assert_eq!(artifacts[0].0, artifacts[1].0, "map CSV must be byte-identical");
    assert_eq!(artifacts[0].1, artifacts[1].1, "map PGM must be byte-identical");
    println!("acceptance 9 (cmd_map byte-identical outputs): pass");
}
