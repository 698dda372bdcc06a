//! Leaf-to-leaf path contexts.
//!
//! A path context joins two terminals of a syntax tree through their lowest
//! common ancestor. Extraction enumerates every terminal pair, keeps paths
//! within the length/width limits, and applies a deterministic cap: when
//! more than `max_contexts` paths survive filtering, the shortest are kept,
//! ties broken by source position. Output order is always
//! `(start span, end span)`.
//!
//! The canonical string of a path is
//! `<startToken>,<typePath>,<endToken>` where the type path joins node-type
//! names with `^` per upward step and `_` per downward step, e.g.
//! `x,NameExpr^GreaterThan_IntegerLiteral,0`. It is the stable key that
//! attention files use to address extracted contexts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{NodeId, SyntaxTree};

/// Two terminals plus the node route through their lowest common ancestor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathContext {
    pub start_terminal: NodeId,
    pub end_terminal: NodeId,
    /// From `start_terminal` up to the common ancestor and down to
    /// `end_terminal`, all inclusive.
    pub node_path: Vec<NodeId>,
    /// Edge count: `node_path.len() - 1`.
    pub length: usize,
    /// Distance between the two child branches at the common ancestor
    /// (1 for adjacent children).
    pub width: usize,
}

/// Extraction limits; all must be at least 1.
#[derive(Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Debug)]
pub struct ExtractionLimits {
    pub max_length: usize,
    pub max_width: usize,
    pub max_contexts: usize,
}

impl Default for ExtractionLimits {
    fn default() -> Self {
        ExtractionLimits { max_length: 8, max_width: 2, max_contexts: 200 }
    }
}

impl ExtractionLimits {
    pub fn new(max_length: usize, max_width: usize, max_contexts: usize) -> Result<Self, InvalidLimits> {
        let limits = ExtractionLimits { max_length, max_width, max_contexts };
        limits.validate()?;
        Ok(limits)
    }

    pub fn validate(&self) -> Result<(), InvalidLimits> {
        if self.max_length < 1 || self.max_width < 1 || self.max_contexts < 1 {
            return Err(InvalidLimits {
                max_length: self.max_length,
                max_width: self.max_width,
                max_contexts: self.max_contexts,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Error, Debug)]
#[error("extraction limits must all be >= 1 (got length {max_length}, width {max_width}, contexts {max_contexts})")]
pub struct InvalidLimits {
    pub max_length: usize,
    pub max_width: usize,
    pub max_contexts: usize,
}

/// Every terminal pair whose connecting path satisfies the limits, capped
/// deterministically, ordered by `(start span, end span)`.
///
/// Trees with fewer than two terminals yield an empty list.
pub fn extract_path_contexts(tree: &SyntaxTree, limits: &ExtractionLimits) -> Vec<PathContext> {
    let terminals = tree.list_terminals();
    let depths = tree.depths();
    let mut contexts = Vec::new();
    for (i, &a) in terminals.iter().enumerate() {
        for &b in &terminals[i + 1..] {
            let pc = connect(tree, &depths, a, b);
            if pc.length <= limits.max_length && pc.width <= limits.max_width {
                contexts.push(pc);
            }
        }
    }
    if contexts.len() > limits.max_contexts {
        let span = |id: NodeId| tree.get(id).unwrap().span;
        contexts.sort_by_key(|pc| (pc.length, span(pc.start_terminal), span(pc.end_terminal)));
        contexts.truncate(limits.max_contexts);
        contexts.sort_by_key(|pc| (span(pc.start_terminal), span(pc.end_terminal)));
    }
    contexts
}

/// Path between two distinct terminals via parent walking.
fn connect(tree: &SyntaxTree, depths: &[usize], a: NodeId, b: NodeId) -> PathContext {
    let parent = |id: NodeId| tree.get(id).unwrap().parent.expect("walked past the root");

    // Climb both sides to equal depth, then in lockstep to the ancestor.
    // Terminals are leaves, so neither can be an ancestor of the other and
    // both walks end with the common ancestor.
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    let (mut x, mut y) = (a, b);
    while depths[x.0] > depths[y.0] {
        x = parent(x);
        up_a.push(x);
    }
    while depths[y.0] > depths[x.0] {
        y = parent(y);
        up_b.push(y);
    }
    while x != y {
        x = parent(x);
        y = parent(y);
        up_a.push(x);
        up_b.push(y);
    }

    let ancestor = tree.get(x).unwrap();
    let branch_index = |side: &[NodeId]| -> usize {
        let child = side[side.len() - 2];
        ancestor.children.iter().position(|&c| c == child).expect("child not under ancestor")
    };
    let width = branch_index(&up_a).abs_diff(branch_index(&up_b));

    let mut node_path = up_a;
    node_path.extend(up_b.iter().rev().skip(1));
    let length = node_path.len() - 1;
    PathContext { start_terminal: a, end_terminal: b, node_path, length, width }
}

/// Stable serialization of a path context extracted from `tree`.
pub fn canonical_string(tree: &SyntaxTree, pc: &PathContext) -> String {
    let token_text = |id: NodeId| -> &str {
        tree.node_token(id)
            .ok()
            .flatten()
            .map(|t| t.text.as_str())
            .unwrap_or("")
    };
    let mut s = String::new();
    s.push_str(token_text(pc.start_terminal));
    s.push(',');
    for (i, &id) in pc.node_path.iter().enumerate() {
        if i > 0 {
            let prev = pc.node_path[i - 1];
            let up = tree.get(prev).and_then(|n| n.parent) == Some(id);
            s.push(if up { '^' } else { '_' });
        }
        s.push_str(tree.get(id).unwrap().type_name.as_str());
    }
    s.push(',');
    s.push_str(token_text(pc.end_terminal));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{NodeType, Span, TreeBuilder};

    // if (x > 0) y = 1;  hand-built: IfStmt over a comparison and an
    // assignment statement.
    fn small_tree() -> SyntaxTree {
        let mut b = TreeBuilder::new();
        let x = b.leaf(NodeType::NameExpr, Span::on_line(0, 4, 1), "x");
        let zero = b.leaf(NodeType::IntegerLiteral, Span::on_line(0, 8, 1), "0");
        let gt = b.node_with_token(
            NodeType::GreaterThan,
            Span::new(0, 4, 0, 9),
            vec![x, zero],
            ">",
            Span::on_line(0, 6, 1),
        );
        let y = b.leaf(NodeType::NameExpr, Span::on_line(0, 11, 1), "y");
        let one = b.leaf(NodeType::IntegerLiteral, Span::on_line(0, 15, 1), "1");
        let assign = b.node_with_token(
            NodeType::Assign,
            Span::new(0, 11, 0, 16),
            vec![y, one],
            "=",
            Span::on_line(0, 13, 1),
        );
        let stmt = b.node(NodeType::ExprStmt, Span::new(0, 11, 0, 17), vec![assign]);
        let ifs = b.node_with_token(
            NodeType::IfStmt,
            Span::new(0, 0, 0, 17),
            vec![gt, stmt],
            "if",
            Span::on_line(0, 0, 2),
        );
        b.finish(ifs, None).unwrap()
    }

    #[test]
    fn all_pairs_of_four_terminals_within_limits() {
        let tree = small_tree();
        let ctxs = extract_path_contexts(&tree, &ExtractionLimits::default());
        // C(4,2) = 6 pairs, all within length 8 / width 2.
        assert_eq!(ctxs.len(), 6);
        for pc in &ctxs {
            assert_eq!(pc.length, pc.node_path.len() - 1);
            assert!(pc.width >= 1);
        }
    }

    #[test]
    fn canonical_string_follows_the_up_down_rule() {
        let tree = small_tree();
        let ctxs = extract_path_contexts(&tree, &ExtractionLimits::default());
        let strings: Vec<String> = ctxs.iter().map(|pc| canonical_string(&tree, pc)).collect();
        assert_eq!(strings[0], "x,NameExpr^GreaterThan_IntegerLiteral,0");
        assert!(strings.contains(&"x,NameExpr^GreaterThan^IfStmt_ExprStmt_Assign_NameExpr,y".to_string()));
        assert!(strings.contains(&"y,NameExpr^Assign_IntegerLiteral,1".to_string()));
    }

    #[test]
    fn single_terminal_tree_yields_nothing() {
        let mut b = TreeBuilder::new();
        let a = b.leaf(NodeType::NameExpr, Span::on_line(0, 0, 1), "a");
        let root = b.node(NodeType::CompilationUnit, Span::new(0, 0, 0, 1), vec![a]);
        let tree = b.finish(root, None).unwrap();
        assert!(extract_path_contexts(&tree, &ExtractionLimits::default()).is_empty());
    }

    #[test]
    fn two_siblings_have_the_minimal_path() {
        let mut b = TreeBuilder::new();
        let a = b.leaf(NodeType::NameExpr, Span::on_line(0, 0, 1), "a");
        let c = b.leaf(NodeType::NameExpr, Span::on_line(0, 2, 1), "b");
        let p = b.node(NodeType::Block, Span::new(0, 0, 0, 3), vec![a, c]);
        let tree = b.finish(p, None).unwrap();
        let ctxs = extract_path_contexts(&tree, &ExtractionLimits::default());
        assert_eq!(ctxs.len(), 1);
        assert_eq!(ctxs[0].length, 2);
        assert_eq!(ctxs[0].width, 1);
        assert_eq!(canonical_string(&tree, &ctxs[0]), "a,NameExpr^Block_NameExpr,b");
    }

    #[test]
    fn length_limit_filters_long_paths() {
        let tree = small_tree();
        // x–0 and y–1 have length 2; every cross pair has length 5.
        let limits = ExtractionLimits::new(2, 2, 200).unwrap();
        let ctxs = extract_path_contexts(&tree, &limits);
        assert_eq!(ctxs.len(), 2);
        assert!(ctxs.iter().all(|pc| pc.length == 2));
    }

    #[test]
    fn cap_keeps_shortest_paths_in_source_order() {
        let tree = small_tree();
        let limits = ExtractionLimits::new(8, 2, 3).unwrap();
        let ctxs = extract_path_contexts(&tree, &limits);
        assert_eq!(ctxs.len(), 3);
        // The two length-2 paths always survive the cap.
        let strings: Vec<String> = ctxs.iter().map(|pc| canonical_string(&tree, pc)).collect();
        assert!(strings.contains(&"x,NameExpr^GreaterThan_IntegerLiteral,0".to_string()));
        assert!(strings.contains(&"y,NameExpr^Assign_IntegerLiteral,1".to_string()));
        // Output stays sorted by source position.
        let spans: Vec<_> = ctxs
            .iter()
            .map(|pc| {
                (tree.get(pc.start_terminal).unwrap().span, tree.get(pc.end_terminal).unwrap().span)
            })
            .collect();
        let mut sorted = spans.clone();
        sorted.sort();
        assert_eq!(spans, sorted);
    }

    #[test]
    fn rejects_zero_limits() {
        assert!(ExtractionLimits::new(0, 2, 200).is_err());
        assert!(ExtractionLimits::new(8, 0, 200).is_err());
        assert!(ExtractionLimits::new(8, 2, 0).is_err());
    }
}
