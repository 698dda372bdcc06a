//! Java syntax trees with source spans and representative tokens.
//!
//! Parsing produces a [`SyntaxTree`]: a flat arena of [`SyntaxNode`]s in
//! pre-order, each with a span over the original text. Terminal nodes are
//! exactly the identifier and literal leaves; every other construct is an
//! internal node, and many internal nodes carry a *representative token* —
//! the keyword or operator that names them in the source (`if` for
//! [`NodeType::IfStmt`], `>` for [`NodeType::GreaterThan`]). Purely
//! structural nodes such as [`NodeType::Block`] have none.
//!
//! The full node-type vocabulary and its token rules are documented on
//! [`NodeType`] and in `docs/node-types.md`.

mod lexer;
mod parser;

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

/// Index of a node within its tree. Ids are dense, pre-order, root = 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Half-open region of source text in 0-based character coordinates.
///
/// `end` is exclusive; the derived ordering is lexicographic on
/// `(start_line, start_col, end_line, end_col)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Span {
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl Span {
    pub fn new(start_line: u32, start_col: u32, end_line: u32, end_col: u32) -> Self {
        Span { start_line, start_col, end_line, end_col }
    }

    /// Single-line span of `len` characters starting at (line, col).
    pub fn on_line(line: u32, col: u32, len: u32) -> Self {
        Span::new(line, col, line, col + len)
    }

    pub fn start(&self) -> (u32, u32) {
        (self.start_line, self.start_col)
    }

    pub fn end(&self) -> (u32, u32) {
        (self.end_line, self.end_col)
    }

    /// True when `other` lies entirely within `self`.
    pub fn contains(&self, other: &Span) -> bool {
        self.start() <= other.start() && other.end() <= self.end()
    }

    pub fn is_well_formed(&self) -> bool {
        self.start() <= self.end()
    }

    /// Smallest span covering both.
    pub fn hull(&self, other: &Span) -> Span {
        let (sl, sc) = self.start().min(other.start());
        let (el, ec) = self.end().max(other.end());
        Span::new(sl, sc, el, ec)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}-{}:{}", self.start_line, self.start_col, self.end_line, self.end_col)
    }
}

/// A source snippet as fed to the parser: id, UTF-8 text, line count, and
/// whether indentation normalization (tab expansion) has been applied.
///
/// `line_count` counts newline-delimited lines after trimming at most one
/// trailing newline; `normalized` is true exactly when the text contains no
/// tab characters.
#[derive(Clone, Debug)]
pub struct SourceSnippet {
    pub id: String,
    pub text: String,
    pub line_count: usize,
    pub normalized: bool,
}

impl SourceSnippet {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let line_count = count_lines(&text);
        let normalized = !text.contains('\t');
        SourceSnippet { id: id.into(), text, line_count, normalized }
    }

    pub fn from_bytes(id: impl Into<String>, bytes: Vec<u8>) -> Result<Self, EncodingError> {
        let id = id.into();
        match String::from_utf8(bytes) {
            Ok(text) => Ok(SourceSnippet::new(id, text)),
            Err(e) => Err(EncodingError { id, byte_offset: e.utf8_error().valid_up_to() }),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, SnippetReadError> {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.to_string_lossy().into_owned());
        let bytes = fs::read(path).map_err(|source| SnippetReadError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        SourceSnippet::from_bytes(id, bytes).map_err(SnippetReadError::Encoding)
    }
}

/// Lines after trimming at most one trailing newline; empty text is one line.
pub(crate) fn count_lines(text: &str) -> usize {
    let trimmed = text.strip_suffix('\n').unwrap_or(text);
    trimmed.split('\n').count()
}

/// Canonical node-type vocabulary.
///
/// Three groups, each with a fixed representative-token rule:
///
/// * **Terminals** (identifier and literal leaves) — the node's token is its
///   own text: [`NameExpr`](NodeType::NameExpr), `IntegerLiteral`,
///   `LongLiteral`, `DoubleLiteral`, `CharLiteral`, `StringLiteral`,
///   `BooleanLiteral`, `NullLiteral`.
/// * **Keyword / operator nodes** — internal nodes whose token is the
///   keyword or operator spelling them in the source (`IfStmt` → `if`,
///   `GreaterThan` → `>`, `Modifier` → its own keyword, `VariableDeclarator`
///   → `=` when an initializer is present).
/// * **Structural nodes** — no token: `CompilationUnit`, `Block`,
///   `MethodDecl`, `MethodCall`, `FieldAccess`, and the like.
///
/// Separators (`. , ; ( ) { } [ ] @` and generic angle brackets) produce no
/// nodes and no tokens, as do comments and whitespace.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum NodeType {
    // Terminals.
    NameExpr,
    IntegerLiteral,
    LongLiteral,
    DoubleLiteral,
    CharLiteral,
    StringLiteral,
    BooleanLiteral,
    NullLiteral,
    // Declarations and clauses.
    CompilationUnit,
    PackageDecl,
    ImportDecl,
    ClassDecl,
    InterfaceDecl,
    EnumDecl,
    EnumConstant,
    FieldDecl,
    MethodDecl,
    ConstructorDecl,
    InitializerBlock,
    Parameter,
    LocalVarDecl,
    VariableDeclarator,
    Modifier,
    Annotation,
    TypeParameter,
    ExtendsClause,
    ImplementsClause,
    ThrowsClause,
    SuperClause,
    // Types.
    ClassType,
    PrimitiveType,
    VoidType,
    ArrayType,
    WildcardType,
    // Statements.
    Block,
    EmptyStmt,
    ExprStmt,
    LabeledStmt,
    IfStmt,
    ElseClause,
    WhileStmt,
    DoStmt,
    WhileClause,
    ForStmt,
    ForEachStmt,
    SwitchStmt,
    CaseLabel,
    DefaultLabel,
    BreakStmt,
    ContinueStmt,
    ReturnStmt,
    ThrowStmt,
    TryStmt,
    CatchClause,
    FinallyClause,
    SynchronizedStmt,
    AssertStmt,
    // Expressions.
    MethodCall,
    FieldAccess,
    ArrayAccess,
    ObjectCreation,
    ArrayCreation,
    ArrayInitializer,
    ClassLiteral,
    ThisExpr,
    SuperExpr,
    Cast,
    InstanceOf,
    Conditional,
    LambdaExpr,
    MethodRef,
    // Binary operators.
    Plus,
    Minus,
    Multiply,
    Divide,
    Remainder,
    LeftShift,
    SignedRightShift,
    UnsignedRightShift,
    LessThan,
    GreaterThan,
    LessEquals,
    GreaterEquals,
    Equals,
    NotEquals,
    BinaryAnd,
    BinaryOr,
    Xor,
    And,
    Or,
    // Unary operators.
    UnaryPlus,
    UnaryMinus,
    LogicalComplement,
    BitwiseComplement,
    PreIncrement,
    PreDecrement,
    PostIncrement,
    PostDecrement,
    // Assignment operators.
    Assign,
    PlusAssign,
    MinusAssign,
    MultiplyAssign,
    DivideAssign,
    RemainderAssign,
    AndAssign,
    OrAssign,
    XorAssign,
    LeftShiftAssign,
    SignedRightShiftAssign,
    UnsignedRightShiftAssign,
}

impl NodeType {
    /// Canonical string used in dumps and path-context serialization.
    pub fn as_str(&self) -> &'static str {
        use NodeType::*;
        match self {
            NameExpr => "NameExpr",
            IntegerLiteral => "IntegerLiteral",
            LongLiteral => "LongLiteral",
            DoubleLiteral => "DoubleLiteral",
            CharLiteral => "CharLiteral",
            StringLiteral => "StringLiteral",
            BooleanLiteral => "BooleanLiteral",
            NullLiteral => "NullLiteral",
            CompilationUnit => "CompilationUnit",
            PackageDecl => "PackageDecl",
            ImportDecl => "ImportDecl",
            ClassDecl => "ClassDecl",
            InterfaceDecl => "InterfaceDecl",
            EnumDecl => "EnumDecl",
            EnumConstant => "EnumConstant",
            FieldDecl => "FieldDecl",
            MethodDecl => "MethodDecl",
            ConstructorDecl => "ConstructorDecl",
            InitializerBlock => "InitializerBlock",
            Parameter => "Parameter",
            LocalVarDecl => "LocalVarDecl",
            VariableDeclarator => "VariableDeclarator",
            Modifier => "Modifier",
            Annotation => "Annotation",
            TypeParameter => "TypeParameter",
            ExtendsClause => "ExtendsClause",
            ImplementsClause => "ImplementsClause",
            ThrowsClause => "ThrowsClause",
            SuperClause => "SuperClause",
            ClassType => "ClassType",
            PrimitiveType => "PrimitiveType",
            VoidType => "VoidType",
            ArrayType => "ArrayType",
            WildcardType => "WildcardType",
            Block => "Block",
            EmptyStmt => "EmptyStmt",
            ExprStmt => "ExprStmt",
            LabeledStmt => "LabeledStmt",
            IfStmt => "IfStmt",
            ElseClause => "ElseClause",
            WhileStmt => "WhileStmt",
            DoStmt => "DoStmt",
            WhileClause => "WhileClause",
            ForStmt => "ForStmt",
            ForEachStmt => "ForEachStmt",
            SwitchStmt => "SwitchStmt",
            CaseLabel => "CaseLabel",
            DefaultLabel => "DefaultLabel",
            BreakStmt => "BreakStmt",
            ContinueStmt => "ContinueStmt",
            ReturnStmt => "ReturnStmt",
            ThrowStmt => "ThrowStmt",
            TryStmt => "TryStmt",
            CatchClause => "CatchClause",
            FinallyClause => "FinallyClause",
            SynchronizedStmt => "SynchronizedStmt",
            AssertStmt => "AssertStmt",
            MethodCall => "MethodCall",
            FieldAccess => "FieldAccess",
            ArrayAccess => "ArrayAccess",
            ObjectCreation => "ObjectCreation",
            ArrayCreation => "ArrayCreation",
            ArrayInitializer => "ArrayInitializer",
            ClassLiteral => "ClassLiteral",
            ThisExpr => "ThisExpr",
            SuperExpr => "SuperExpr",
            Cast => "Cast",
            InstanceOf => "InstanceOf",
            Conditional => "Conditional",
            LambdaExpr => "LambdaExpr",
            MethodRef => "MethodRef",
            Plus => "Plus",
            Minus => "Minus",
            Multiply => "Multiply",
            Divide => "Divide",
            Remainder => "Remainder",
            LeftShift => "LeftShift",
            SignedRightShift => "SignedRightShift",
            UnsignedRightShift => "UnsignedRightShift",
            LessThan => "LessThan",
            GreaterThan => "GreaterThan",
            LessEquals => "LessEquals",
            GreaterEquals => "GreaterEquals",
            Equals => "Equals",
            NotEquals => "NotEquals",
            BinaryAnd => "BinaryAnd",
            BinaryOr => "BinaryOr",
            Xor => "Xor",
            And => "And",
            Or => "Or",
            UnaryPlus => "UnaryPlus",
            UnaryMinus => "UnaryMinus",
            LogicalComplement => "LogicalComplement",
            BitwiseComplement => "BitwiseComplement",
            PreIncrement => "PreIncrement",
            PreDecrement => "PreDecrement",
            PostIncrement => "PostIncrement",
            PostDecrement => "PostDecrement",
            Assign => "Assign",
            PlusAssign => "PlusAssign",
            MinusAssign => "MinusAssign",
            MultiplyAssign => "MultiplyAssign",
            DivideAssign => "DivideAssign",
            RemainderAssign => "RemainderAssign",
            AndAssign => "AndAssign",
            OrAssign => "OrAssign",
            XorAssign => "XorAssign",
            LeftShiftAssign => "LeftShiftAssign",
            SignedRightShiftAssign => "SignedRightShiftAssign",
            UnsignedRightShiftAssign => "UnsignedRightShiftAssign",
        }
    }

    /// Terminal node types: identifier and literal leaves.
    pub fn is_terminal(&self) -> bool {
        use NodeType::*;
        matches!(
            self,
            NameExpr
                | IntegerLiteral
                | LongLiteral
                | DoubleLiteral
                | CharLiteral
                | StringLiteral
                | BooleanLiteral
                | NullLiteral
        )
    }
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A representative token: exact source text, its span, and the owning node.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Token {
    pub text: String,
    pub span: Span,
    pub owner: NodeId,
}

/// One node of a [`SyntaxTree`].
#[derive(Clone, Debug)]
pub struct SyntaxNode {
    pub id: NodeId,
    pub type_name: NodeType,
    pub span: Span,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub is_terminal: bool,
}

/// Immutable parsed tree: dense pre-order node arena plus per-node
/// representative tokens.
#[derive(Clone, Debug)]
pub struct SyntaxTree {
    nodes: Vec<SyntaxNode>,
    tokens: Vec<Option<Token>>,
    root: NodeId,
}

impl SyntaxTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, id: NodeId) -> Option<&SyntaxNode> {
        self.nodes.get(id.0)
    }

    pub fn node(&self, id: NodeId) -> Result<&SyntaxNode, UnknownNode> {
        self.get(id).ok_or(UnknownNode { id })
    }

    pub fn nodes(&self) -> impl Iterator<Item = &SyntaxNode> {
        self.nodes.iter()
    }

    /// Representative token of a node, if it has one.
    pub fn node_token(&self, id: NodeId) -> Result<Option<&Token>, UnknownNode> {
        if id.0 >= self.nodes.len() {
            return Err(UnknownNode { id });
        }
        Ok(self.tokens[id.0].as_ref())
    }

    /// All representative tokens, in node-id (pre-) order.
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter_map(|t| t.as_ref())
    }

    /// Terminal node ids in source-position order (span start, then span
    /// end, lexicographic).
    pub fn list_terminals(&self) -> Vec<NodeId> {
        let mut terms: Vec<NodeId> = self
            .nodes
            .iter()
            .filter(|n| n.is_terminal)
            .map(|n| n.id)
            .collect();
        terms.sort_by_key(|id| self.nodes[id.0].span);
        terms
    }

    /// Depth of every node (root = 0), indexed by node id.
    pub fn depths(&self) -> Vec<usize> {
        let mut depths = vec![0usize; self.nodes.len()];
        // Pre-order ids guarantee parents precede children.
        for node in &self.nodes {
            if let Some(p) = node.parent {
                depths[node.id.0] = depths[p.0] + 1;
            }
        }
        depths
    }

    /// One line per node: `id<TAB>type<TAB>span<TAB>token?` (0-based spans).
    pub fn dump_ast(&self) -> String {
        let mut out = String::new();
        for node in &self.nodes {
            out.push_str(&format!("{}\t{}\t{}", node.id, node.type_name, node.span));
            if let Some(tok) = &self.tokens[node.id.0] {
                out.push('\t');
                out.push_str(&tok.text);
            }
            out.push('\n');
        }
        out
    }
}

/// Parse a snippet into a syntax tree.
///
/// The text must be tab-free (run it through the corpus normalizer first)
/// and syntactically valid Java — a compilation unit, or a bare class or
/// method declaration.
pub fn parse_source(snippet: &SourceSnippet) -> Result<SyntaxTree, ParseError> {
    parser::parse(&snippet.text)
}

/// Invalid syntax, with the 0-based position of the offending character.
/// Rendered 1-based for display.
#[derive(Clone, PartialEq, Eq, Error, Debug)]
#[error("parse error at {}:{}: {message}", line + 1, col + 1)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

/// Input bytes were not valid UTF-8.
#[derive(Clone, PartialEq, Eq, Error, Debug)]
#[error("snippet {id:?} is not valid UTF-8 (first invalid byte at offset {byte_offset})")]
pub struct EncodingError {
    pub id: String,
    pub byte_offset: usize,
}

/// Reading a snippet from disk failed.
#[derive(Error, Debug)]
pub enum SnippetReadError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}

/// A node id not present in the tree was dereferenced.
#[derive(Clone, Copy, PartialEq, Eq, Error, Debug)]
#[error("unknown node id {id}")]
pub struct UnknownNode {
    pub id: NodeId,
}

/// A hand-assembled tree violated a structural invariant.
#[derive(Clone, PartialEq, Eq, Error, Debug)]
pub enum TreeError {
    #[error("node {node} span {node_span} does not contain child {child} span {child_span}")]
    SpanNotNested {
        node: NodeId,
        node_span: Span,
        child: NodeId,
        child_span: Span,
    },
    #[error("terminal node {0} has children")]
    TerminalWithChildren(NodeId),
    #[error("terminal node {0} is missing its token")]
    TerminalWithoutToken(NodeId),
    #[error("node {0} has a malformed span")]
    MalformedSpan(NodeId),
    #[error("token of node {node} spans multiple lines")]
    MultiLineToken { node: NodeId },
    #[error("token of node {node} does not match the source at its span")]
    TokenMismatch { node: NodeId },
    #[error("duplicate terminal span {0}")]
    DuplicateTerminalSpan(Span),
    #[error("node {0} is unreachable from the root")]
    Unreachable(NodeId),
    #[error("tree has no nodes")]
    Empty,
}

/// Incremental tree assembly. Children are created before their parent;
/// `finish` validates the structural invariants and renumbers all nodes into
/// pre-order (root = 0).
///
/// Used by the parser internally and by tests that need hand-built trees.
pub struct TreeBuilder {
    nodes: Vec<BuildNode>,
}

struct BuildNode {
    ty: NodeType,
    span: Span,
    children: Vec<usize>,
    token: Option<(String, Span)>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        TreeBuilder { nodes: Vec::new() }
    }

    /// Terminal leaf carrying its own text as token.
    pub fn leaf(&mut self, ty: NodeType, span: Span, text: impl Into<String>) -> usize {
        self.nodes.push(BuildNode {
            ty,
            span,
            children: Vec::new(),
            token: Some((text.into(), span)),
        });
        self.nodes.len() - 1
    }

    /// Internal node over existing children.
    pub fn node(&mut self, ty: NodeType, span: Span, children: Vec<usize>) -> usize {
        self.nodes.push(BuildNode { ty, span, children, token: None });
        self.nodes.len() - 1
    }

    /// Internal node with a representative keyword/operator token.
    pub fn node_with_token(
        &mut self,
        ty: NodeType,
        span: Span,
        children: Vec<usize>,
        token_text: impl Into<String>,
        token_span: Span,
    ) -> usize {
        let id = self.node(ty, span, children);
        self.nodes[id].token = Some((token_text.into(), token_span));
        id
    }

    // Children always precede their parent, so dropping a suffix drops
    // whole subtrees; used to roll back speculative parses.
    pub(crate) fn truncate(&mut self, len: usize) {
        self.nodes.truncate(len);
    }

    pub(crate) fn node_type(&self, idx: usize) -> NodeType {
        self.nodes[idx].ty
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Validate and seal the tree. When `source` is given, token texts are
    /// checked against the text at their spans.
    pub fn finish(self, root: usize, source: Option<&str>) -> Result<SyntaxTree, TreeError> {
        if self.nodes.is_empty() {
            return Err(TreeError::Empty);
        }
        let n = self.nodes.len();

        // Pre-order renumber from the root.
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        let mut seen = vec![false; n];
        while let Some(i) = stack.pop() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            order.push(i);
            for &c in self.nodes[i].children.iter().rev() {
                stack.push(c);
            }
        }
        if order.len() != n {
            let missing = (0..n).find(|&i| !seen[i]).unwrap();
            return Err(TreeError::Unreachable(NodeId(missing)));
        }
        let mut new_id = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
        }

        let source_lines: Option<Vec<Vec<char>>> =
            source.map(|s| s.split('\n').map(|l| l.chars().collect()).collect());

        let mut nodes = Vec::with_capacity(n);
        let mut tokens: Vec<Option<Token>> = vec![None; n];
        let mut terminal_spans = HashSet::new();
        for &old in &order {
            let b = &self.nodes[old];
            let id = NodeId(new_id[old]);
            if !b.span.is_well_formed() {
                return Err(TreeError::MalformedSpan(id));
            }
            let is_terminal = b.ty.is_terminal();
            if is_terminal {
                if !b.children.is_empty() {
                    return Err(TreeError::TerminalWithChildren(id));
                }
                if b.token.is_none() {
                    return Err(TreeError::TerminalWithoutToken(id));
                }
                if !terminal_spans.insert(b.span) {
                    return Err(TreeError::DuplicateTerminalSpan(b.span));
                }
            }
            if let Some((text, tspan)) = &b.token {
                if tspan.start_line != tspan.end_line {
                    return Err(TreeError::MultiLineToken { node: id });
                }
                if !b.span.contains(tspan) {
                    return Err(TreeError::SpanNotNested {
                        node: id,
                        node_span: b.span,
                        child: id,
                        child_span: *tspan,
                    });
                }
                if let Some(lines) = &source_lines {
                    let ok = lines
                        .get(tspan.start_line as usize)
                        .map(|line| {
                            let s = tspan.start_col as usize;
                            let e = tspan.end_col as usize;
                            e <= line.len() && line[s..e].iter().collect::<String>() == *text
                        })
                        .unwrap_or(false);
                    if !ok {
                        return Err(TreeError::TokenMismatch { node: id });
                    }
                }
                tokens[id.0] = Some(Token { text: text.clone(), span: *tspan, owner: id });
            }
            for &c in &b.children {
                if !b.span.contains(&self.nodes[c].span) {
                    return Err(TreeError::SpanNotNested {
                        node: id,
                        node_span: b.span,
                        child: NodeId(new_id[c]),
                        child_span: self.nodes[c].span,
                    });
                }
            }
            nodes.push(SyntaxNode {
                id,
                type_name: b.ty,
                span: b.span,
                parent: None,
                children: b.children.iter().map(|&c| NodeId(new_id[c])).collect(),
                is_terminal,
            });
        }
        nodes.sort_by_key(|n| n.id);
        for i in 0..nodes.len() {
            let children = nodes[i].children.clone();
            for c in children {
                nodes[c.0].parent = Some(NodeId(i));
            }
        }
        Ok(SyntaxTree { nodes, tokens, root: NodeId(0) })
    }
}

impl Default for TreeBuilder {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_counting_trims_one_trailing_newline() {
        assert_eq!(count_lines(""), 1);
        assert_eq!(count_lines("a"), 1);
        assert_eq!(count_lines("a\n"), 1);
        assert_eq!(count_lines("a\nb"), 2);
        assert_eq!(count_lines("a\nb\n"), 2);
        assert_eq!(count_lines("a\n\n"), 2);
    }

    #[test]
    fn snippet_tracks_normalization() {
        let s = SourceSnippet::new("a", "int x;\n");
        assert!(s.normalized);
        let s = SourceSnippet::new("b", "\tint x;\n");
        assert!(!s.normalized);
    }

    #[test]
    fn from_bytes_rejects_invalid_utf8() {
        let err = SourceSnippet::from_bytes("bad", vec![0x63, 0xff, 0x64]).unwrap_err();
        assert_eq!(err.byte_offset, 1);
    }

    #[test]
    fn builder_renumbers_preorder_and_links_parents() {
        // class A {} hand-built: leaf first, then wrappers.
        let mut b = TreeBuilder::new();
        let name = b.leaf(NodeType::NameExpr, Span::on_line(0, 6, 1), "A");
        let class = b.node_with_token(
            NodeType::ClassDecl,
            Span::new(0, 0, 0, 10),
            vec![name],
            "class",
            Span::on_line(0, 0, 5),
        );
        let unit = b.node(NodeType::CompilationUnit, Span::new(0, 0, 0, 10), vec![class]);
        let tree = b.finish(unit, Some("class A {}")).unwrap();

        assert_eq!(tree.root(), NodeId(0));
        assert_eq!(tree.node(NodeId(0)).unwrap().type_name, NodeType::CompilationUnit);
        assert_eq!(tree.node(NodeId(1)).unwrap().type_name, NodeType::ClassDecl);
        assert_eq!(tree.node(NodeId(2)).unwrap().type_name, NodeType::NameExpr);
        assert_eq!(tree.node(NodeId(2)).unwrap().parent, Some(NodeId(1)));
        assert!(tree.node(NodeId(2)).unwrap().is_terminal);
        assert_eq!(tree.node_token(NodeId(1)).unwrap().unwrap().text, "class");
        assert!(tree.node_token(NodeId(3)).is_err());
    }

    #[test]
    fn builder_rejects_token_source_mismatch() {
        let mut b = TreeBuilder::new();
        let name = b.leaf(NodeType::NameExpr, Span::on_line(0, 6, 1), "B");
        let class = b.node_with_token(
            NodeType::ClassDecl,
            Span::new(0, 0, 0, 10),
            vec![name],
            "class",
            Span::on_line(0, 0, 5),
        );
        let err = b.finish(class, Some("class A {}")).unwrap_err();
        assert!(matches!(err, TreeError::TokenMismatch { .. }));
    }

    #[test]
    fn builder_rejects_span_violations() {
        let mut b = TreeBuilder::new();
        let name = b.leaf(NodeType::NameExpr, Span::on_line(0, 20, 1), "A");
        let class = b.node(NodeType::ClassDecl, Span::new(0, 0, 0, 10), vec![name]);
        let err = b.finish(class, None).unwrap_err();
        assert!(matches!(err, TreeError::SpanNotNested { .. }));
    }
}
