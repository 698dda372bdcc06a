//! Recursive-descent Java parser.
//!
//! Covers the declaration, statement, and expression grammar needed for
//! ordinary snippet-sized Java (classes, interfaces, enums, all classic
//! statements, full operator precedence, generics, arrays, lambdas,
//! anonymous classes). Unsupported constructs fail with a positioned
//! [`ParseError`] rather than a mangled tree.
//!
//! Ambiguities are resolved by speculative parsing with rollback:
//! declaration vs. expression statement, cast vs. parenthesized expression,
//! basic vs. enhanced `for`, lambda parameter lists. Right-shift operators
//! are reassembled from adjacent `>` tokens (the lexer never fuses them so
//! nested generics close cleanly).

use super::lexer::{lex, LexKind, LexToken, MODIFIERS, PRIMITIVES};
use super::{NodeType, ParseError, Span, SyntaxTree, TreeBuilder};

type PResult<T> = Result<T, ParseError>;

pub(crate) fn parse(source: &str) -> Result<SyntaxTree, ParseError> {
    let toks = lex(source)?;
    let mut p = Parser { toks, pos: 0, b: TreeBuilder::new() };
    let root = p.compilation_unit()?;
    p.b.finish(root, Some(source)).map_err(|e| ParseError {
        line: 0,
        col: 0,
        message: format!("internal: parsed tree violates an invariant: {e}"),
    })
}

struct Parser {
    toks: Vec<LexToken>,
    pos: usize,
    b: TreeBuilder,
}

impl Parser {
    // ------------------------------------------------------------------
    // Token-stream helpers
    // ------------------------------------------------------------------

    fn peek(&self) -> Option<&LexToken> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, off: usize) -> Option<&LexToken> {
        self.toks.get(self.pos + off)
    }

    fn at(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.is(text))
    }

    fn at_punct(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.is_punct(text))
    }

    fn at_keyword(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(text))
    }

    fn at_ident(&self) -> bool {
        self.peek().is_some_and(|t| t.kind == LexKind::Ident)
    }

    fn bump(&mut self) -> PResult<LexToken> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err_eof("unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, text: &str) -> PResult<LexToken> {
        if self.at(text) {
            self.bump()
        } else {
            Err(self.err_here(format!("expected `{text}`")))
        }
    }

    fn expect_ident(&mut self) -> PResult<LexToken> {
        if self.at_ident() {
            self.bump()
        } else {
            Err(self.err_here("expected identifier"))
        }
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        match self.peek() {
            Some(t) => {
                let message =
                    format!("{} (found `{}`)", message.into(), t.text);
                ParseError { line: t.line, col: t.col, message }
            }
            None => self.err_eof(message),
        }
    }

    fn err_eof(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self
            .toks
            .last()
            .map(|t| (t.span().end_line, t.span().end_col))
            .unwrap_or((0, 0));
        ParseError { line, col, message: message.into() }
    }

    /// Two tokens touch with no whitespace between them.
    fn adjacent(&self, i: usize, j: usize) -> bool {
        match (self.toks.get(i), self.toks.get(j)) {
            (Some(a), Some(b)) => {
                let sa = a.span();
                sa.end_line == b.line && sa.end_col == b.col
            }
            _ => false,
        }
    }

    fn span_from(&self, start_tok: usize) -> Span {
        let s = self.toks[start_tok].span();
        let e = self.toks[self.pos - 1].span();
        Span::new(s.start_line, s.start_col, e.end_line, e.end_col)
    }

    fn checkpoint(&self) -> (usize, usize) {
        (self.pos, self.b.len())
    }

    fn rollback(&mut self, cp: (usize, usize)) {
        self.pos = cp.0;
        self.b.truncate(cp.1);
    }

    /// Keyword/operator-bearing node; token is `tok`.
    fn kw_node(
        &mut self,
        ty: NodeType,
        span: Span,
        children: Vec<usize>,
        tok: &LexToken,
    ) -> usize {
        self.b.node_with_token(ty, span, children, tok.text.clone(), tok.span())
    }

    fn name_leaf(&mut self, tok: &LexToken) -> usize {
        self.b.leaf(NodeType::NameExpr, tok.span(), tok.text.clone())
    }

    // ------------------------------------------------------------------
    // Compilation unit and declarations
    // ------------------------------------------------------------------

    fn compilation_unit(&mut self) -> PResult<usize> {
        if self.toks.is_empty() {
            return Err(ParseError { line: 0, col: 0, message: "empty source".into() });
        }
        let mut children = Vec::new();
        if self.at_keyword("package") {
            children.push(self.package_decl()?);
        }
        while self.at_keyword("import") {
            children.push(self.import_decl()?);
        }
        while self.peek().is_some() {
            if self.at_punct(";") {
                self.bump()?;
                continue;
            }
            children.push(self.type_or_member_decl()?);
        }
        let last = self.toks.last().unwrap().span();
        let first = self.toks[0].span();
        let span = first.hull(&last);
        Ok(self.b.node(NodeType::CompilationUnit, span, children))
    }

    fn package_decl(&mut self) -> PResult<usize> {
        let start = self.pos;
        let kw = self.bump()?;
        let mut children = vec![];
        loop {
            let seg = self.expect_ident()?;
            children.push(self.name_leaf(&seg));
            if self.at_punct(".") {
                self.bump()?;
            } else {
                break;
            }
        }
        self.expect(";")?;
        Ok(self.kw_node(NodeType::PackageDecl, self.span_from(start), children, &kw))
    }

    fn import_decl(&mut self) -> PResult<usize> {
        let start = self.pos;
        let kw = self.bump()?;
        let mut children = vec![];
        if self.at_keyword("static") {
            let m = self.bump()?;
            children.push(self.kw_node(NodeType::Modifier, m.span(), vec![], &m));
        }
        loop {
            if self.at_punct("*") {
                self.bump()?;
                break;
            }
            let seg = self.expect_ident()?;
            children.push(self.name_leaf(&seg));
            if self.at_punct(".") {
                self.bump()?;
            } else {
                break;
            }
        }
        self.expect(";")?;
        Ok(self.kw_node(NodeType::ImportDecl, self.span_from(start), children, &kw))
    }

    /// Top-level declaration: a type, or a bare method (snippet inputs).
    fn type_or_member_decl(&mut self) -> PResult<usize> {
        let start = self.pos;
        let mods = self.modifiers(true)?;
        if self.at_keyword("class") || self.at_keyword("interface") || self.at_keyword("enum") {
            return self.type_decl(start, mods);
        }
        self.method_or_field(start, mods, false)
    }

    fn modifiers(&mut self, member_level: bool) -> PResult<Vec<usize>> {
        let mut out = Vec::new();
        loop {
            if self.at_punct("@") && self.peek_at(1).is_some_and(|t| t.kind == LexKind::Ident) {
                out.push(self.annotation()?);
            } else if self.peek().is_some_and(|t| {
                t.kind == LexKind::Keyword
                    && (MODIFIERS.contains(&t.text.as_str())
                        || (member_level && t.text == "default"))
            }) {
                let m = self.bump()?;
                out.push(self.kw_node(NodeType::Modifier, m.span(), vec![], &m));
            } else {
                return Ok(out);
            }
        }
    }

    fn annotation(&mut self) -> PResult<usize> {
        let start = self.pos;
        self.expect("@")?;
        let mut children = vec![];
        loop {
            let seg = self.expect_ident()?;
            children.push(self.name_leaf(&seg));
            if self.at_punct(".") {
                self.bump()?;
            } else {
                break;
            }
        }
        if self.at_punct("(") {
            self.bump()?;
            while !self.at_punct(")") {
                children.push(self.annotation_value()?);
                if self.at_punct(",") {
                    self.bump()?;
                }
            }
            self.expect(")")?;
        }
        Ok(self.b.node(NodeType::Annotation, self.span_from(start), children))
    }

    fn annotation_value(&mut self) -> PResult<usize> {
        if self.at_punct("{") {
            self.array_initializer()
        } else {
            self.expression()
        }
    }

    fn type_decl(&mut self, start: usize, mut children: Vec<usize>) -> PResult<usize> {
        let kw = self.bump()?;
        let ty = match kw.text.as_str() {
            "class" => NodeType::ClassDecl,
            "interface" => NodeType::InterfaceDecl,
            _ => NodeType::EnumDecl,
        };
        let name = self.expect_ident()?;
        children.push(self.name_leaf(&name));
        if self.at_punct("<") {
            children.extend(self.type_params()?);
        }
        if self.at_keyword("extends") {
            let ekw = self.bump()?;
            let estart = self.pos - 1;
            let mut tys = vec![self.parse_type()?];
            while self.at_punct(",") {
                self.bump()?;
                tys.push(self.parse_type()?);
            }
            children.push(self.kw_node(NodeType::ExtendsClause, self.span_from(estart), tys, &ekw));
        }
        if self.at_keyword("implements") {
            let ikw = self.bump()?;
            let istart = self.pos - 1;
            let mut tys = vec![self.parse_type()?];
            while self.at_punct(",") {
                self.bump()?;
                tys.push(self.parse_type()?);
            }
            children
                .push(self.kw_node(NodeType::ImplementsClause, self.span_from(istart), tys, &ikw));
        }
        self.expect("{")?;
        if ty == NodeType::EnumDecl {
            while !self.at_punct(";") && !self.at_punct("}") {
                children.push(self.enum_constant()?);
                if self.at_punct(",") {
                    self.bump()?;
                }
            }
            if self.at_punct(";") {
                self.bump()?;
            }
        }
        while !self.at_punct("}") {
            if self.at_punct(";") {
                self.bump()?;
                continue;
            }
            children.push(self.class_member()?);
        }
        self.expect("}")?;
        Ok(self.kw_node(ty, self.span_from(start), children, &kw))
    }

    fn enum_constant(&mut self) -> PResult<usize> {
        let start = self.pos;
        let name = self.expect_ident()?;
        let mut children = vec![self.name_leaf(&name)];
        if self.at_punct("(") {
            children.extend(self.arguments()?);
        }
        if self.at_punct("{") {
            self.bump()?;
            while !self.at_punct("}") {
                if self.at_punct(";") {
                    self.bump()?;
                    continue;
                }
                children.push(self.class_member()?);
            }
            self.expect("}")?;
        }
        Ok(self.b.node(NodeType::EnumConstant, self.span_from(start), children))
    }

    fn class_member(&mut self) -> PResult<usize> {
        let start = self.pos;
        let mods = self.modifiers(true)?;
        if self.at_punct("{") {
            let mut children = mods;
            children.push(self.block()?);
            return Ok(self.b.node(NodeType::InitializerBlock, self.span_from(start), children));
        }
        if self.at_keyword("class") || self.at_keyword("interface") || self.at_keyword("enum") {
            return self.type_decl(start, mods);
        }
        // `Name (` with no preceding type is a constructor.
        if self.at_ident() && self.peek_at(1).is_some_and(|t| t.is_punct("(")) {
            return self.constructor_decl(start, mods);
        }
        self.method_or_field(start, mods, true)
    }

    fn constructor_decl(&mut self, start: usize, mut children: Vec<usize>) -> PResult<usize> {
        let name = self.expect_ident()?;
        children.push(self.name_leaf(&name));
        children.extend(self.parameters()?);
        if self.at_keyword("throws") {
            children.push(self.throws_clause()?);
        }
        children.push(self.block()?);
        Ok(self.b.node(NodeType::ConstructorDecl, self.span_from(start), children))
    }

    fn method_or_field(
        &mut self,
        start: usize,
        mut children: Vec<usize>,
        allow_field: bool,
    ) -> PResult<usize> {
        if self.at_punct("<") {
            children.extend(self.type_params()?);
        }
        let ty = self.parse_type()?;
        children.push(ty);
        let name = self.expect_ident()?;
        if self.at_punct("(") {
            children.push(self.name_leaf(&name));
            children.extend(self.parameters()?);
            while self.at_punct("[") && self.peek_at(1).is_some_and(|t| t.is_punct("]")) {
                self.bump()?;
                self.bump()?;
            }
            if self.at_keyword("throws") {
                children.push(self.throws_clause()?);
            }
            if self.at_punct(";") {
                self.bump()?;
            } else {
                children.push(self.block()?);
            }
            return Ok(self.b.node(NodeType::MethodDecl, self.span_from(start), children));
        }
        if !allow_field {
            return Err(self.err_here("expected `(` of a method declaration"));
        }
        let name_tok_idx = self.pos - 1;
        children.push(self.variable_declarator(name, name_tok_idx)?);
        while self.at_punct(",") {
            self.bump()?;
            let idx = self.pos;
            let n = self.expect_ident()?;
            children.push(self.variable_declarator(n, idx)?);
        }
        self.expect(";")?;
        Ok(self.b.node(NodeType::FieldDecl, self.span_from(start), children))
    }

    fn throws_clause(&mut self) -> PResult<usize> {
        let start = self.pos;
        let kw = self.bump()?;
        let mut tys = vec![self.parse_type()?];
        while self.at_punct(",") {
            self.bump()?;
            tys.push(self.parse_type()?);
        }
        Ok(self.kw_node(NodeType::ThrowsClause, self.span_from(start), tys, &kw))
    }

    /// Declarator after its name token: `[]`* (`=` initializer)?.
    /// Carries the `=` as representative token when initialized.
    fn variable_declarator(&mut self, name: LexToken, name_tok_idx: usize) -> PResult<usize> {
        let name_leaf = self.name_leaf(&name);
        let mut children = vec![name_leaf];
        while self.at_punct("[") && self.peek_at(1).is_some_and(|t| t.is_punct("]")) {
            self.bump()?;
            self.bump()?;
        }
        let mut eq = None;
        if self.at_punct("=") {
            eq = Some(self.bump()?);
            children.push(self.variable_init()?);
        }
        let span = self.span_from(name_tok_idx);
        Ok(match eq {
            Some(eq) => self.kw_node(NodeType::VariableDeclarator, span, children, &eq),
            None => self.b.node(NodeType::VariableDeclarator, span, children),
        })
    }

    fn variable_init(&mut self) -> PResult<usize> {
        if self.at_punct("{") {
            self.array_initializer()
        } else {
            self.expression()
        }
    }

    fn array_initializer(&mut self) -> PResult<usize> {
        let start = self.pos;
        self.expect("{")?;
        let mut children = vec![];
        while !self.at_punct("}") {
            children.push(self.variable_init()?);
            if self.at_punct(",") {
                self.bump()?;
            } else {
                break;
            }
        }
        self.expect("}")?;
        Ok(self.b.node(NodeType::ArrayInitializer, self.span_from(start), children))
    }

    fn parameters(&mut self) -> PResult<Vec<usize>> {
        self.expect("(")?;
        let mut out = Vec::new();
        while !self.at_punct(")") {
            out.push(self.parameter()?);
            if self.at_punct(",") {
                self.bump()?;
            }
        }
        self.expect(")")?;
        Ok(out)
    }

    fn parameter(&mut self) -> PResult<usize> {
        let start = self.pos;
        let mut children = self.modifiers(false)?;
        children.push(self.parse_type()?);
        if self.at_punct("...") {
            self.bump()?;
        }
        let name = self.expect_ident()?;
        children.push(self.name_leaf(&name));
        while self.at_punct("[") && self.peek_at(1).is_some_and(|t| t.is_punct("]")) {
            self.bump()?;
            self.bump()?;
        }
        Ok(self.b.node(NodeType::Parameter, self.span_from(start), children))
    }

    fn type_params(&mut self) -> PResult<Vec<usize>> {
        self.expect("<")?;
        let mut out = Vec::new();
        while !self.at_punct(">") {
            let start = self.pos;
            let name = self.expect_ident()?;
            let mut children = vec![self.name_leaf(&name)];
            if self.at_keyword("extends") {
                let kw = self.bump()?;
                let estart = self.pos - 1;
                let mut tys = vec![self.parse_type()?];
                while self.at_punct("&") {
                    self.bump()?;
                    tys.push(self.parse_type()?);
                }
                children.push(self.kw_node(
                    NodeType::ExtendsClause,
                    self.span_from(estart),
                    tys,
                    &kw,
                ));
            }
            out.push(self.b.node(NodeType::TypeParameter, self.span_from(start), children));
            if self.at_punct(",") {
                self.bump()?;
            }
        }
        self.expect(">")?;
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Types
    // ------------------------------------------------------------------

    fn parse_type(&mut self) -> PResult<usize> {
        let start = self.pos;
        let mut node = if self.peek().is_some_and(|t| {
            t.kind == LexKind::Keyword && PRIMITIVES.contains(&t.text.as_str())
        }) {
            let kw = self.bump()?;
            self.kw_node(NodeType::PrimitiveType, kw.span(), vec![], &kw)
        } else if self.at_keyword("void") {
            let kw = self.bump()?;
            self.kw_node(NodeType::VoidType, kw.span(), vec![], &kw)
        } else {
            let mut children = Vec::new();
            loop {
                let seg = self.expect_ident()?;
                children.push(self.name_leaf(&seg));
                if self.at_punct("<") {
                    children.extend(self.type_args()?);
                }
                if self.at_punct(".")
                    && self.peek_at(1).is_some_and(|t| t.kind == LexKind::Ident)
                {
                    self.bump()?;
                } else {
                    break;
                }
            }
            self.b.node(NodeType::ClassType, self.span_from(start), children)
        };
        while self.at_punct("[") && self.peek_at(1).is_some_and(|t| t.is_punct("]")) {
            self.bump()?;
            self.bump()?;
            node = self.b.node(NodeType::ArrayType, self.span_from(start), vec![node]);
        }
        Ok(node)
    }

    fn type_args(&mut self) -> PResult<Vec<usize>> {
        self.expect("<")?;
        let mut out = Vec::new();
        while !self.at_punct(">") {
            if self.at_punct("?") {
                let q = self.bump()?;
                let qstart = self.pos - 1;
                let mut children = vec![];
                if self.at_keyword("extends") || self.at_keyword("super") {
                    let kw = self.bump()?;
                    let cstart = self.pos - 1;
                    let ty = self.parse_type()?;
                    let clause_ty = if kw.text == "extends" {
                        NodeType::ExtendsClause
                    } else {
                        NodeType::SuperClause
                    };
                    children.push(self.kw_node(clause_ty, self.span_from(cstart), vec![ty], &kw));
                }
                out.push(self.kw_node(
                    NodeType::WildcardType,
                    self.span_from(qstart),
                    children,
                    &q,
                ));
            } else {
                out.push(self.parse_type()?);
            }
            if self.at_punct(",") {
                self.bump()?;
            } else {
                break;
            }
        }
        self.expect(">")?;
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Statements
    // ------------------------------------------------------------------

    fn block(&mut self) -> PResult<usize> {
        let start = self.pos;
        self.expect("{")?;
        let mut children = vec![];
        while !self.at_punct("}") {
            children.push(self.statement()?);
        }
        self.expect("}")?;
        Ok(self.b.node(NodeType::Block, self.span_from(start), children))
    }

    fn statement(&mut self) -> PResult<usize> {
        let start = self.pos;
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err_eof("expected statement"));
        };
        match (tok.kind, tok.text.as_str()) {
            (LexKind::Punct, "{") => self.block(),
            (LexKind::Punct, ";") => {
                let t = self.bump()?;
                Ok(self.b.node(NodeType::EmptyStmt, t.span(), vec![]))
            }
            (LexKind::Keyword, "if") => {
                let kw = self.bump()?;
                self.expect("(")?;
                let cond = self.expression()?;
                self.expect(")")?;
                let then = self.statement()?;
                let mut children = vec![cond, then];
                if self.at_keyword("else") {
                    let ekw = self.bump()?;
                    let estart = self.pos - 1;
                    let stmt = self.statement()?;
                    children.push(self.kw_node(
                        NodeType::ElseClause,
                        self.span_from(estart),
                        vec![stmt],
                        &ekw,
                    ));
                }
                Ok(self.kw_node(NodeType::IfStmt, self.span_from(start), children, &kw))
            }
            (LexKind::Keyword, "while") => {
                let kw = self.bump()?;
                self.expect("(")?;
                let cond = self.expression()?;
                self.expect(")")?;
                let body = self.statement()?;
                Ok(self.kw_node(NodeType::WhileStmt, self.span_from(start), vec![cond, body], &kw))
            }
            (LexKind::Keyword, "do") => {
                let kw = self.bump()?;
                let body = self.statement()?;
                let wstart = self.pos;
                let wkw = self.expect("while")?;
                self.expect("(")?;
                let cond = self.expression()?;
                self.expect(")")?;
                self.expect(";")?;
                let clause =
                    self.kw_node(NodeType::WhileClause, self.span_from(wstart), vec![cond], &wkw);
                Ok(self.kw_node(NodeType::DoStmt, self.span_from(start), vec![body, clause], &kw))
            }
            (LexKind::Keyword, "for") => self.for_statement(),
            (LexKind::Keyword, "switch") => self.switch_statement(),
            (LexKind::Keyword, "return") => {
                let kw = self.bump()?;
                let mut children = vec![];
                if !self.at_punct(";") {
                    children.push(self.expression()?);
                }
                self.expect(";")?;
                Ok(self.kw_node(NodeType::ReturnStmt, self.span_from(start), children, &kw))
            }
            (LexKind::Keyword, "break") | (LexKind::Keyword, "continue") => {
                let kw = self.bump()?;
                let ty = if kw.text == "break" { NodeType::BreakStmt } else { NodeType::ContinueStmt };
                let mut children = vec![];
                if self.at_ident() {
                    let label = self.bump()?;
                    children.push(self.name_leaf(&label));
                }
                self.expect(";")?;
                Ok(self.kw_node(ty, self.span_from(start), children, &kw))
            }
            (LexKind::Keyword, "throw") => {
                let kw = self.bump()?;
                let e = self.expression()?;
                self.expect(";")?;
                Ok(self.kw_node(NodeType::ThrowStmt, self.span_from(start), vec![e], &kw))
            }
            (LexKind::Keyword, "try") => self.try_statement(),
            (LexKind::Keyword, "synchronized") => {
                let kw = self.bump()?;
                self.expect("(")?;
                let e = self.expression()?;
                self.expect(")")?;
                let body = self.block()?;
                Ok(self.kw_node(
                    NodeType::SynchronizedStmt,
                    self.span_from(start),
                    vec![e, body],
                    &kw,
                ))
            }
            (LexKind::Keyword, "assert") => {
                let kw = self.bump()?;
                let mut children = vec![self.expression()?];
                if self.at_punct(":") {
                    self.bump()?;
                    children.push(self.expression()?);
                }
                self.expect(";")?;
                Ok(self.kw_node(NodeType::AssertStmt, self.span_from(start), children, &kw))
            }
            (LexKind::Keyword, "class") => self.type_decl(start, vec![]),
            (LexKind::Keyword, "final") | (LexKind::Punct, "@")
                if self.local_decl_ahead() =>
            {
                self.local_var_decl()
            }
            (LexKind::Ident, _) if self.peek_at(1).is_some_and(|t| t.is_punct(":")) => {
                let label = self.bump()?;
                let name = self.name_leaf(&label);
                self.expect(":")?;
                let stmt = self.statement()?;
                Ok(self.b.node(NodeType::LabeledStmt, self.span_from(start), vec![name, stmt]))
            }
            _ => {
                if self.local_decl_ahead() {
                    self.local_var_decl()
                } else {
                    let e = self.expression()?;
                    self.expect(";")?;
                    Ok(self.b.node(NodeType::ExprStmt, self.span_from(start), vec![e]))
                }
            }
        }
    }

    /// Speculative lookahead: `final?/annotation* Type Ident` followed by
    /// `=`, `,`, `;`, or `[` starts a local variable declaration.
    fn local_decl_ahead(&mut self) -> bool {
        let cp = self.checkpoint();
        let ok = (|| -> PResult<bool> {
            self.modifiers(false)?;
            self.parse_type()?;
            self.expect_ident()?;
            Ok(self.at_punct("=")
                || self.at_punct(",")
                || self.at_punct(";")
                || self.at_punct("["))
        })()
        .unwrap_or(false);
        self.rollback(cp);
        ok
    }

    fn local_var_decl(&mut self) -> PResult<usize> {
        let start = self.pos;
        let mut children = self.modifiers(false)?;
        children.push(self.parse_type()?);
        loop {
            let idx = self.pos;
            let name = self.expect_ident()?;
            children.push(self.variable_declarator(name, idx)?);
            if self.at_punct(",") {
                self.bump()?;
            } else {
                break;
            }
        }
        self.expect(";")?;
        Ok(self.b.node(NodeType::LocalVarDecl, self.span_from(start), children))
    }

    fn for_statement(&mut self) -> PResult<usize> {
        let start = self.pos;
        let kw = self.bump()?;
        self.expect("(")?;

        // Enhanced for: `Type Ident :`.
        let cp = self.checkpoint();
        let foreach = (|| -> PResult<bool> {
            self.modifiers(false)?;
            self.parse_type()?;
            self.expect_ident()?;
            Ok(self.at_punct(":"))
        })()
        .unwrap_or(false);
        self.rollback(cp);

        if foreach {
            let pstart = self.pos;
            let mut pchildren = self.modifiers(false)?;
            pchildren.push(self.parse_type()?);
            let name = self.expect_ident()?;
            pchildren.push(self.name_leaf(&name));
            let param = self.b.node(NodeType::Parameter, self.span_from(pstart), pchildren);
            self.expect(":")?;
            let iterable = self.expression()?;
            self.expect(")")?;
            let body = self.statement()?;
            return Ok(self.kw_node(
                NodeType::ForEachStmt,
                self.span_from(start),
                vec![param, iterable, body],
                &kw,
            ));
        }

        let mut children = vec![];
        if self.at_punct(";") {
            self.bump()?;
        } else if self.local_decl_ahead_no_terminator() {
            children.push(self.for_init_decl()?);
            self.expect(";")?;
        } else {
            children.push(self.expression()?);
            while self.at_punct(",") {
                self.bump()?;
                children.push(self.expression()?);
            }
            self.expect(";")?;
        }
        if !self.at_punct(";") {
            children.push(self.expression()?);
        }
        self.expect(";")?;
        if !self.at_punct(")") {
            children.push(self.expression()?);
            while self.at_punct(",") {
                self.bump()?;
                children.push(self.expression()?);
            }
        }
        self.expect(")")?;
        children.push(self.statement()?);
        Ok(self.kw_node(NodeType::ForStmt, self.span_from(start), children, &kw))
    }

    fn local_decl_ahead_no_terminator(&mut self) -> bool {
        let cp = self.checkpoint();
        let ok = (|| -> PResult<bool> {
            self.modifiers(false)?;
            self.parse_type()?;
            self.expect_ident()?;
            Ok(self.at_punct("=") || self.at_punct(",") || self.at_punct("["))
        })()
        .unwrap_or(false);
        self.rollback(cp);
        ok
    }

    /// Declaration part of a basic `for` init (no trailing `;`).
    fn for_init_decl(&mut self) -> PResult<usize> {
        let start = self.pos;
        let mut children = self.modifiers(false)?;
        children.push(self.parse_type()?);
        loop {
            let idx = self.pos;
            let name = self.expect_ident()?;
            children.push(self.variable_declarator(name, idx)?);
            if self.at_punct(",") {
                self.bump()?;
            } else {
                break;
            }
        }
        Ok(self.b.node(NodeType::LocalVarDecl, self.span_from(start), children))
    }

    fn switch_statement(&mut self) -> PResult<usize> {
        let start = self.pos;
        let kw = self.bump()?;
        self.expect("(")?;
        let selector = self.expression()?;
        self.expect(")")?;
        self.expect("{")?;
        let mut children = vec![selector];
        while !self.at_punct("}") {
            let estart = self.pos;
            if self.at_keyword("case") {
                let ckw = self.bump()?;
                let label = self.expression()?;
                self.expect(":")?;
                let mut stmts = vec![label];
                while !self.at_keyword("case") && !self.at_keyword("default") && !self.at_punct("}")
                {
                    stmts.push(self.statement()?);
                }
                children.push(self.kw_node(
                    NodeType::CaseLabel,
                    self.span_from(estart),
                    stmts,
                    &ckw,
                ));
            } else if self.at_keyword("default") {
                let dkw = self.bump()?;
                self.expect(":")?;
                let mut stmts = vec![];
                while !self.at_keyword("case") && !self.at_keyword("default") && !self.at_punct("}")
                {
                    stmts.push(self.statement()?);
                }
                children.push(self.kw_node(
                    NodeType::DefaultLabel,
                    self.span_from(estart),
                    stmts,
                    &dkw,
                ));
            } else {
                return Err(self.err_here("expected `case` or `default`"));
            }
        }
        self.expect("}")?;
        Ok(self.kw_node(NodeType::SwitchStmt, self.span_from(start), children, &kw))
    }

    fn try_statement(&mut self) -> PResult<usize> {
        let start = self.pos;
        let kw = self.bump()?;
        let mut children = vec![];
        if self.at_punct("(") {
            self.bump()?;
            loop {
                children.push(self.for_init_decl()?);
                if self.at_punct(";") {
                    self.bump()?;
                    if self.at_punct(")") {
                        break;
                    }
                } else {
                    break;
                }
            }
            self.expect(")")?;
        }
        children.push(self.block()?);
        while self.at_keyword("catch") {
            let cstart = self.pos;
            let ckw = self.bump()?;
            self.expect("(")?;
            let pstart = self.pos;
            let mut pchildren = self.modifiers(false)?;
            pchildren.push(self.parse_type()?);
            while self.at_punct("|") {
                self.bump()?;
                pchildren.push(self.parse_type()?);
            }
            let name = self.expect_ident()?;
            pchildren.push(self.name_leaf(&name));
            let param = self.b.node(NodeType::Parameter, self.span_from(pstart), pchildren);
            self.expect(")")?;
            let body = self.block()?;
            children.push(self.kw_node(
                NodeType::CatchClause,
                self.span_from(cstart),
                vec![param, body],
                &ckw,
            ));
        }
        if self.at_keyword("finally") {
            let fstart = self.pos;
            let fkw = self.bump()?;
            let body = self.block()?;
            children.push(self.kw_node(
                NodeType::FinallyClause,
                self.span_from(fstart),
                vec![body],
                &fkw,
            ));
        }
        Ok(self.kw_node(NodeType::TryStmt, self.span_from(start), children, &kw))
    }

    // ------------------------------------------------------------------
    // Expressions
    // ------------------------------------------------------------------

    fn expression(&mut self) -> PResult<usize> {
        self.assignment()
    }

    fn assignment(&mut self) -> PResult<usize> {
        let start = self.pos;
        let lhs = self.ternary()?;
        if let Some((ty, text, ntoks)) = self.peek_assign_op() {
            let first = self.toks[self.pos].span();
            let mut last = first;
            for _ in 0..ntoks {
                last = self.bump()?.span();
            }
            let opspan = first.hull(&last);
            let rhs = self.assignment()?;
            return Ok(self.b.node_with_token(
                ty,
                self.span_from(start),
                vec![lhs, rhs],
                text,
                opspan,
            ));
        }
        Ok(lhs)
    }

    fn peek_assign_op(&self) -> Option<(NodeType, &'static str, usize)> {
        let t = self.peek()?;
        if t.kind != LexKind::Punct {
            return None;
        }
        let simple = match t.text.as_str() {
            "=" => Some(NodeType::Assign),
            "+=" => Some(NodeType::PlusAssign),
            "-=" => Some(NodeType::MinusAssign),
            "*=" => Some(NodeType::MultiplyAssign),
            "/=" => Some(NodeType::DivideAssign),
            "%=" => Some(NodeType::RemainderAssign),
            "&=" => Some(NodeType::AndAssign),
            "|=" => Some(NodeType::OrAssign),
            "^=" => Some(NodeType::XorAssign),
            "<<=" => Some(NodeType::LeftShiftAssign),
            _ => None,
        };
        if let Some(ty) = simple {
            let text: &'static str = match ty {
                NodeType::Assign => "=",
                NodeType::PlusAssign => "+=",
                NodeType::MinusAssign => "-=",
                NodeType::MultiplyAssign => "*=",
                NodeType::DivideAssign => "/=",
                NodeType::RemainderAssign => "%=",
                NodeType::AndAssign => "&=",
                NodeType::OrAssign => "|=",
                NodeType::XorAssign => "^=",
                _ => "<<=",
            };
            return Some((ty, text, 1));
        }
        if t.is_punct(">") {
            if self.adjacent(self.pos, self.pos + 1) {
                if self.peek_at(1).is_some_and(|n| n.is_punct(">="))
                {
                    return Some((NodeType::SignedRightShiftAssign, ">>=", 2));
                }
                if self.peek_at(1).is_some_and(|n| n.is_punct(">"))
                    && self.adjacent(self.pos + 1, self.pos + 2)
                    && self.peek_at(2).is_some_and(|n| n.is_punct(">="))
                {
                    return Some((NodeType::UnsignedRightShiftAssign, ">>>=", 3));
                }
            }
            return None;
        }
        None
    }

    fn ternary(&mut self) -> PResult<usize> {
        let start = self.pos;
        let cond = self.binary(0)?;
        if self.at_punct("?") {
            let q = self.bump()?;
            let then = self.expression()?;
            self.expect(":")?;
            let els = self.assignment()?;
            return Ok(self.kw_node(
                NodeType::Conditional,
                self.span_from(start),
                vec![cond, then, els],
                &q,
            ));
        }
        Ok(cond)
    }

    /// Binary operator levels, loosest first.
    fn binary(&mut self, level: usize) -> PResult<usize> {
        const TOP: usize = 9;
        if level > TOP {
            return self.unary();
        }
        let start = self.pos;
        let mut lhs = self.binary(level + 1)?;
        loop {
            // instanceof sits at the relational level.
            if level == 6 && self.at_keyword("instanceof") {
                let kw = self.bump()?;
                let ty = self.parse_type()?;
                lhs = self.kw_node(NodeType::InstanceOf, self.span_from(start), vec![lhs, ty], &kw);
                continue;
            }
            let Some((ty, text, ntoks)) = self.peek_binary_op(level) else {
                return Ok(lhs);
            };
            let first = self.toks[self.pos].span();
            let mut last = first;
            for _ in 0..ntoks {
                last = self.bump()?.span();
            }
            let opspan = first.hull(&last);
            let rhs = self.binary(level + 1)?;
            lhs = self.b.node_with_token(ty, self.span_from(start), vec![lhs, rhs], text, opspan);
        }
    }

    fn peek_binary_op(&self, level: usize) -> Option<(NodeType, &'static str, usize)> {
        let t = self.peek()?;
        if t.kind != LexKind::Punct {
            return None;
        }
        let s = t.text.as_str();
        match level {
            0 if s == "||" => Some((NodeType::Or, "||", 1)),
            1 if s == "&&" => Some((NodeType::And, "&&", 1)),
            2 if s == "|" => Some((NodeType::BinaryOr, "|", 1)),
            3 if s == "^" => Some((NodeType::Xor, "^", 1)),
            4 if s == "&" => Some((NodeType::BinaryAnd, "&", 1)),
            5 => match s {
                "==" => Some((NodeType::Equals, "==", 1)),
                "!=" => Some((NodeType::NotEquals, "!=", 1)),
                _ => None,
            },
            6 => match s {
                "<" => Some((NodeType::LessThan, "<", 1)),
                "<=" => Some((NodeType::LessEquals, "<=", 1)),
                ">=" => Some((NodeType::GreaterEquals, ">=", 1)),
                // A lone `>`; adjacent `>`/`>=` sequences belong to shifts
                // and shift-assignments.
                ">" if !(self.adjacent(self.pos, self.pos + 1)
                    && self
                        .peek_at(1)
                        .is_some_and(|n| n.is_punct(">") || n.is_punct(">="))) =>
                {
                    Some((NodeType::GreaterThan, ">", 1))
                }
                _ => None,
            },
            7 => match s {
                "<<" => Some((NodeType::LeftShift, "<<", 1)),
                ">" if self.adjacent(self.pos, self.pos + 1)
                    && self.peek_at(1).is_some_and(|n| n.is_punct(">")) =>
                {
                    if self.adjacent(self.pos + 1, self.pos + 2)
                        && self.peek_at(2).is_some_and(|n| n.is_punct(">"))
                    {
                        Some((NodeType::UnsignedRightShift, ">>>", 3))
                    } else if self
                        .peek_at(2)
                        .is_some_and(|n| n.is_punct("=") && self.adjacent(self.pos + 1, self.pos + 2))
                    {
                        // `>>=` split as [>, >, =] never occurs (the lexer
                        // fuses `>=`), but guard anyway.
                        None
                    } else if self
                        .peek_at(2)
                        .is_some_and(|n| n.is_punct(">=") && self.adjacent(self.pos + 1, self.pos + 2))
                    {
                        // `>>>=`
                        None
                    } else {
                        Some((NodeType::SignedRightShift, ">>", 2))
                    }
                }
                _ => None,
            },
            8 => match s {
                "+" => Some((NodeType::Plus, "+", 1)),
                "-" => Some((NodeType::Minus, "-", 1)),
                _ => None,
            },
            9 => match s {
                "*" => Some((NodeType::Multiply, "*", 1)),
                "/" => Some((NodeType::Divide, "/", 1)),
                "%" => Some((NodeType::Remainder, "%", 1)),
                _ => None,
            },
            _ => None,
        }
    }

    fn unary(&mut self) -> PResult<usize> {
        let start = self.pos;
        let Some(tok) = self.peek() else {
            return Err(self.err_eof("expected expression"));
        };
        if tok.kind == LexKind::Punct {
            let ty = match tok.text.as_str() {
                "+" => Some(NodeType::UnaryPlus),
                "-" => Some(NodeType::UnaryMinus),
                "!" => Some(NodeType::LogicalComplement),
                "~" => Some(NodeType::BitwiseComplement),
                "++" => Some(NodeType::PreIncrement),
                "--" => Some(NodeType::PreDecrement),
                _ => None,
            };
            if let Some(ty) = ty {
                let op = self.bump()?;
                let operand = self.unary()?;
                return Ok(self.kw_node(ty, self.span_from(start), vec![operand], &op));
            }
            if tok.is_punct("(") {
                if let Some(node) = self.try_cast()? {
                    return Ok(node);
                }
            }
        }
        self.postfix()
    }

    /// `(Type) operand`, distinguished from a parenthesized expression by
    /// what follows the closing paren.
    fn try_cast(&mut self) -> PResult<Option<usize>> {
        let cp = self.checkpoint();
        let start = self.pos;
        self.bump()?; // (
        let ty = match self.parse_type() {
            Ok(ty) => ty,
            Err(_) => {
                self.rollback(cp);
                return Ok(None);
            }
        };
        if !self.at_punct(")") {
            self.rollback(cp);
            return Ok(None);
        }
        let primitive = matches!(
            self.builder_type(ty),
            NodeType::PrimitiveType | NodeType::ArrayType
        );
        self.bump()?; // )
        let castable = match self.peek() {
            Some(t) => match t.kind {
                LexKind::Ident | LexKind::Int | LexKind::Float | LexKind::Char | LexKind::Str => {
                    true
                }
                LexKind::Keyword => {
                    matches!(t.text.as_str(), "this" | "super" | "new" | "true" | "false" | "null")
                }
                LexKind::Punct => match t.text.as_str() {
                    "(" | "!" | "~" => true,
                    "+" | "-" => primitive,
                    _ => false,
                },
            },
            None => false,
        };
        if !castable {
            self.rollback(cp);
            return Ok(None);
        }
        let operand = self.unary()?;
        Ok(Some(self.b.node(NodeType::Cast, self.span_from(start), vec![ty, operand])))
    }

    fn builder_type(&self, idx: usize) -> NodeType {
        self.b.node_type(idx)
    }

    fn postfix(&mut self) -> PResult<usize> {
        let start = self.pos;
        let mut e = self.primary()?;
        loop {
            if self.at_punct(".") {
                self.bump()?;
                if self.at_keyword("class") {
                    let kw = self.bump()?;
                    e = self.kw_node(NodeType::ClassLiteral, self.span_from(start), vec![e], &kw);
                    continue;
                }
                if self.at_keyword("this") {
                    let kw = self.bump()?;
                    let this = self.kw_node(NodeType::ThisExpr, kw.span(), vec![], &kw);
                    e = self.b.node(NodeType::FieldAccess, self.span_from(start), vec![e, this]);
                    continue;
                }
                let name = self.expect_ident()?;
                if self.at_punct("(") {
                    let nm = self.name_leaf(&name);
                    let mut children = vec![e, nm];
                    children.extend(self.arguments()?);
                    e = self.b.node(NodeType::MethodCall, self.span_from(start), children);
                } else {
                    let nm = self.name_leaf(&name);
                    e = self.b.node(NodeType::FieldAccess, self.span_from(start), vec![e, nm]);
                }
            } else if self.at_punct("[") {
                self.bump()?;
                let idx = self.expression()?;
                self.expect("]")?;
                e = self.b.node(NodeType::ArrayAccess, self.span_from(start), vec![e, idx]);
            } else if self.at_punct("++") {
                let op = self.bump()?;
                e = self.kw_node(NodeType::PostIncrement, self.span_from(start), vec![e], &op);
            } else if self.at_punct("--") {
                let op = self.bump()?;
                e = self.kw_node(NodeType::PostDecrement, self.span_from(start), vec![e], &op);
            } else if self.at_punct("::") {
                let op = self.bump()?;
                let mut children = vec![e];
                if self.at_keyword("new") {
                    self.bump()?;
                } else {
                    let name = self.expect_ident()?;
                    children.push(self.name_leaf(&name));
                }
                e = self.kw_node(NodeType::MethodRef, self.span_from(start), children, &op);
            } else {
                return Ok(e);
            }
        }
    }

    fn arguments(&mut self) -> PResult<Vec<usize>> {
        self.expect("(")?;
        let mut out = vec![];
        while !self.at_punct(")") {
            out.push(self.expression()?);
            if self.at_punct(",") {
                self.bump()?;
            } else {
                break;
            }
        }
        self.expect(")")?;
        Ok(out)
    }

    fn primary(&mut self) -> PResult<usize> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.err_eof("expected expression"));
        };
        match tok.kind {
            LexKind::Int => {
                self.bump()?;
                let ty = if tok.text.ends_with('l') || tok.text.ends_with('L') {
                    NodeType::LongLiteral
                } else {
                    NodeType::IntegerLiteral
                };
                Ok(self.b.leaf(ty, tok.span(), tok.text))
            }
            LexKind::Float => {
                self.bump()?;
                Ok(self.b.leaf(NodeType::DoubleLiteral, tok.span(), tok.text))
            }
            LexKind::Char => {
                self.bump()?;
                Ok(self.b.leaf(NodeType::CharLiteral, tok.span(), tok.text))
            }
            LexKind::Str => {
                self.bump()?;
                Ok(self.b.leaf(NodeType::StringLiteral, tok.span(), tok.text))
            }
            LexKind::Ident => {
                if self.peek_at(1).is_some_and(|t| t.is_punct("->")) {
                    return self.lambda_from_single_param();
                }
                self.bump()?;
                if self.at_punct("(") {
                    let start = self.pos - 1;
                    let nm = self.name_leaf(&tok);
                    let mut children = vec![nm];
                    children.extend(self.arguments()?);
                    return Ok(self.b.node(NodeType::MethodCall, self.span_from(start), children));
                }
                Ok(self.name_leaf(&tok))
            }
            LexKind::Keyword => match tok.text.as_str() {
                "true" | "false" => {
                    self.bump()?;
                    Ok(self.b.leaf(NodeType::BooleanLiteral, tok.span(), tok.text))
                }
                "null" => {
                    self.bump()?;
                    Ok(self.b.leaf(NodeType::NullLiteral, tok.span(), tok.text))
                }
                "this" | "super" => {
                    let start = self.pos;
                    let kw = self.bump()?;
                    let ty = if kw.text == "this" { NodeType::ThisExpr } else { NodeType::SuperExpr };
                    let node = self.kw_node(ty, kw.span(), vec![], &kw);
                    if self.at_punct("(") {
                        let mut children = vec![node];
                        children.extend(self.arguments()?);
                        return Ok(self.b.node(
                            NodeType::MethodCall,
                            self.span_from(start),
                            children,
                        ));
                    }
                    Ok(node)
                }
                "new" => self.creation(),
                kw if PRIMITIVES.contains(&kw) || kw == "void" => {
                    // e.g. `int.class`, `int[].class`
                    let start = self.pos;
                    let ty = self.parse_type()?;
                    self.expect(".")?;
                    let ckw = self.expect("class")?;
                    Ok(self.kw_node(NodeType::ClassLiteral, self.span_from(start), vec![ty], &ckw))
                }
                _ => Err(self.err_here("expected expression")),
            },
            LexKind::Punct => {
                if tok.is_punct("(") {
                    if self.lambda_params_ahead() {
                        return self.lambda_from_param_list();
                    }
                    self.bump()?;
                    let e = self.expression()?;
                    self.expect(")")?;
                    return Ok(e);
                }
                Err(self.err_here("expected expression"))
            }
        }
    }

    fn creation(&mut self) -> PResult<usize> {
        let start = self.pos;
        let kw = self.bump()?; // new
        let ty = self.parse_type_no_array()?;
        if self.at_punct("[") {
            let mut children = vec![ty];
            while self.at_punct("[") {
                self.bump()?;
                if self.at_punct("]") {
                    self.bump()?;
                } else {
                    children.push(self.expression()?);
                    self.expect("]")?;
                }
            }
            if self.at_punct("{") {
                children.push(self.array_initializer()?);
            }
            return Ok(self.kw_node(NodeType::ArrayCreation, self.span_from(start), children, &kw));
        }
        let mut children = vec![ty];
        children.extend(self.arguments()?);
        if self.at_punct("{") {
            // Anonymous class body.
            self.bump()?;
            while !self.at_punct("}") {
                if self.at_punct(";") {
                    self.bump()?;
                    continue;
                }
                children.push(self.class_member()?);
            }
            self.expect("}")?;
        }
        Ok(self.kw_node(NodeType::ObjectCreation, self.span_from(start), children, &kw))
    }

    /// A type without trailing `[]` dims; `new` handles those itself.
    fn parse_type_no_array(&mut self) -> PResult<usize> {
        let start = self.pos;
        if self.peek().is_some_and(|t| {
            t.kind == LexKind::Keyword && PRIMITIVES.contains(&t.text.as_str())
        }) {
            let kw = self.bump()?;
            return Ok(self.kw_node(NodeType::PrimitiveType, kw.span(), vec![], &kw));
        }
        let mut children = Vec::new();
        loop {
            let seg = self.expect_ident()?;
            children.push(self.name_leaf(&seg));
            if self.at_punct("<") {
                children.extend(self.type_args()?);
            }
            if self.at_punct(".") && self.peek_at(1).is_some_and(|t| t.kind == LexKind::Ident) {
                self.bump()?;
            } else {
                break;
            }
        }
        Ok(self.b.node(NodeType::ClassType, self.span_from(start), children))
    }

    /// Scan (without building nodes) whether a `(`-opened token run is a
    /// lambda parameter list, i.e. the matching `)` is followed by `->`.
    fn lambda_params_ahead(&self) -> bool {
        let mut depth = 0usize;
        let mut i = self.pos;
        while let Some(t) = self.toks.get(i) {
            if t.is_punct("(") {
                depth += 1;
            } else if t.is_punct(")") {
                depth -= 1;
                if depth == 0 {
                    return self.toks.get(i + 1).is_some_and(|n| n.is_punct("->"));
                }
            }
            i += 1;
        }
        false
    }

    fn lambda_from_single_param(&mut self) -> PResult<usize> {
        let start = self.pos;
        let name = self.expect_ident()?;
        let nm = self.name_leaf(&name);
        let param = self.b.node(NodeType::Parameter, name.span(), vec![nm]);
        let arrow = self.expect("->")?;
        let body = self.lambda_body()?;
        Ok(self.kw_node(NodeType::LambdaExpr, self.span_from(start), vec![param, body], &arrow))
    }

    fn lambda_from_param_list(&mut self) -> PResult<usize> {
        let start = self.pos;
        self.expect("(")?;
        let mut params = vec![];
        while !self.at_punct(")") {
            let pstart = self.pos;
            // Typed (`X x`) or bare (`x`) parameter.
            let cp = self.checkpoint();
            let typed = (|| -> PResult<bool> {
                self.modifiers(false)?;
                self.parse_type()?;
                Ok(self.at_ident())
            })()
            .unwrap_or(false);
            self.rollback(cp);
            let mut children = vec![];
            if typed {
                children = self.modifiers(false)?;
                children.push(self.parse_type()?);
            }
            let name = self.expect_ident()?;
            children.push(self.name_leaf(&name));
            params.push(self.b.node(NodeType::Parameter, self.span_from(pstart), children));
            if self.at_punct(",") {
                self.bump()?;
            }
        }
        self.expect(")")?;
        let arrow = self.expect("->")?;
        let body = self.lambda_body()?;
        let mut children = params;
        children.push(body);
        Ok(self.kw_node(NodeType::LambdaExpr, self.span_from(start), children, &arrow))
    }

    fn lambda_body(&mut self) -> PResult<usize> {
        if self.at_punct("{") {
            self.block()
        } else {
            self.expression()
        }
    }
}
