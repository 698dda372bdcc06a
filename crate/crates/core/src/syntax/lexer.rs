//! Java lexer. Produces tokens with exact source text and 0-based
//! character positions; comments and whitespace are skipped.
//!
//! `>` is always lexed as a single character so the parser can close nested
//! generic type arguments; shift operators are reassembled from adjacent
//! `>` tokens during expression parsing.

use super::{ParseError, Span};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum LexKind {
    Ident,
    Keyword,
    Int,
    Float,
    Char,
    Str,
    Punct,
}

#[derive(Clone, Debug)]
pub(crate) struct LexToken {
    pub kind: LexKind,
    pub text: String,
    pub line: u32,
    pub col: u32,
}

impl LexToken {
    pub fn span(&self) -> Span {
        Span::on_line(self.line, self.col, self.text.chars().count() as u32)
    }

    pub fn is(&self, text: &str) -> bool {
        self.text == text
    }

    pub fn is_punct(&self, text: &str) -> bool {
        self.kind == LexKind::Punct && self.text == text
    }

    pub fn is_keyword(&self, text: &str) -> bool {
        self.kind == LexKind::Keyword && self.text == text
    }
}

const KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try",
    "void", "volatile", "while", "true", "false", "null",
];

pub(crate) const MODIFIERS: &[&str] = &[
    "public", "protected", "private", "static", "final", "abstract", "native", "synchronized",
    "transient", "volatile", "strictfp",
];

pub(crate) const PRIMITIVES: &[&str] =
    &["boolean", "byte", "char", "short", "int", "long", "float", "double"];

// Multi-character punctuators, longest first. The >> family is deliberately
// absent (see module docs); >= stays fused because it never closes generics.
const PUNCTS: &[&str] = &[
    "<<=", "<<", "<=", ">=", "==", "!=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=",
    "&=", "|=", "^=", "->", "::", "...",
];

const SINGLE_PUNCTS: &str = "+-*/%!~=<>&|^?:.,;(){}[]@";

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    col: u32,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, off: usize) -> Option<char> {
        self.chars.get(self.pos + off).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 0;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(i, c)| self.peek_at(i) == Some(c))
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col: self.col, message: message.into() }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

pub(crate) fn lex(source: &str) -> Result<Vec<LexToken>, ParseError> {
    let mut cur = Cursor { chars: source.chars().collect(), pos: 0, line: 0, col: 0 };
    let mut out = Vec::new();

    while let Some(c) = cur.peek() {
        if c == '\t' {
            return Err(cur.error("tab character in source; normalize indentation first"));
        }
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '/' && cur.peek_at(1) == Some('/') {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        if c == '/' && cur.peek_at(1) == Some('*') {
            let (line, col) = (cur.line, cur.col);
            cur.bump();
            cur.bump();
            let mut closed = false;
            while let Some(c) = cur.bump() {
                if c == '*' && cur.peek() == Some('/') {
                    cur.bump();
                    closed = true;
                    break;
                }
            }
            if !closed {
                return Err(ParseError { line, col, message: "unterminated block comment".into() });
            }
            continue;
        }

        let (line, col) = (cur.line, cur.col);
        if is_ident_start(c) {
            let mut text = String::new();
            while let Some(c) = cur.peek() {
                if !is_ident_part(c) {
                    break;
                }
                text.push(c);
                cur.bump();
            }
            let kind = if KEYWORDS.contains(&text.as_str()) { LexKind::Keyword } else { LexKind::Ident };
            out.push(LexToken { kind, text, line, col });
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && cur.peek_at(1).is_some_and(|d| d.is_ascii_digit())) {
            out.push(lex_number(&mut cur, line, col)?);
            continue;
        }
        if c == '"' {
            out.push(lex_quoted(&mut cur, '"', LexKind::Str, line, col)?);
            continue;
        }
        if c == '\'' {
            out.push(lex_quoted(&mut cur, '\'', LexKind::Char, line, col)?);
            continue;
        }

        if let Some(p) = PUNCTS.iter().find(|p| cur.starts_with(p)) {
            for _ in 0..p.len() {
                cur.bump();
            }
            out.push(LexToken { kind: LexKind::Punct, text: (*p).into(), line, col });
            continue;
        }
        if SINGLE_PUNCTS.contains(c) {
            cur.bump();
            out.push(LexToken { kind: LexKind::Punct, text: c.to_string(), line, col });
            continue;
        }
        return Err(cur.error(format!("unexpected character {c:?}")));
    }
    Ok(out)
}

fn lex_number(cur: &mut Cursor, line: u32, col: u32) -> Result<LexToken, ParseError> {
    let mut text = String::new();
    let mut is_float = false;

    let push = |cur: &mut Cursor, text: &mut String| {
        text.push(cur.bump().unwrap());
    };

    if cur.peek() == Some('0')
        && matches!(cur.peek_at(1), Some('x') | Some('X') | Some('b') | Some('B'))
    {
        push(cur, &mut text);
        push(cur, &mut text);
        while cur.peek().is_some_and(|c| c.is_ascii_hexdigit() || c == '_') {
            push(cur, &mut text);
        }
        if text.len() == 2 {
            return Err(cur.error("malformed numeric literal"));
        }
    } else {
        while cur.peek().is_some_and(|c| c.is_ascii_digit() || c == '_') {
            push(cur, &mut text);
        }
        if cur.peek() == Some('.')
            && cur.peek_at(1).map(|c| c != '.').unwrap_or(true)
        {
            is_float = true;
            push(cur, &mut text);
            while cur.peek().is_some_and(|c| c.is_ascii_digit() || c == '_') {
                push(cur, &mut text);
            }
        }
        if matches!(cur.peek(), Some('e') | Some('E')) {
            let next = cur.peek_at(1);
            let signed_digit = matches!(next, Some('+') | Some('-'))
                && cur.peek_at(2).is_some_and(|c| c.is_ascii_digit());
            if next.is_some_and(|c| c.is_ascii_digit()) || signed_digit {
                is_float = true;
                push(cur, &mut text);
                if matches!(cur.peek(), Some('+') | Some('-')) {
                    push(cur, &mut text);
                }
                while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                    push(cur, &mut text);
                }
            }
        }
    }
    if matches!(cur.peek(), Some('f') | Some('F') | Some('d') | Some('D')) && !text.starts_with("0x")
    {
        is_float = true;
        push(cur, &mut text);
    } else if matches!(cur.peek(), Some('l') | Some('L')) {
        push(cur, &mut text);
    }
    let kind = if is_float { LexKind::Float } else { LexKind::Int };
    Ok(LexToken { kind, text, line, col })
}

fn lex_quoted(
    cur: &mut Cursor,
    quote: char,
    kind: LexKind,
    line: u32,
    col: u32,
) -> Result<LexToken, ParseError> {
    let mut text = String::new();
    text.push(cur.bump().unwrap());
    loop {
        match cur.peek() {
            None | Some('\n') => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unterminated {} literal", if quote == '"' { "string" } else { "char" }),
                });
            }
            Some('\\') => {
                text.push(cur.bump().unwrap());
                match cur.peek() {
                    None | Some('\n') => {
                        return Err(ParseError { line, col, message: "unterminated escape".into() })
                    }
                    Some(_) => text.push(cur.bump().unwrap()),
                }
            }
            Some(c) if c == quote => {
                text.push(cur.bump().unwrap());
                return Ok(LexToken { kind, text, line, col });
            }
            Some(_) => text.push(cur.bump().unwrap()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(src: &str) -> Vec<String> {
        lex(src).unwrap().into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn splits_operators_maximally_except_right_shift() {
        assert_eq!(texts("a >= b >> 2"), vec!["a", ">=", "b", ">", ">", "2"]);
        assert_eq!(texts("x <<= 1"), vec!["x", "<<=", "1"]);
        assert_eq!(texts("List<List<Integer>>"), vec!["List", "<", "List", "<", "Integer", ">", ">"]);
    }

    #[test]
    fn tracks_positions_across_lines() {
        let toks = lex("int a;\n  a = 1;").unwrap();
        let a2 = &toks[3];
        assert_eq!((a2.line, a2.col), (1, 2));
        assert_eq!(a2.span(), Span::on_line(1, 2, 1));
    }

    #[test]
    fn string_and_char_literals_keep_quotes_and_escapes() {
        assert_eq!(texts(r#"s = "END_OF_TEXT";"#), vec!["s", "=", r#""END_OF_TEXT""#, ";"]);
        assert_eq!(texts(r"c = '\n';"), vec!["c", "=", r"'\n'", ";"]);
    }

    #[test]
    fn numeric_literal_shapes() {
        let toks = lex("0 12_3 0xFF 1L 1.5 2e3 .5 1.5f 3d").unwrap();
        let kinds: Vec<LexKind> = toks.iter().map(|t| t.kind).collect();
        use LexKind::*;
        assert_eq!(kinds, vec![Int, Int, Int, Int, Float, Float, Float, Float, Float]);
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(texts("a // c\n/* x\ny */ b"), vec!["a", "b"]);
    }

    #[test]
    fn rejects_tabs_and_unterminated_literals() {
        assert!(lex("\tint").is_err());
        assert!(lex("\"abc").is_err());
        assert!(lex("/* abc").is_err());
    }
}
