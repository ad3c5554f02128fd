use std::fmt;

use crate::graph::{CycleGraph, EdgeLabel};
use crate::invariants::{OrbitInvariants, Orientability, SeifertPair};

/// Byte range `start..end` into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: SourceSpan,
    pub message: String,
}

impl Diagnostic {
    /// The message followed by the offending line with a caret marker.
    pub fn render(&self, src: &str) -> String {
        let start = self.span.start.min(src.len());
        let line_start = src[..start].rfind('\n').map_or(0, |i| i + 1);
        let line_end = src[start..].find('\n').map_or(src.len(), |i| start + i);
        let line = &src[line_start..line_end];
        let col = src[line_start..start].chars().count();
        let width = src[start..self.span.end.clamp(start, line_end)]
            .chars()
            .count()
            .max(1);
        format!(
            "error at byte {}: {}\n  {}\n  {}{}",
            self.span.start,
            self.message,
            line,
            " ".repeat(col),
            "^".repeat(width)
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}..{}: {}",
            self.span.start, self.span.end, self.message
        )
    }
}

/// Every diagnostic collected while parsing one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseError {
    pub fn render(&self, src: &str) -> String {
        self.diagnostics
            .iter()
            .map(|d| d.render(src))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Punct(char),
    Minus,
    Num(String),
    Word(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Punct(c) => write!(f, "'{c}'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn lex(src: &str, diags: &mut Vec<Diagnostic>) -> Vec<Token> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some((i, c)) = it.next() {
        let span_to = |j: usize| SourceSpan::new(i, j);
        match c {
            c if c.is_whitespace() => {}
            '{' | '}' | '(' | ')' | '[' | ']' | '<' | '>' | '=' | ';' | ',' => out.push(Token {
                tok: Tok::Punct(c),
                span: span_to(i + 1),
            }),
            '-' => out.push(Token {
                tok: Tok::Minus,
                span: span_to(i + 1),
            }),
            '0'..='9' => {
                let mut end = i + 1;
                while let Some(&(j, d)) = it.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + 1;
                    it.next();
                }
                out.push(Token {
                    tok: Tok::Num(src[i..end].to_string()),
                    span: span_to(end),
                });
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = i + 1;
                while let Some(&(j, d)) = it.peek() {
                    if !d.is_ascii_alphabetic() {
                        break;
                    }
                    end = j + 1;
                    it.next();
                }
                out.push(Token {
                    tok: Tok::Word(src[i..end].to_string()),
                    span: span_to(end),
                });
            }
            other => diags.push(Diagnostic {
                span: span_to(i + other.len_utf8()),
                message: format!("unexpected character {other:?}"),
            }),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        span: SourceSpan::new(src.len(), src.len()),
    });
    out
}

/// Marker for a failure whose diagnostic has already been recorded.
struct Reported;

type PResult<T> = std::result::Result<T, Reported>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    diags: Vec<Diagnostic>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&mut self, span: SourceSpan, message: String) -> PResult<T> {
        self.diags.push(Diagnostic { span, message });
        Err(Reported)
    }

    fn expected<T>(&mut self, what: &str) -> PResult<T> {
        let t = self.peek().clone();
        self.error(t.span, format!("expected {what} but found {}", t.tok))
    }

    fn punct(&mut self, c: char) -> PResult<()> {
        if self.peek().tok == Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            self.expected(&format!("'{c}'"))
        }
    }

    fn at(&self, c: char) -> bool {
        self.peek().tok == Tok::Punct(c)
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        if matches!(&self.peek().tok, Tok::Word(w) if w == kw) {
            self.bump();
            Ok(())
        } else {
            self.expected(&format!("'{kw}'"))
        }
    }

    /// `key '=' NAT`, range-checked.
    fn field<T: TryFrom<u64>>(&mut self, key: &str) -> PResult<T> {
        self.keyword(key)?;
        self.punct('=')?;
        self.nat()
    }

    fn nat<T: TryFrom<u64>>(&mut self) -> PResult<T> {
        let t = self.bump();
        match t.tok {
            Tok::Num(n) => match n.parse::<u64>().ok().and_then(|v| T::try_from(v).ok()) {
                Some(v) => Ok(v),
                None => self.error(t.span, format!("integer {n} is out of range")),
            },
            Tok::Minus => self.error(t.span, "expected a nonnegative integer".to_string()),
            other => self.error(
                t.span,
                format!("expected a nonnegative integer but found {other}"),
            ),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        match t.tok {
            Tok::Num(n) => {
                let text = if neg { format!("-{n}") } else { n };
                match text.parse::<i64>() {
                    Ok(v) => Ok(v),
                    Err(_) => self.error(t.span, format!("integer {text} is out of range")),
                }
            }
            other => self.error(t.span, format!("expected an integer but found {other}")),
        }
    }

    /// Skips to the next `;` or `}` so parsing can resume at a segment
    /// boundary.
    fn recover(&mut self) {
        while !matches!(
            self.peek().tok,
            Tok::Punct(';') | Tok::Punct('}') | Tok::Eof
        ) {
            self.bump();
        }
    }

    fn header(&mut self) -> PResult<(Orientability, [u32; 4])> {
        self.punct('(')?;
        let t = self.bump();
        let eps = match &t.tok {
            Tok::Word(w) if w == "o" => Orientability::Orientable,
            Tok::Word(w) if w == "n" => Orientability::Nonorientable,
            other => {
                let msg = format!("expected 'o' or 'n' but found {other}");
                return self.error(t.span, msg);
            }
        };
        let mut vals = [0u32; 4];
        for (slot, key) in vals.iter_mut().zip(["g", "f", "s", "t"]) {
            self.punct(',')?;
            *slot = self.field(key)?;
        }
        self.punct(')')?;
        Ok((eps, vals))
    }

    fn pairs(&mut self) -> PResult<Vec<SeifertPair>> {
        let mut out = Vec::new();
        loop {
            self.punct('(')?;
            let m = self.nat()?;
            self.punct(',')?;
            let n = self.nat()?;
            self.punct(')')?;
            out.push(SeifertPair { m, n });
            if !self.at(',') {
                return Ok(out);
            }
            self.bump();
        }
    }

    fn graph(&mut self) -> PResult<CycleGraph> {
        self.keyword("G")?;
        self.punct('=')?;
        self.punct('[')?;
        let mut cycles = Vec::new();
        loop {
            self.punct('<')?;
            let mut cycle = Vec::new();
            loop {
                cycle.push(self.edge()?);
                if !self.at(',') {
                    break;
                }
                self.bump();
            }
            self.punct('>')?;
            cycles.push(cycle);
            if !self.at(',') {
                break;
            }
            self.bump();
        }
        self.punct(']')?;
        Ok(CycleGraph::new(cycles))
    }

    fn edge(&mut self) -> PResult<EdgeLabel> {
        let t = self.bump();
        if let Tok::Word(w) = &t.tok {
            if let Some(l) = EdgeLabel::ALL.into_iter().find(|l| l.as_str() == w) {
                return Ok(l);
            }
        }
        self.error(
            t.span,
            format!(
                "expected an edge label (F, SE, SP, K, RP) but found {}",
                t.tok
            ),
        )
    }

    fn manifold(&mut self) -> Option<OrbitInvariants> {
        let mut failed = false;
        let mut b = 0;
        let mut eps = Orientability::Orientable;
        let mut vals = [0u32; 4];
        let mut pairs = Vec::new();
        let mut graph = CycleGraph::empty();

        if self.punct('{').is_err() {
            return None;
        }
        let bres = (|| -> PResult<i64> {
            self.keyword("b")?;
            self.punct('=')?;
            self.int()
        })();
        match bres {
            Ok(v) => b = v,
            Err(Reported) => {
                failed = true;
                self.recover();
            }
        }
        if self.punct(';').is_err() {
            failed = true;
            self.recover();
            if self.at(';') {
                self.bump();
            }
        }
        match self.header() {
            Ok((e, v)) => {
                eps = e;
                vals = v;
            }
            Err(Reported) => {
                failed = true;
                self.recover();
            }
        }

        let mut seen_pairs = false;
        let mut seen_graph = false;
        let mut resyncing = failed;
        while self.at(';') {
            self.bump();
            let t = self.peek().clone();
            let starts_segment =
                matches!(&t.tok, Tok::Punct('(')) || matches!(&t.tok, Tok::Word(w) if w == "G");
            if resyncing && !starts_segment {
                // still inside the segment that failed; skip without piling on
                self.recover();
                continue;
            }
            let res = match &t.tok {
                Tok::Punct('(') if !seen_pairs && !seen_graph => {
                    seen_pairs = true;
                    self.pairs().map(|p| pairs = p)
                }
                Tok::Word(w) if w == "G" && !seen_graph => {
                    seen_graph = true;
                    self.graph().map(|g| graph = g)
                }
                _ => self.expected(if seen_graph {
                    "'}'"
                } else if seen_pairs {
                    "'G'"
                } else {
                    "Seifert pairs or 'G'"
                }),
            };
            resyncing = res.is_err();
            if resyncing {
                failed = true;
                self.recover();
            }
        }
        if self.punct('}').is_err() {
            return None;
        }
        if self.peek().tok != Tok::Eof {
            let _ = self.expected::<()>("end of input");
            return None;
        }
        if failed {
            return None;
        }
        let [g, f, s, t] = vals;
        Some(OrbitInvariants {
            b,
            eps,
            g,
            f,
            s,
            t,
            pairs,
            graph,
        })
    }
}

/// Parses `{b=INT;(o|n,g=NAT,f=NAT,s=NAT,t=NAT);(m,n),…;G=[<E,…>,…]}`.
///
/// Only the grammar and nonnegativity are enforced; the classification
/// conditions are left to [`crate::validate`].
pub fn parse(text: &str) -> Result<OrbitInvariants, ParseError> {
    let mut diags = Vec::new();
    let toks = lex(text, &mut diags);
    let mut p = Parser {
        toks,
        pos: 0,
        diags,
    };
    let out = p.manifold();
    match out {
        Some(inv) if p.diags.is_empty() => Ok(inv),
        _ => {
            if p.diags.is_empty() {
                p.diags.push(Diagnostic {
                    span: SourceSpan::new(0, text.len()),
                    message: "malformed input".to_string(),
                });
            }
            Err(ParseError {
                diagnostics: p.diags,
            })
        }
    }
}
