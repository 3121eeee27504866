//! Text format for presentations.
//!
//! ```text
//! # comment
//! algebra C5
//! field p:32003
//! gens n p q r
//! deg all 1
//! rel n*p - n*q;
//! ```
//!
//! `rel` statements end with `;` and may span lines; every other statement
//! ends at `;` or at the end of the line.

use std::collections::HashMap;

use thiserror::Error;

use crate::scalar::{Field, FieldSpec, ScalarError};

use super::poly::NcPoly;
use super::presentation::Presentation;
use super::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("relation not homogeneous: term of degree {found}, expected {expected}")]
    Inhomogeneous { expected: u32, found: u32 },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("relation is missing its terminating `;`")]
    MissingSemicolon,
    #[error("unknown statement `{0}`")]
    UnknownStatement(String),
    #[error("relation has degree {0}; relations must have degree at least 2")]
    LowDegree(u32),
    #[error("relation is zero")]
    ZeroRelation,
    #[error("bad coefficient: {0}")]
    Scalar(ScalarError),
    #[error("bad field descriptor `{0}`")]
    BadField(String),
    #[error("bad degree `{0}`")]
    BadDegree(String),
    #[error("no generators declared")]
    NoGenerators,
    #[error("too many generators")]
    TooManyGenerators,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, col, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(String),
    Plus,
    Minus,
    Star,
    Semi,
    Colon,
    Comma,
    Newline,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

impl Token {
    fn describe(&self) -> String {
        match &self.tok {
            Tok::Ident(s) | Tok::Number(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Newline => "end of line".into(),
        }
    }
}

/// Splits text into tokens; `line0`/`col0` offset the reported positions.
pub(crate) fn tokenize(text: &str, line0: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, raw_line) in text.lines().enumerate() {
        let line = line0 + li;
        let content = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let chars: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = if li == 0 { col0 + i } else { i + 1 };
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let single = match c {
                '+' => Some(Tok::Plus),
                '-' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                ';' => Some(Tok::Semi),
                ':' => Some(Tok::Colon),
                ',' => Some(Tok::Comma),
                _ => None,
            };
            if let Some(tok) = single {
                out.push(Token { tok, line, col });
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Ident(s), line, col });
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let dstart = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        let s: String = chars[start..i].iter().collect();
                        return Err(ParseError::new(line, col, ParseErrorKind::MalformedToken(s)));
                    }
                }
                if i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                    let mut j = i;
                    while j < chars.len() && !chars[j].is_whitespace() {
                        j += 1;
                    }
                    let s: String = chars[start..j].iter().collect();
                    return Err(ParseError::new(line, col, ParseErrorKind::MalformedToken(s)));
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Number(s), line, col });
                continue;
            }
            let mut j = i;
            while j < chars.len() && !chars[j].is_whitespace() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            return Err(ParseError::new(line, col, ParseErrorKind::MalformedToken(s)));
        }
        out.push(Token {
            tok: Tok::Newline,
            line,
            col: content.chars().count() + 1,
        });
    }
    Ok(out)
}

/// Everything a polynomial expression needs to resolve names.
pub(crate) struct ExprContext<'a, F: Field> {
    pub field: &'a F,
    pub index: &'a HashMap<String, Letter>,
    pub degrees: &'a [u32],
}

/// A parsed term with its position, kept so homogeneity errors can point
/// at the offending term.
pub(crate) struct ParsedTerm<F: Field> {
    pub word: Word,
    pub coeff: F::Elem,
    pub line: usize,
    pub col: usize,
}

/// Parses `term (('+'|'-') term)*` from a token slice (no statement
/// terminators inside).
pub(crate) fn parse_terms<F: Field>(
    toks: &[Token],
    ctx: &ExprContext<'_, F>,
    end_line: usize,
    end_col: usize,
) -> Result<Vec<ParsedTerm<F>>, ParseError> {
    let f = ctx.field;
    let mut terms = Vec::new();
    let mut i = 0;
    if toks.is_empty() {
        return Err(ParseError::new(
            end_line,
            end_col,
            ParseErrorKind::Unexpected {
                expected: "an expression".into(),
                found: "nothing".into(),
            },
        ));
    }
    loop {
        let mut sign = f.one();
        let start = toks.get(i).map(|t| (t.line, t.col)).unwrap_or((end_line, end_col));
        if let Some(t) = toks.get(i) {
            match t.tok {
                Tok::Plus => i += 1,
                Tok::Minus => {
                    sign = f.neg(&sign);
                    i += 1;
                }
                _ => {}
            }
        }
        let mut coeff = sign;
        let mut letters: Vec<Letter> = Vec::new();
        let mut expect_factor = true;
        let (line, col) = toks.get(i).map(|t| (t.line, t.col)).unwrap_or(start);
        while i < toks.len() {
            let t = &toks[i];
            if expect_factor {
                match &t.tok {
                    Tok::Ident(name) => {
                        let idx = ctx.index.get(name).ok_or_else(|| {
                            ParseError::new(t.line, t.col, ParseErrorKind::UnknownGenerator(name.clone()))
                        })?;
                        letters.push(*idx);
                    }
                    Tok::Number(s) => {
                        let c = f
                            .parse(s)
                            .map_err(|e| ParseError::new(t.line, t.col, ParseErrorKind::Scalar(e)))?;
                        coeff = f.mul(&coeff, &c);
                    }
                    _ => {
                        return Err(ParseError::new(
                            t.line,
                            t.col,
                            ParseErrorKind::Unexpected {
                                expected: "a generator or coefficient".into(),
                                found: t.describe(),
                            },
                        ))
                    }
                }
                expect_factor = false;
                i += 1;
            } else {
                match t.tok {
                    Tok::Star => {
                        expect_factor = true;
                        i += 1;
                    }
                    Tok::Plus | Tok::Minus => break,
                    _ => {
                        return Err(ParseError::new(
                            t.line,
                            t.col,
                            ParseErrorKind::Unexpected {
                                expected: "`*`, `+` or `-`".into(),
                                found: t.describe(),
                            },
                        ))
                    }
                }
            }
        }
        if expect_factor {
            return Err(ParseError::new(
                end_line,
                end_col,
                ParseErrorKind::Unexpected {
                    expected: "a generator or coefficient".into(),
                    found: "end of expression".into(),
                },
            ));
        }
        terms.push(ParsedTerm {
            word: Word::new(&letters, ctx.degrees),
            coeff,
            line,
            col,
        });
        if i >= toks.len() {
            break;
        }
    }
    Ok(terms)
}

pub(crate) fn terms_to_poly<F: Field>(field: &F, terms: Vec<ParsedTerm<F>>) -> NcPoly<F> {
    NcPoly::from_terms(field, terms.into_iter().map(|t| (t.word, t.coeff)))
}

fn unexpected(t: Option<&Token>, expected: &str, eof: (usize, usize)) -> ParseError {
    match t {
        Some(t) => ParseError::new(
            t.line,
            t.col,
            ParseErrorKind::Unexpected {
                expected: expected.into(),
                found: t.describe(),
            },
        ),
        None => ParseError::new(
            eof.0,
            eof.1,
            ParseErrorKind::Unexpected {
                expected: expected.into(),
                found: "end of input".into(),
            },
        ),
    }
}

struct Statement<'t> {
    keyword: &'t Token,
    body: Vec<Token>,
    end: (usize, usize),
}

fn split_statements(toks: &[Token]) -> Result<Vec<Statement<'_>>, ParseError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        match &toks[i].tok {
            Tok::Newline | Tok::Semi => {
                i += 1;
                continue;
            }
            Tok::Ident(_) => {}
            _ => return Err(unexpected(Some(&toks[i]), "a statement keyword", (0, 0))),
        }
        let kw = &toks[i];
        let is_rel = kw.tok == Tok::Ident("rel".into());
        let start = i + 1;
        let mut j = start;
        let mut body: Vec<usize> = Vec::new();
        let mut terminated = false;
        while j < toks.len() {
            match toks[j].tok {
                Tok::Semi => {
                    terminated = true;
                    break;
                }
                Tok::Newline if !is_rel => {
                    terminated = true;
                    break;
                }
                Tok::Newline => {}
                _ => body.push(j),
            }
            j += 1;
        }
        if is_rel && !terminated {
            return Err(ParseError::new(kw.line, kw.col, ParseErrorKind::MissingSemicolon));
        }
        let end = toks
            .get(j)
            .map(|t| (t.line, t.col))
            .unwrap_or_else(|| toks.last().map(|t| (t.line, t.col)).unwrap_or((1, 1)));
        out.push(Statement {
            keyword: kw,
            body: body.into_iter().map(|k| toks[k].clone()).collect(),
            end,
        });
        i = j + 1;
    }
    Ok(out)
}

/// Reads the `field` line of a presentation, if any, without building it.
pub fn peek_field(text: &str) -> Result<Option<FieldSpec>, ParseError> {
    let toks = tokenize(text, 1, 1)?;
    for st in split_statements(&toks)? {
        if st.keyword.tok == Tok::Ident("field".into()) {
            return parse_field_stmt(&st).map(Some);
        }
    }
    Ok(None)
}

fn parse_field_stmt(st: &Statement<'_>) -> Result<FieldSpec, ParseError> {
    let text: String = st
        .body
        .iter()
        .map(|t| match &t.tok {
            Tok::Ident(s) | Tok::Number(s) => s.clone(),
            Tok::Colon => ":".into(),
            _ => "?".into(),
        })
        .collect();
    text.parse::<FieldSpec>()
        .map_err(|_| ParseError::new(st.keyword.line, st.keyword.col, ParseErrorKind::BadField(text)))
}

/// Parses a presentation over `field`. A `field` line in the text is
/// validated but the caller's field is used.
pub fn parse_presentation<F: Field>(text: &str, field: &F) -> Result<Presentation<F>, ParseError> {
    let toks = tokenize(text, 1, 1)?;
    let statements = split_statements(&toks)?;

    let mut name: Option<String> = None;
    let mut gens: Vec<(String, u32)> = Vec::new();
    let mut gen_pos: HashMap<String, usize> = HashMap::new();
    let mut default_deg: Option<u32> = None;
    let mut deg_overrides: Vec<(&Token, String, u32)> = Vec::new();
    let mut rels: Vec<&Statement<'_>> = Vec::new();

    for st in &statements {
        let Tok::Ident(kw) = &st.keyword.tok else { unreachable!() };
        match kw.as_str() {
            "algebra" => {
                let n = st
                    .body
                    .iter()
                    .map(|t| match &t.tok {
                        Tok::Ident(s) | Tok::Number(s) => s.clone(),
                        _ => String::new(),
                    })
                    .collect::<Vec<_>>()
                    .join("");
                name = Some(n);
            }
            "field" => {
                parse_field_stmt(st)?;
            }
            "gens" => {
                for t in &st.body {
                    match &t.tok {
                        Tok::Ident(s) => {
                            if gen_pos.insert(s.clone(), gens.len()).is_some() {
                                return Err(ParseError::new(t.line, t.col, ParseErrorKind::DuplicateName(s.clone())));
                            }
                            gens.push((s.clone(), 1));
                        }
                        Tok::Comma => {}
                        _ => return Err(unexpected(Some(t), "a generator name", st.end)),
                    }
                }
            }
            "deg" => {
                let (target, value) = match st.body.as_slice() {
                    [a, b] => (a, b),
                    _ => {
                        return Err(ParseError::new(
                            st.keyword.line,
                            st.keyword.col,
                            ParseErrorKind::BadDegree("expected `deg all <k>` or `deg <name> <k>`".into()),
                        ))
                    }
                };
                let k: u32 = match &value.tok {
                    Tok::Number(s) => s.parse().ok().filter(|&k| k >= 1).ok_or_else(|| {
                        ParseError::new(value.line, value.col, ParseErrorKind::BadDegree(s.clone()))
                    })?,
                    _ => return Err(unexpected(Some(value), "a positive degree", st.end)),
                };
                match &target.tok {
                    Tok::Ident(s) if s == "all" => default_deg = Some(k),
                    Tok::Ident(s) => deg_overrides.push((target, s.clone(), k)),
                    _ => return Err(unexpected(Some(target), "`all` or a generator name", st.end)),
                }
            }
            "rel" => rels.push(st),
            other => {
                return Err(ParseError::new(
                    st.keyword.line,
                    st.keyword.col,
                    ParseErrorKind::UnknownStatement(other.to_string()),
                ))
            }
        }
    }

    if gens.is_empty() {
        return Err(ParseError::new(1, 1, ParseErrorKind::NoGenerators));
    }
    if gens.len() > Letter::MAX as usize {
        return Err(ParseError::new(1, 1, ParseErrorKind::TooManyGenerators));
    }
    if let Some(k) = default_deg {
        for g in gens.iter_mut() {
            g.1 = k;
        }
    }
    for (t, n, k) in deg_overrides {
        let pos = *gen_pos
            .get(&n)
            .ok_or_else(|| ParseError::new(t.line, t.col, ParseErrorKind::UnknownGenerator(n.clone())))?;
        gens[pos].1 = k;
    }

    let index: HashMap<String, Letter> = gens
        .iter()
        .enumerate()
        .map(|(i, (n, _))| (n.clone(), i as Letter))
        .collect();
    let degrees: Vec<u32> = gens.iter().map(|g| g.1).collect();
    let ctx = ExprContext {
        field,
        index: &index,
        degrees: &degrees,
    };

    let mut relations = Vec::new();
    for st in rels {
        let terms = parse_terms(&st.body, &ctx, st.end.0, st.end.1)?;
        let expected = terms[0].word.degree();
        for t in &terms {
            if t.word.degree() != expected {
                return Err(ParseError::new(
                    t.line,
                    t.col,
                    ParseErrorKind::Inhomogeneous {
                        expected,
                        found: t.word.degree(),
                    },
                ));
            }
        }
        let poly = terms_to_poly(field, terms);
        if poly.is_zero() {
            return Err(ParseError::new(st.keyword.line, st.keyword.col, ParseErrorKind::ZeroRelation));
        }
        if expected < 2 {
            return Err(ParseError::new(st.keyword.line, st.keyword.col, ParseErrorKind::LowDegree(expected)));
        }
        relations.push(poly);
    }

    Presentation::new(field.clone(), name, gens, relations)
        .map_err(|e| ParseError::new(1, 1, ParseErrorKind::Unexpected { expected: "a valid presentation".into(), found: e.to_string() }))
}
