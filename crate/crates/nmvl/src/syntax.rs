//! Parsers and printers for logic files, formulas, sequents, hypothesis
//! files and proof trees. Rendering is canonical and every format round
//! trips: `parse(render(x)) == x`.
//!
//! Logic file grammar (`.mvl`, line oriented, `#` starts a comment):
//!
//! ```text
//! logic circ2
//! values 2
//! conn circ 1
//! 1 -> 1,2
//! 2 -> 2
//! end
//! ```
//!
//! Sequents are `lf, lf |- lf, lf` with `lf := formula ':' label`; either
//! side may be empty. Proofs are parenthesized nodes
//! `(rule {key=value, ...} "sequent" premise*)`.

use std::fmt;

use thiserror::Error;

use crate::calculi::{RuleApp, RuleId};
use crate::formula::{Formula, Label};
use crate::logic::{validate_logic, ConnectiveDef, LabelSet, Logic, LogicDef};
use crate::proof::ProofTree;
use crate::sequent::{LfSet, Sequent};

/// 1-based position of a token in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{}:{}: {message}", span.line, span.column)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Option<String>,
}

impl ParseError {
    fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
            expected: None,
        }
    }

    fn expecting(span: SourceSpan, message: impl Into<String>, expected: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
            expected: Some(expected.into()),
        }
    }
}

type PResult<T> = Result<T, ParseError>;

struct Cursor<'a> {
    rest: &'a str,
    line: u32,
    col: u32,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            rest: src,
            line: 1,
            col: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.rest = &self.rest[c.len_utf8()..];
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn span(&self, length: u32) -> SourceSpan {
        SourceSpan {
            line: self.line,
            column: self.col,
            length,
        }
    }

    /// Skips spaces, newlines and `#` comments.
    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, want: char) -> PResult<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(ParseError::expecting(
                self.span(1),
                format!("expected '{want}', found '{c}'"),
                want.to_string(),
            )),
            None => Err(ParseError::expecting(
                self.span(0),
                format!("expected '{want}', found end of input"),
                want.to_string(),
            )),
        }
    }

    fn at_ident(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_lowercase())
    }

    /// Lowercase identifier: `[a-z][a-z0-9_]*`.
    fn ident(&mut self) -> PResult<(String, SourceSpan)> {
        let start = self.span(0);
        if !self.at_ident() {
            return Err(ParseError::expecting(
                start,
                match self.peek() {
                    Some(c) => format!("expected identifier, found '{c}'"),
                    None => "expected identifier, found end of input".into(),
                },
                "identifier",
            ));
        }
        let mut name = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let span = SourceSpan {
            line: start.line,
            column: start.column,
            length: name.len() as u32,
        };
        Ok((name, span))
    }

    fn at_digit(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }

    fn integer(&mut self) -> PResult<(u64, SourceSpan)> {
        let start = self.span(0);
        if !self.at_digit() {
            return Err(ParseError::expecting(
                start,
                match self.peek() {
                    Some(c) => format!("expected integer, found '{c}'"),
                    None => "expected integer, found end of input".into(),
                },
                "integer",
            ));
        }
        let mut value: u64 = 0;
        let mut len = 0u32;
        while let Some(c) = self.peek() {
            if let Some(d) = c.to_digit(10) {
                value = value.saturating_mul(10).saturating_add(d as u64);
                len += 1;
                self.bump();
            } else {
                break;
            }
        }
        let span = SourceSpan {
            line: start.line,
            column: start.column,
            length: len,
        };
        Ok((value, span))
    }

    fn at_end(&self) -> bool {
        self.rest.is_empty()
    }

    fn expect_end(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(ParseError::new(
                self.span(1),
                format!("unexpected trailing input '{}'", self.peek().unwrap()),
            ))
        }
    }
}

fn label_in_range(logic: &Logic, value: u64, span: SourceSpan) -> PResult<Label> {
    if value < 1 || value > logic.n() as u64 {
        return Err(ParseError::new(
            span,
            format!("label {value} out of range 1..{}", logic.n()),
        ));
    }
    Ok(value as Label)
}

// ---------------------------------------------------------------------
// Formulas and sequents
// ---------------------------------------------------------------------

fn formula_inner(cur: &mut Cursor, logic: &Logic) -> PResult<Formula> {
    cur.skip_ws();
    let (name, span) = cur.ident()?;
    cur.skip_ws();
    match logic.connective(&name) {
        Some(conn) => {
            if cur.peek() != Some('(') {
                return Err(ParseError::expecting(
                    cur.span(1),
                    format!("expected '(' after connective {name}"),
                    "(",
                ));
            }
            cur.bump();
            let mut args = Vec::new();
            cur.skip_ws();
            if cur.peek() != Some(')') {
                loop {
                    args.push(formula_inner(cur, logic)?);
                    cur.skip_ws();
                    if cur.peek() == Some(',') {
                        cur.bump();
                    } else {
                        break;
                    }
                }
            }
            cur.expect(')')?;
            if args.len() != conn.arity {
                return Err(ParseError::new(
                    span,
                    format!(
                        "{name} expects {} argument{}, got {}",
                        conn.arity,
                        if conn.arity == 1 { "" } else { "s" },
                        args.len()
                    ),
                ));
            }
            Ok(Formula::apply(name, args))
        }
        None => {
            if cur.peek() == Some('(') {
                return Err(ParseError::new(span, format!("unknown connective {name}")));
            }
            Ok(Formula::atom(name))
        }
    }
}

/// Parses a formula; connectives must be declared in the logic and
/// applied with the declared arity.
pub fn parse_formula(text: &str, logic: &Logic) -> PResult<Formula> {
    let mut cur = Cursor::new(text);
    let f = formula_inner(&mut cur, logic)?;
    cur.expect_end()?;
    Ok(f)
}

fn labelled_inner(cur: &mut Cursor, logic: &Logic) -> PResult<crate::formula::LabelledFormula> {
    let f = formula_inner(cur, logic)?;
    cur.skip_ws();
    cur.expect(':')?;
    cur.skip_ws();
    let (value, span) = cur.integer()?;
    Ok(f.labelled(label_in_range(logic, value, span)?))
}

fn lfset_side(cur: &mut Cursor, logic: &Logic) -> PResult<LfSet> {
    let mut set = LfSet::new();
    cur.skip_ws();
    if !cur.at_ident() {
        return Ok(set);
    }
    loop {
        set.insert(labelled_inner(cur, logic)?);
        cur.skip_ws();
        if cur.peek() == Some(',') {
            cur.bump();
            cur.skip_ws();
        } else {
            break;
        }
    }
    Ok(set)
}

fn sequent_inner(cur: &mut Cursor, logic: &Logic) -> PResult<Sequent> {
    let antecedent = lfset_side(cur, logic)?;
    cur.skip_ws();
    cur.expect('|')?;
    cur.expect('-')?;
    let succedent = lfset_side(cur, logic)?;
    Ok(Sequent::new(antecedent, succedent))
}

/// Parses a sequent. Duplicates merge silently; labels are range-checked.
pub fn parse_sequent(text: &str, logic: &Logic) -> PResult<Sequent> {
    let mut cur = Cursor::new(text);
    let s = sequent_inner(&mut cur, logic)?;
    cur.expect_end()?;
    Ok(s)
}

/// Parses a hypothesis file: one sequent per line, `#` comments.
pub fn parse_hypotheses(text: &str, logic: &Logic) -> Result<Vec<Sequent>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let stripped = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        if stripped.trim().is_empty() {
            continue;
        }
        let s = parse_sequent(stripped, logic).map_err(|mut e| {
            e.span.line = i as u32 + 1;
            e
        })?;
        out.push(s);
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Logic files
// ---------------------------------------------------------------------

/// Parses and validates a `.mvl` logic file. Violations of the logic
/// invariants are reported with the spans of the offending lines.
pub fn parse_logic(text: &str) -> Result<Logic, Vec<ParseError>> {
    let def = parse_logic_def(text)?;
    match validate_logic(&def) {
        Ok(logic) => Ok(logic),
        Err(violations) => Err(violations
            .into_iter()
            .map(|v| {
                ParseError::new(
                    SourceSpan {
                        line: 1,
                        column: 1,
                        length: 0,
                    },
                    v.to_string(),
                )
            })
            .collect()),
    }
}

/// Purely syntactic part of [`parse_logic`]: builds the definition and
/// reports lexical problems, duplicate connectives and out-of-range
/// indices with precise spans.
pub fn parse_logic_def(text: &str) -> Result<LogicDef, Vec<ParseError>> {
    let mut errors = Vec::new();
    let mut name: Option<String> = None;
    let mut n: Option<Label> = None;
    let mut connectives: Vec<(String, ConnectiveDef)> = Vec::new();
    let mut current: Option<(String, ConnectiveDef)> = None;

    let span_at = |line: usize, col: usize, len: usize| SourceSpan {
        line: line as u32 + 1,
        column: col as u32 + 1,
        length: len as u32,
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let words: Vec<&str> = trimmed.split_whitespace().collect();
        match words[0] {
            "logic" if words.len() == 2 => {
                name = Some(words[1].to_string());
            }
            "values" if words.len() == 2 => match words[1].parse::<u64>() {
                Ok(v) if v <= u8::MAX as u64 => n = Some(v as Label),
                _ => errors.push(ParseError::new(
                    span_at(lineno, indent, trimmed.len()),
                    format!("invalid value count {}", words[1]),
                )),
            },
            "conn" if words.len() == 3 => {
                if let Some(done) = current.take() {
                    errors.push(ParseError::new(
                        span_at(lineno, indent, 4),
                        format!("conn {} not closed with 'end'", done.0),
                    ));
                    connectives.push(done);
                }
                let cname = words[1].to_string();
                match words[2].parse::<usize>() {
                    Ok(arity) => {
                        if connectives.iter().any(|(existing, _)| *existing == cname) {
                            errors.push(ParseError::new(
                                span_at(lineno, indent, trimmed.len()),
                                format!("duplicate connective {cname}"),
                            ));
                        }
                        current = Some((
                            cname,
                            ConnectiveDef {
                                arity,
                                entries: Vec::new(),
                            },
                        ));
                    }
                    Err(_) => errors.push(ParseError::new(
                        span_at(lineno, indent, trimmed.len()),
                        format!("invalid arity {}", words[2]),
                    )),
                }
            }
            "end" if words.len() == 1 => match current.take() {
                Some(done) => connectives.push(done),
                None => errors.push(ParseError::new(
                    span_at(lineno, indent, 3),
                    "'end' outside a conn block",
                )),
            },
            _ => {
                // A table entry line: `k1 k2 ... -> j1,j2,...`
                let Some((_, conn)) = current.as_mut() else {
                    errors.push(ParseError::new(
                        span_at(lineno, indent, trimmed.len()),
                        format!("unexpected line '{trimmed}'"),
                    ));
                    continue;
                };
                let Some(arrow) = trimmed.find("->") else {
                    errors.push(ParseError::new(
                        span_at(lineno, indent, trimmed.len()),
                        "table entry needs '->'",
                    ));
                    continue;
                };
                let declared_n = n.unwrap_or(u8::MAX);
                let mut entry_ok = true;
                let mut tuple = Vec::new();
                for w in trimmed[..arrow].split_whitespace() {
                    match w.parse::<u64>() {
                        Ok(v) if v >= 1 && v <= declared_n as u64 => tuple.push(v as Label),
                        Ok(v) => {
                            errors.push(ParseError::new(
                                span_at(lineno, indent, trimmed.len()),
                                format!("index {v} out of range 1..{declared_n}"),
                            ));
                            entry_ok = false;
                        }
                        Err(_) => {
                            errors.push(ParseError::new(
                                span_at(lineno, indent, trimmed.len()),
                                format!("invalid index '{w}'"),
                            ));
                            entry_ok = false;
                        }
                    }
                }
                let mut out = LabelSet::EMPTY;
                for w in trimmed[arrow + 2..].split(',') {
                    let w = w.trim();
                    if w.is_empty() {
                        continue;
                    }
                    match w.parse::<u64>() {
                        Ok(v) if v >= 1 && v <= declared_n as u64 => out.insert(v as Label),
                        Ok(v) => {
                            errors.push(ParseError::new(
                                span_at(lineno, indent, trimmed.len()),
                                format!("index {v} out of range 1..{declared_n}"),
                            ));
                            entry_ok = false;
                        }
                        Err(_) => {
                            errors.push(ParseError::new(
                                span_at(lineno, indent, trimmed.len()),
                                format!("invalid index '{w}'"),
                            ));
                            entry_ok = false;
                        }
                    }
                }
                if entry_ok {
                    conn.entries.push((tuple, out));
                }
            }
        }
    }
    if let Some(done) = current.take() {
        errors.push(ParseError::new(
            span_at(text.lines().count(), 0, 0),
            format!("conn {} not closed with 'end'", done.0),
        ));
        connectives.push(done);
    }
    let name = match name {
        Some(n) => n,
        None => {
            errors.push(ParseError::new(
                span_at(0, 0, 0),
                "missing 'logic <name>' header",
            ));
            String::new()
        }
    };
    let n = match n {
        Some(v) => v,
        None => {
            errors.push(ParseError::new(span_at(0, 0, 0), "missing 'values <n>'"));
            0
        }
    };
    if errors.is_empty() {
        Ok(LogicDef {
            name,
            n,
            connectives,
        })
    } else {
        Err(errors)
    }
}

/// Canonical `.mvl` text: entries in ascending tuple order, no comments.
pub fn render_logic(logic: &Logic) -> String {
    let mut out = String::new();
    out.push_str(&format!("logic {}\n", logic.name()));
    out.push_str(&format!("values {}\n", logic.n()));
    for c in logic.connectives() {
        out.push_str(&format!("conn {} {}\n", c.name, c.arity));
        for (tuple, set) in c.rows(logic.n()) {
            let lhs: Vec<String> = tuple.iter().map(|k| k.to_string()).collect();
            let rhs: Vec<String> = set.iter().map(|k| k.to_string()).collect();
            if lhs.is_empty() {
                out.push_str(&format!("-> {}\n", rhs.join(",")));
            } else {
                out.push_str(&format!("{} -> {}\n", lhs.join(" "), rhs.join(",")));
            }
        }
        out.push_str("end\n");
    }
    out
}

// ---------------------------------------------------------------------
// Proofs
// ---------------------------------------------------------------------

#[derive(Debug, Default)]
struct Params {
    phi: Option<Formula>,
    k: Option<Label>,
    k1: Option<Label>,
    k2: Option<Label>,
    conn: Option<String>,
    args: Option<Vec<Formula>>,
    labels: Option<Vec<Label>>,
    kset: Option<LabelSet>,
    dl: Option<LfSet>,
    dr: Option<LfSet>,
    lambda: Option<LfSet>,
}

fn parse_label_list(cur: &mut Cursor, logic: &Logic) -> PResult<Vec<Label>> {
    let mut out = Vec::new();
    cur.expect('[')?;
    cur.skip_ws();
    if cur.peek() != Some(']') {
        loop {
            cur.skip_ws();
            let (v, span) = cur.integer()?;
            out.push(label_in_range(logic, v, span)?);
            cur.skip_ws();
            if cur.peek() == Some(',') {
                cur.bump();
            } else {
                break;
            }
        }
    }
    cur.expect(']')?;
    Ok(out)
}

fn parse_formula_list(cur: &mut Cursor, logic: &Logic) -> PResult<Vec<Formula>> {
    let mut out = Vec::new();
    cur.expect('[')?;
    cur.skip_ws();
    if cur.peek() != Some(']') {
        loop {
            out.push(formula_inner(cur, logic)?);
            cur.skip_ws();
            if cur.peek() == Some(',') {
                cur.bump();
            } else {
                break;
            }
        }
    }
    cur.expect(']')?;
    Ok(out)
}

fn parse_lfset(cur: &mut Cursor, logic: &Logic) -> PResult<LfSet> {
    let mut out = LfSet::new();
    cur.expect('{')?;
    cur.skip_ws();
    if cur.peek() != Some('}') {
        loop {
            out.insert(labelled_inner(cur, logic)?);
            cur.skip_ws();
            if cur.peek() == Some(',') {
                cur.bump();
                cur.skip_ws();
            } else {
                break;
            }
        }
    }
    cur.expect('}')?;
    Ok(out)
}

fn parse_params(cur: &mut Cursor, logic: &Logic) -> PResult<Params> {
    let mut params = Params::default();
    cur.expect('{')?;
    cur.skip_ws();
    while cur.peek() != Some('}') {
        let start = cur.span(1);
        let mut key = String::new();
        while let Some(c) = cur.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                key.push(c);
                cur.bump();
            } else {
                break;
            }
        }
        if key.is_empty() {
            return Err(ParseError::expecting(start, "expected parameter name", "key"));
        }
        cur.skip_ws();
        cur.expect('=')?;
        cur.skip_ws();
        match key.as_str() {
            "phi" => params.phi = Some(formula_inner(cur, logic)?),
            "k" | "k1" | "k2" => {
                let (v, span) = cur.integer()?;
                let label = label_in_range(logic, v, span)?;
                match key.as_str() {
                    "k" => params.k = Some(label),
                    "k1" => params.k1 = Some(label),
                    _ => params.k2 = Some(label),
                }
            }
            "conn" => params.conn = Some(cur.ident()?.0),
            "args" => params.args = Some(parse_formula_list(cur, logic)?),
            "labels" => params.labels = Some(parse_label_list(cur, logic)?),
            "K" => {
                let labels = parse_label_list(cur, logic)?;
                params.kset = Some(labels.into_iter().collect());
            }
            "dl" => params.dl = Some(parse_lfset(cur, logic)?),
            "dr" => params.dr = Some(parse_lfset(cur, logic)?),
            "lambda" => params.lambda = Some(parse_lfset(cur, logic)?),
            other => {
                return Err(ParseError::new(
                    start,
                    format!("malformed parameters: unknown key {other}"),
                ))
            }
        }
        cur.skip_ws();
        if cur.peek() == Some(',') {
            cur.bump();
            cur.skip_ws();
        }
    }
    cur.expect('}')?;
    Ok(params)
}

fn require<T>(value: Option<T>, rule: RuleId, key: &str, span: SourceSpan) -> PResult<T> {
    value.ok_or_else(|| {
        ParseError::new(
            span,
            format!("malformed parameters: {rule} requires {key}"),
        )
    })
}

fn build_app(rule: RuleId, params: Params, span: SourceSpan) -> PResult<RuleApp> {
    let app = match rule {
        RuleId::Ax => RuleApp::Ax {
            formula: require(params.phi, rule, "phi", span)?,
            label: require(params.k, rule, "k", span)?,
        },
        RuleId::TableAx => RuleApp::TableAx {
            conn: require(params.conn, rule, "conn", span)?,
            args: require(params.args, rule, "args", span)?,
            labels: require(params.labels, rule, "labels", span)?,
        },
        RuleId::LShift => RuleApp::LShift {
            formula: require(params.phi, rule, "phi", span)?,
            label: require(params.k, rule, "k", span)?,
        },
        RuleId::RShift => RuleApp::RShift {
            formula: require(params.phi, rule, "phi", span)?,
            from: require(params.k1, rule, "k1", span)?,
            to: require(params.k2, rule, "k2", span)?,
        },
        RuleId::LWeak => RuleApp::LWeak {
            formula: require(params.phi, rule, "phi", span)?,
            label: require(params.k, rule, "k", span)?,
        },
        RuleId::RWeak => RuleApp::RWeak {
            formula: require(params.phi, rule, "phi", span)?,
            label: require(params.k, rule, "k", span)?,
        },
        RuleId::Cut => RuleApp::Cut {
            formula: require(params.phi, rule, "phi", span)?,
            label: require(params.k, rule, "k", span)?,
        },
        RuleId::Res => RuleApp::Res {
            formula: require(params.phi, rule, "phi", span)?,
            left_label: require(params.k1, rule, "k1", span)?,
            right_label: require(params.k2, rule, "k2", span)?,
            left_rest: require(params.dl, rule, "dl", span)?,
            right_rest: require(params.dr, rule, "dr", span)?,
        },
        RuleId::TableR => RuleApp::TableR {
            conn: require(params.conn, rule, "conn", span)?,
            args: require(params.args, rule, "args", span)?,
            labels: require(params.labels, rule, "labels", span)?,
        },
        RuleId::DualAx => RuleApp::DualAx {
            conn: require(params.conn, rule, "conn", span)?,
            args: require(params.args, rule, "args", span)?,
            label: require(params.k, rule, "k", span)?,
        },
        RuleId::TableRDd => RuleApp::TableRDd {
            conn: require(params.conn, rule, "conn", span)?,
            args: require(params.args, rule, "args", span)?,
            label_set: require(params.kset, rule, "K", span)?,
        },
        RuleId::MultiShift => RuleApp::MultiShift {
            formula: require(params.phi, rule, "phi", span)?,
            label_set: require(params.kset, rule, "K", span)?,
        },
        RuleId::TableL => RuleApp::TableL {
            conn: require(params.conn, rule, "conn", span)?,
            args: require(params.args, rule, "args", span)?,
            label: require(params.k, rule, "k", span)?,
        },
        RuleId::TableLDd => RuleApp::TableLDd {
            conn: require(params.conn, rule, "conn", span)?,
            args: require(params.args, rule, "args", span)?,
            label: require(params.k, rule, "k", span)?,
            lambda: require(params.lambda, rule, "lambda", span)?,
        },
        RuleId::Hyp => RuleApp::Hyp,
    };
    Ok(app)
}

fn proof_node(cur: &mut Cursor, logic: &Logic) -> PResult<ProofTree> {
    cur.skip_ws();
    cur.expect('(')?;
    cur.skip_ws();
    let (name, name_span) = cur.ident()?;
    let rule = RuleId::from_id(&name)
        .ok_or_else(|| ParseError::new(name_span, format!("unknown rule id {name}")))?;
    cur.skip_ws();
    let params = parse_params(cur, logic)?;
    let app = build_app(rule, params, name_span)?;
    cur.skip_ws();
    cur.expect('"')?;
    let conclusion = sequent_inner(cur, logic)?;
    cur.skip_ws();
    cur.expect('"')?;
    let mut premises = Vec::new();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('(') => premises.push(proof_node(cur, logic)?),
            Some(')') => {
                cur.bump();
                break;
            }
            _ => {
                return Err(ParseError::expecting(
                    cur.span(1),
                    "expected premise or ')'",
                    ") or (",
                ))
            }
        }
    }
    if rule.is_leaf() && !premises.is_empty() {
        return Err(ParseError::new(
            name_span,
            format!("{rule} is a leaf rule but has {} premises", premises.len()),
        ));
    }
    Ok(ProofTree {
        conclusion,
        rule: app,
        premises,
    })
}

/// Parses a proof tree. Structure only: rule admissibility and schema
/// instantiation are checked by proof checking, not here.
pub fn parse_proof(text: &str, logic: &Logic) -> PResult<ProofTree> {
    let mut cur = Cursor::new(text);
    let tree = proof_node(&mut cur, logic)?;
    cur.expect_end()?;
    Ok(tree)
}

fn label_list(labels: &[Label]) -> String {
    let parts: Vec<String> = labels.iter().map(|k| k.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn formula_list(args: &[Formula]) -> String {
    let parts: Vec<String> = args.iter().map(|f| f.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn render_params(app: &RuleApp) -> String {
    match app {
        RuleApp::Ax { formula, label } => format!("phi={formula}, k={label}"),
        RuleApp::TableAx { conn, args, labels } | RuleApp::TableR { conn, args, labels } => {
            format!(
                "conn={conn}, args={}, labels={}",
                formula_list(args),
                label_list(labels)
            )
        }
        RuleApp::LShift { formula, label }
        | RuleApp::LWeak { formula, label }
        | RuleApp::RWeak { formula, label }
        | RuleApp::Cut { formula, label } => format!("phi={formula}, k={label}"),
        RuleApp::RShift { formula, from, to } => {
            format!("phi={formula}, k1={from}, k2={to}")
        }
        RuleApp::Res {
            formula,
            left_label,
            right_label,
            left_rest,
            right_rest,
        } => format!(
            "phi={formula}, k1={left_label}, k2={right_label}, dl={{{left_rest}}}, dr={{{right_rest}}}"
        ),
        RuleApp::DualAx { conn, args, label } => {
            format!("conn={conn}, args={}, k={label}", formula_list(args))
        }
        RuleApp::TableRDd {
            conn,
            args,
            label_set,
        } => format!(
            "conn={conn}, args={}, K={}",
            formula_list(args),
            label_list(&label_set.iter().collect::<Vec<_>>())
        ),
        RuleApp::MultiShift { formula, label_set } => format!(
            "phi={formula}, K={}",
            label_list(&label_set.iter().collect::<Vec<_>>())
        ),
        RuleApp::TableL { conn, args, label } => {
            format!("conn={conn}, args={}, k={label}", formula_list(args))
        }
        RuleApp::TableLDd {
            conn,
            args,
            label,
            lambda,
        } => format!(
            "conn={conn}, args={}, k={label}, lambda={{{lambda}}}",
            formula_list(args)
        ),
        RuleApp::Hyp => String::new(),
    }
}

fn render_node(tree: &ProofTree, depth: usize, out: &mut String) {
    let indent = "  ".repeat(depth);
    out.push_str(&format!(
        "{indent}({} {{{}}} \"{}\"",
        tree.rule.rule_id(),
        render_params(&tree.rule),
        tree.conclusion
    ));
    if tree.premises.is_empty() {
        out.push(')');
    } else {
        for premise in &tree.premises {
            out.push('\n');
            render_node(premise, depth + 1, out);
        }
        out.push(')');
    }
}

/// Canonical multi-line proof text; inverse of [`parse_proof`].
pub fn render_proof(tree: &ProofTree) -> String {
    let mut out = String::new();
    render_node(tree, 0, &mut out);
    out.push('\n');
    out
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(render_proof(self).trim_end())
    }
}
