//! Parser for coefficient tables written in grouped-bracket LaTeX, and the
//! structural comparison of such tables against the computed polynomials.
//!
//! The accepted dialect covers integers, `\lambda`, `\mu`, the harmonic
//! atoms `H_k`, `H_{n-k}`, `H_{n+k}` with an optional order superscript
//! (`^{\ang{i}}`, `^{(i)}` or `^{\langle i\rangle}`), sized or plain
//! brackets, `^e` powers, `\times` and implicit multiplication. Layout
//! commands (`&`, `\\`, `\tagg{..}{..}`, spacing macros, a final period) are
//! ignored.

use serde::Serialize;

use super::{coefficient_symbolic, to_atoms, Atom, AtomPoly, TableKind};
use crate::error::{Error, Result};
use crate::exact_arith::Rational;

const BUILTIN: &str = include_str!("../../data/reference_tables.tex");

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Lambda,
    Mu,
    Harm(Atom),
    Open,
    Close,
    Plus,
    Minus,
    Times,
    Caret,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn command(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    /// Content of a `{...}` group, braces balanced.
    fn brace_group(&mut self) -> Result<&'a str> {
        self.skip_ws();
        if !self.eat("{") {
            return Err(self.err("expected '{'"));
        }
        let start = self.pos;
        let mut depth = 1;
        while depth > 0 {
            match self.bump() {
                Some('\\') => {
                    self.bump();
                }
                Some('{') => depth += 1,
                Some('}') => depth -= 1,
                Some(_) => {}
                None => return Err(self.err("unbalanced braces")),
            }
        }
        Ok(&self.src[start..self.pos - 1])
    }

    fn number(&mut self) -> u64 {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().expect("digits")
    }

    /// After `\Big`, `\left` and friends: the delimiter that follows.
    fn sized_delim(&mut self) -> Result<Tok> {
        self.skip_ws();
        if self.eat("\\{") || self.eat("(") || self.eat("[") {
            Ok(Tok::Open)
        } else if self.eat("\\}") || self.eat(")") || self.eat("]") {
            Ok(Tok::Close)
        } else {
            Err(self.err("expected a delimiter after a sizing command"))
        }
    }

    fn harmonic(&mut self) -> Result<Tok> {
        if !self.eat("_") {
            return Err(self.err("expected '_' after H"));
        }
        let sub = if self.peek() == Some('{') {
            self.brace_group()?.to_string()
        } else {
            self.bump().map(String::from).unwrap_or_default()
        };
        let sub: String = sub.chars().filter(|c| !c.is_whitespace()).collect();
        let order = self.harmonic_order()?;
        let atom = match sub.as_str() {
            "k" => Atom::Hk(order),
            "n-k" => Atom::Hnk(order),
            "n+k" => Atom::Hpk(order),
            other => return Err(self.err(&format!("unsupported harmonic subscript {other:?}"))),
        };
        Ok(Tok::Harm(atom))
    }

    /// `^{\ang{i}}`, `^{(i)}` or `^{\langle i\rangle}`; anything else after
    /// `^` is a power and is left for the parser.
    fn harmonic_order(&mut self) -> Result<u32> {
        let save = self.pos;
        if !self.eat("^") {
            return Ok(1);
        }
        if self.peek() != Some('{') {
            self.pos = save;
            return Ok(1);
        }
        let inner = self.brace_group()?.trim();
        let digits = if let Some(x) = inner.strip_prefix("\\ang") {
            x.trim().trim_start_matches('{').trim_end_matches('}')
        } else if let Some(x) = inner.strip_prefix("\\langle") {
            x.trim().trim_end_matches("\\rangle")
        } else if inner.starts_with('(') && inner.ends_with(')') {
            &inner[1..inner.len() - 1]
        } else {
            self.pos = save;
            return Ok(1);
        };
        digits
            .trim()
            .parse()
            .map_err(|_| self.err(&format!("bad harmonic order {inner:?}")))
    }

    fn tokens(mut self) -> Result<Vec<Tok>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let Some(c) = self.peek() else { break };
            match c {
                '&' | '.' => {
                    self.bump();
                }
                '+' => {
                    self.bump();
                    out.push(Tok::Plus);
                }
                '-' => {
                    self.bump();
                    out.push(Tok::Minus);
                }
                '(' | '[' | '{' => {
                    self.bump();
                    out.push(Tok::Open);
                }
                ')' | ']' | '}' => {
                    self.bump();
                    out.push(Tok::Close);
                }
                '^' => {
                    self.bump();
                    out.push(Tok::Caret);
                    // `^23` in TeX raises only the first digit
                    if let Some(d) = self.peek().filter(char::is_ascii_digit) {
                        self.bump();
                        out.push(Tok::Num(d.to_digit(10).expect("digit") as u64));
                    }
                }
                '*' => {
                    self.bump();
                    out.push(Tok::Times);
                }
                'H' => {
                    self.bump();
                    out.push(self.harmonic()?);
                }
                d if d.is_ascii_digit() => out.push(Tok::Num(self.number())),
                '\\' => {
                    self.bump();
                    match self.peek() {
                        Some('\\') | Some(',') | Some(':') | Some(';') | Some('!') | Some(' ') => {
                            self.bump();
                            continue;
                        }
                        Some('{') => {
                            self.bump();
                            out.push(Tok::Open);
                            continue;
                        }
                        Some('}') => {
                            self.bump();
                            out.push(Tok::Close);
                            continue;
                        }
                        _ => {}
                    }
                    let cmd = self.command();
                    match cmd.as_str() {
                        "lambda" => out.push(Tok::Lambda),
                        "mu" => out.push(Tok::Mu),
                        "times" | "cdot" => out.push(Tok::Times),
                        "big" | "Big" | "bigg" | "Bigg" | "left" | "right" | "bigl" | "bigr"
                        | "Bigl" | "Bigr" => out.push(self.sized_delim()?),
                        "tagg" => {
                            self.brace_group()?;
                            self.brace_group()?;
                        }
                        "quad" | "qquad" | "qdp" | "qdn" | "xqdn" | "displaystyle" | "scriptstyle"
                        | "scriptscriptstyle" => {}
                        other => return Err(self.err(&format!("unsupported command \\{other}"))),
                    }
                }
                other => return Err(self.err(&format!("unexpected character {other:?}"))),
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {}", self.pos))
    }

    fn expr(&mut self) -> Result<AtomPoly> {
        let mut acc = AtomPoly::zero();
        let mut sign = Rational::one();
        match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                sign = -sign;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc + t.scale(&sign);
            match self.peek() {
                Some(Tok::Plus) => sign = Rational::one(),
                Some(Tok::Minus) => sign = -Rational::one(),
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Lambda | Tok::Mu | Tok::Harm(_) | Tok::Open)
        )
    }

    fn term(&mut self) -> Result<AtomPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(&Tok::Times) {
                self.pos += 1;
            } else if !self.starts_factor() {
                break;
            }
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<AtomPoly> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = match self.next() {
                Some(Tok::Num(e)) => e,
                Some(Tok::Open) => match (self.next(), self.next()) {
                    (Some(Tok::Num(e)), Some(Tok::Close)) => e,
                    _ => return Err(self.err("expected {integer} exponent")),
                },
                _ => return Err(self.err("expected exponent")),
            };
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<AtomPoly> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(AtomPoly::constant(Rational::from(n))),
            Some(Tok::Lambda) => Ok(AtomPoly::var(Atom::Lambda)),
            Some(Tok::Mu) => Ok(AtomPoly::var(Atom::Mu)),
            Some(Tok::Harm(a)) => Ok(AtomPoly::var(a)),
            Some(Tok::Open) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::Close) => Ok(inner),
                    _ => Err(self.err("expected closing bracket")),
                }
            }
            other => Err(self.err(&format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses one grouped-bracket expression into the harmonic-atom basis.
pub fn parse_expression(src: &str) -> Result<AtomPoly> {
    let toks = Lexer { src, pos: 0 }.tokens()?;
    let mut parser = Parser { toks, pos: 0 };
    let poly = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("trailing tokens"));
    }
    Ok(poly)
}

#[derive(Clone, Debug)]
pub struct ReferenceEntry {
    pub kind: TableKind,
    pub ell: u32,
    pub source: String,
    pub poly: AtomPoly,
}

/// Parses a table file: `[kind l]` headers, `%` comment lines, LaTeX bodies.
pub fn parse_tables(text: &str) -> Result<Vec<ReferenceEntry>> {
    let mut entries = Vec::new();
    let mut header: Option<(TableKind, u32)> = None;
    let mut body = String::new();
    let mut flush = |header: Option<(TableKind, u32)>, body: &mut String| -> Result<()> {
        if let Some((kind, ell)) = header {
            let poly = parse_expression(body)?;
            entries.push(ReferenceEntry {
                kind,
                ell,
                source: body.trim().to_string(),
                poly,
            });
        }
        body.clear();
        Ok(())
    };
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.starts_with('%') {
            continue;
        }
        if let Some(h) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            flush(header.take(), &mut body)?;
            let (kind, ell) = h
                .split_once(' ')
                .ok_or_else(|| Error::Parse(format!("bad table header {trimmed:?}")))?;
            let ell = ell
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad table header {trimmed:?}")))?;
            header = Some((kind.parse()?, ell));
            continue;
        }
        body.push_str(line);
        body.push('\n');
    }
    flush(header, &mut body)?;
    Ok(entries)
}

/// The bundled reference tables: Omega, varpi and omega for `l = 0..=5`.
pub fn builtin_tables() -> Result<Vec<ReferenceEntry>> {
    parse_tables(BUILTIN)
}

/// One table entry whose printed form disagrees with the partition sum.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Erratum {
    pub kind: &'static str,
    pub ell: u32,
    /// The printed entry, as given.
    pub reference: String,
    /// Printed entry, expanded in the harmonic-atom basis.
    pub reference_expanded: String,
    /// Partition-sum value, expanded in the same basis.
    pub computed_expanded: String,
    /// `computed - reference`
    pub difference: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FidelityReport {
    pub entries_checked: usize,
    pub matched: usize,
    pub errata: Vec<Erratum>,
}

impl FidelityReport {
    pub fn all_match(&self) -> bool {
        self.errata.is_empty()
    }
}

/// Compares every entry against the partition-sum polynomial of the same
/// kind and order.
pub fn check_against_reference(entries: &[ReferenceEntry]) -> FidelityReport {
    let mut errata = Vec::new();
    for e in entries {
        let computed = to_atoms(&coefficient_symbolic(e.kind, e.ell));
        if computed != e.poly {
            errata.push(Erratum {
                kind: e.kind.name(),
                ell: e.ell,
                reference: e.source.clone(),
                reference_expanded: e.poly.to_string(),
                computed_expanded: computed.to_string(),
                difference: (&computed - &e.poly).to_string(),
            });
        }
    }
    FidelityReport {
        entries_checked: entries.len(),
        matched: entries.len() - errata.len(),
        errata,
    }
}
