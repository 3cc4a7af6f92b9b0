//! The line-oriented text format.
//!
//! ```text
//! # comment
//! algebra gl(1|1)
//! generator q odd
//! basis E12 (1) odd        # trailing comments on basis lines are kept as notes
//! bracket E12 E21 = E11 + E22
//! bracket x y = 1/2 z - 3 w
//! ```
//!
//! A bundle wraps algebra bodies, morphisms and coverings in sections:
//!
//! ```text
//! begin algebra g
//! ...
//! end
//! begin morphism f
//! source g
//! target g
//! grading 1 1
//! 1
//! block (0) even 2 2
//! 1 0
//! 0 1
//! end
//! begin covering c
//! projection f
//! kind semicovering
//! support (0) (1) (2)
//! end
//! ```

use std::fmt::Write as _;

use super::bundle::{BlockDoc, Bundle, CoveringDocument, GradingDoc, KindDoc, LabeledAlgebra, MorphismDocument};
use super::document::{AlgebraDocument, BasisDoc, BracketDoc, GeneratorDoc, TermDoc};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weight::{Parity, Weight};

/// A non-blank line with its comment split off.
#[derive(Clone, Copy, Debug)]
struct Line<'a> {
    number: usize,
    content: &'a str,
    comment: Option<&'a str>,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let (content, comment) = match raw.find('#') {
                Some(p) => (&raw[..p], Some(raw[p + 1..].trim())),
                None => (raw, None),
            };
            (!content.trim().is_empty()).then_some(Line { number: i + 1, content, comment })
        })
        .collect()
}

struct Cursor<'a> {
    line: usize,
    src: &'a str,
    pos: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Cursor<'a> {
    fn new(line: &Line<'a>) -> Self {
        Cursor { line: line.number, src: line.content, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error(&mut self, expected: &str) -> Error {
        self.skip_ws();
        let found: String = self.rest().split_whitespace().next().unwrap_or("").chars().take(24).collect();
        Error::Syntax {
            line: self.line,
            column: self.src[..self.pos].chars().count() + 1,
            expected: expected.into(),
            found: if found.is_empty() { "end of line".into() } else { format!("`{found}`") },
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn name(&mut self, what: &str) -> Result<&'a str> {
        match self.peek() {
            Some(c) if is_name_start(c) => {
                let start = self.pos;
                let len: usize = self.rest().chars().take_while(|&c| is_name_char(c)).map(char::len_utf8).sum();
                self.pos += len;
                Ok(&self.src[start..self.pos])
            }
            _ => Err(self.error(what)),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let save = self.pos;
        match self.name(&format!("`{word}`")) {
            Ok(w) if w == word => Ok(()),
            Ok(_) => {
                self.pos = save;
                Err(self.error(&format!("`{word}`")))
            }
            Err(e) => Err(e),
        }
    }

    /// An unsigned integer literal, or `digits/digits`.
    fn number_token(&mut self, allow_fraction: bool) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let digits = |s: &str| s.bytes().take_while(u8::is_ascii_digit).count();
        let n = digits(self.rest());
        if n == 0 {
            return None;
        }
        self.pos += n;
        if allow_fraction && self.rest().starts_with('/') {
            let m = digits(&self.rest()[1..]);
            if m > 0 {
                self.pos += 1 + m;
            }
        }
        Some(&self.src[start..self.pos])
    }

    fn integer(&mut self) -> Result<i64> {
        let save = self.pos;
        let neg = self.eat('-');
        let tok = self.number_token(false).ok_or_else(|| self.error("an integer"))?;
        let v: i64 = tok.parse().map_err(|_| {
            self.pos = save;
            self.error("an integer that fits in 64 bits")
        })?;
        Ok(if neg { -v } else { v })
    }

    fn unsigned(&mut self) -> Result<usize> {
        let tok = self.number_token(false).ok_or_else(|| self.error("a non-negative integer"))?;
        tok.parse().map_err(|_| self.error("a non-negative integer"))
    }

    fn rational(&mut self) -> Result<Scalar> {
        let neg = self.eat('-');
        let save = self.pos;
        let tok = self.number_token(true).ok_or_else(|| self.error("a rational number"))?;
        let v: Scalar = tok.parse().map_err(|_| {
            self.pos = save;
            self.error("a rational number with nonzero denominator")
        })?;
        Ok(if neg { -v } else { v })
    }

    fn weight(&mut self) -> Result<Vec<i64>> {
        self.expect('(')?;
        let mut w = Vec::new();
        if self.eat(')') {
            return Ok(w);
        }
        loop {
            w.push(self.integer()?);
            if self.eat(')') {
                return Ok(w);
            }
            if !self.eat(',') {
                return Err(self.error("`,` or `)`"));
            }
        }
    }

    fn parity(&mut self) -> Result<Parity> {
        let save = self.pos;
        match self.name("`even` or `odd`")? {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => {
                self.pos = save;
                Err(self.error("`even` or `odd`"))
            }
        }
    }

    fn optional_parity(&mut self) -> Result<Option<Parity>> {
        if self.peek().is_none() {
            Ok(None)
        } else {
            self.parity().map(Some)
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.error("end of line"))
        } else {
            Ok(())
        }
    }

    /// `0`, or a signed sum of `[coefficient] [*] name` terms.
    fn terms(&mut self) -> Result<Vec<TermDoc>> {
        let save = self.pos;
        if self.number_token(true) == Some("0") && self.peek().is_none() {
            return Ok(Vec::new());
        }
        self.pos = save;
        let mut out = Vec::new();
        loop {
            let neg = if out.is_empty() {
                self.eat('-')
            } else if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else if self.peek().is_none() {
                return Ok(out);
            } else {
                return Err(self.error("`+`, `-` or end of line"));
            };
            let mut c = Scalar::one();
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                c = self.rational()?;
                self.eat('*');
            }
            if neg {
                c = -c;
            }
            let basis = self.name("a basis element name")?.to_string();
            out.push(TermDoc { basis, coeff: c.to_string() });
        }
    }
}

fn semantic(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Semantic(format!("line {line}: {msg}"))
}

/// Parses an algebra body: `algebra`, `generator`, `basis` and `bracket`
/// lines. Names must be declared before use and are unique.
fn parse_algebra_lines(lines: &[Line<'_>]) -> Result<AlgebraDocument> {
    let mut doc = AlgebraDocument::default();
    let mut named = false;
    let mut basis_names = std::collections::HashSet::new();
    for line in lines {
        let mut cur = Cursor::new(line);
        let save = cur.pos;
        let kw = cur.name("`algebra`, `generator`, `basis` or `bracket`")?;
        match kw {
            "algebra" => {
                if named {
                    return Err(semantic(line.number, "second `algebra` line"));
                }
                if !doc.generators.is_empty() || !doc.basis.is_empty() || !doc.brackets.is_empty() {
                    return Err(semantic(line.number, "`algebra` must come before the declarations"));
                }
                named = true;
                doc.name = cur.rest().trim().to_string();
            }
            "generator" => {
                if !doc.basis.is_empty() {
                    return Err(semantic(line.number, "weight generators must be declared before the basis"));
                }
                let name = cur.name("a generator name")?.to_string();
                let parity = cur.optional_parity()?;
                cur.finish()?;
                if doc.generators.iter().any(|g| g.name == name) {
                    return Err(semantic(line.number, format!("duplicate weight generator `{name}`")));
                }
                doc.generators.push(GeneratorDoc { name, parity });
            }
            "basis" => {
                if !doc.brackets.is_empty() {
                    return Err(semantic(line.number, "basis elements must be declared before the brackets"));
                }
                let name = cur.name("a basis element name")?.to_string();
                let weight = cur.weight()?;
                let parity = cur.optional_parity()?;
                cur.finish()?;
                if !basis_names.insert(name.clone()) {
                    return Err(semantic(line.number, format!("duplicate basis element `{name}`")));
                }
                if weight.len() != doc.generators.len() {
                    return Err(semantic(
                        line.number,
                        format!(
                            "weight of `{name}` has {} components, expected {}",
                            weight.len(),
                            doc.generators.len()
                        ),
                    ));
                }
                let note = line.comment.filter(|c| !c.is_empty()).map(str::to_string);
                doc.basis.push(BasisDoc { name, weight, parity, note });
            }
            "bracket" => {
                let left = cur.name("a basis element name")?.to_string();
                let right = cur.name("a basis element name")?.to_string();
                cur.expect('=')?;
                let result = cur.terms()?;
                for n in std::iter::once(&left).chain(std::iter::once(&right)).chain(result.iter().map(|t| &t.basis)) {
                    if !basis_names.contains(n) {
                        return Err(semantic(line.number, format!("undeclared basis element `{n}`")));
                    }
                }
                doc.brackets.push(BracketDoc { left, right, result });
            }
            _ => {
                cur.pos = save;
                return Err(cur.error("`algebra`, `generator`, `basis` or `bracket`"));
            }
        }
    }
    Ok(doc)
}

/// Parses a single algebra document.
pub fn parse_algebra(text: &str) -> Result<AlgebraDocument> {
    parse_algebra_lines(&lines(text))
}

fn matrix_rows<T>(
    body: &[Line<'_>],
    at: &mut usize,
    rows: usize,
    cols: usize,
    header: usize,
    mut cell: impl FnMut(&mut Cursor<'_>) -> Result<T>,
) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let line = body.get(*at).ok_or_else(|| semantic(header, format!("expected {rows} matrix rows")))?;
        *at += 1;
        let mut cur = Cursor::new(line);
        for _ in 0..cols {
            out.push(cell(&mut cur)?);
        }
        cur.finish()?;
    }
    Ok(out)
}

fn parse_morphism(label: String, body: &[Line<'_>]) -> Result<MorphismDocument> {
    let mut source = None;
    let mut target = None;
    let mut grading = None;
    let mut blocks = Vec::new();
    let mut at = 0;
    while at < body.len() {
        let line = body[at];
        at += 1;
        let mut cur = Cursor::new(&line);
        let save = cur.pos;
        match cur.name("`source`, `target`, `grading` or `block`")? {
            "source" => {
                source = Some(cur.name("an algebra label")?.to_string());
                cur.finish()?;
            }
            "target" => {
                target = Some(cur.name("an algebra label")?.to_string());
                cur.finish()?;
            }
            "grading" => {
                let t = cur.unsigned()?;
                let s = cur.unsigned()?;
                cur.finish()?;
                let entries = matrix_rows(body, &mut at, t, s, line.number, |c| c.integer())?;
                grading = Some(GradingDoc { target_rank: t, source_rank: s, entries });
            }
            "block" => {
                let weight = cur.weight()?;
                let parity = cur.parity()?;
                let rows = cur.unsigned()?;
                let cols = cur.unsigned()?;
                cur.finish()?;
                let entries = matrix_rows(body, &mut at, rows, cols, line.number, |c| c.rational())?
                    .into_iter()
                    .map(|s| s.to_string())
                    .collect();
                blocks.push(BlockDoc { weight, parity, rows, cols, entries });
            }
            _ => {
                cur.pos = save;
                return Err(cur.error("`source`, `target`, `grading` or `block`"));
            }
        }
    }
    let missing = |what: &str| Error::Semantic(format!("morphism `{label}` has no `{what}` line"));
    Ok(MorphismDocument {
        source: source.ok_or_else(|| missing("source"))?,
        target: target.ok_or_else(|| missing("target"))?,
        grading: grading.ok_or_else(|| missing("grading"))?,
        blocks,
        label,
    })
}

fn parse_covering(label: String, body: &[Line<'_>]) -> Result<CoveringDocument> {
    let mut projection = None;
    let mut kind = None;
    let mut support = None;
    for line in body {
        let mut cur = Cursor::new(line);
        let save = cur.pos;
        match cur.name("`projection`, `kind` or `support`")? {
            "projection" => {
                projection = Some(cur.name("a morphism label")?.to_string());
                cur.finish()?;
            }
            "kind" => {
                let save = cur.pos;
                let k = match cur.name("a covering kind")? {
                    "full" => (KindDoc::Full, None),
                    "truncated" => (KindDoc::Truncated, Some(cur.unsigned()?)),
                    "semicovering" => (KindDoc::Semicovering, None),
                    _ => {
                        cur.pos = save;
                        return Err(cur.error("`full`, `truncated` or `semicovering`"));
                    }
                };
                cur.finish()?;
                kind = Some(k);
            }
            "support" => {
                let mut ws = Vec::new();
                while cur.peek().is_some() {
                    ws.push(cur.weight()?);
                }
                support = Some(ws);
            }
            _ => {
                cur.pos = save;
                return Err(cur.error("`projection`, `kind` or `support`"));
            }
        }
    }
    let missing = |what: &str| Error::Semantic(format!("covering `{label}` has no `{what}` line"));
    let (kind, truncation) = kind.ok_or_else(|| missing("kind"))?;
    Ok(CoveringDocument {
        projection: projection.ok_or_else(|| missing("projection"))?,
        kind,
        truncation,
        support: support.ok_or_else(|| missing("support"))?,
        label,
    })
}

/// Whether the first directive of `text` opens a bundle section.
pub fn is_bundle_text(text: &str) -> bool {
    lines(text).first().is_some_and(|l| l.content.split_whitespace().next() == Some("begin"))
}

/// Parses a bundle of `begin <kind> <label>` ... `end` sections.
pub fn parse_bundle(text: &str) -> Result<Bundle> {
    let all = lines(text);
    let mut bundle = Bundle::default();
    let mut at = 0;
    while at < all.len() {
        let head = all[at];
        let mut cur = Cursor::new(&head);
        cur.keyword("begin")?;
        let save = cur.pos;
        let kind = cur.name("`algebra`, `morphism` or `covering`")?;
        if !matches!(kind, "algebra" | "morphism" | "covering") {
            cur.pos = save;
            return Err(cur.error("`algebra`, `morphism` or `covering`"));
        }
        let label = cur.name("a section label")?.to_string();
        cur.finish()?;
        let end = all[at + 1..]
            .iter()
            .position(|l| l.content.trim() == "end")
            .map(|p| at + 1 + p)
            .ok_or_else(|| semantic(head.number, format!("section `{label}` is not closed by `end`")))?;
        let body = &all[at + 1..end];
        if let Some(nested) = body.iter().find(|l| l.content.split_whitespace().next() == Some("begin")) {
            return Err(semantic(nested.number, "sections cannot be nested"));
        }
        match kind {
            "algebra" => bundle.algebras.push(LabeledAlgebra { label, algebra: parse_algebra_lines(body)? }),
            "morphism" => bundle.morphisms.push(parse_morphism(label, body)?),
            _ => bundle.coverings.push(parse_covering(label, body)?),
        }
        at = end + 1;
    }
    Ok(bundle)
}

fn weight_text(w: &[i64]) -> String {
    Weight(w.to_vec()).to_string()
}

fn terms_text(terms: &[TermDoc]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (p, t) in terms.iter().enumerate() {
        let (neg, mag) = match t.coeff.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, t.coeff.as_str()),
        };
        match (p, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if mag != "1" {
            s.push_str(mag);
            s.push(' ');
        }
        s.push_str(&t.basis);
    }
    s
}

fn write_algebra_body(out: &mut String, doc: &AlgebraDocument) {
    let _ = writeln!(out, "algebra {}", doc.name);
    for g in &doc.generators {
        match g.parity {
            Some(p) => writeln!(out, "generator {} {p}", g.name),
            None => writeln!(out, "generator {}", g.name),
        }
        .expect("writing to a string");
    }
    for b in &doc.basis {
        let _ = write!(out, "basis {} {}", b.name, weight_text(&b.weight));
        if let Some(p) = b.parity {
            let _ = write!(out, " {p}");
        }
        if let Some(n) = &b.note {
            let _ = write!(out, "  # {n}");
        }
        out.push('\n');
    }
    for br in &doc.brackets {
        let _ = writeln!(out, "bracket {} {} = {}", br.left, br.right, terms_text(&br.result));
    }
}

/// The normalized text form of an algebra document.
pub fn serialize_algebra(doc: &AlgebraDocument) -> String {
    let mut out = String::new();
    write_algebra_body(&mut out, doc);
    out
}

fn write_rows<T: std::fmt::Display>(out: &mut String, entries: &[T], cols: usize) {
    if cols == 0 {
        return;
    }
    for row in entries.chunks(cols) {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
}

/// The normalized text form of a bundle.
pub fn serialize_bundle(b: &Bundle) -> String {
    let mut out = String::new();
    for la in &b.algebras {
        let _ = writeln!(out, "begin algebra {}", la.label);
        write_algebra_body(&mut out, &la.algebra);
        out.push_str("end\n");
    }
    for m in &b.morphisms {
        let _ = writeln!(out, "begin morphism {}", m.label);
        let _ = writeln!(out, "source {}", m.source);
        let _ = writeln!(out, "target {}", m.target);
        let _ = writeln!(out, "grading {} {}", m.grading.target_rank, m.grading.source_rank);
        write_rows(&mut out, &m.grading.entries, m.grading.source_rank);
        for blk in &m.blocks {
            let _ = writeln!(out, "block {} {} {} {}", weight_text(&blk.weight), blk.parity, blk.rows, blk.cols);
            write_rows(&mut out, &blk.entries, blk.cols);
        }
        out.push_str("end\n");
    }
    for c in &b.coverings {
        let _ = writeln!(out, "begin covering {}", c.label);
        let _ = writeln!(out, "projection {}", c.projection);
        match (c.kind, c.truncation) {
            (KindDoc::Truncated, Some(t)) => writeln!(out, "kind truncated {t}"),
            (KindDoc::Full, _) => writeln!(out, "kind full"),
            (KindDoc::Truncated, None) => writeln!(out, "kind truncated"),
            (KindDoc::Semicovering, _) => writeln!(out, "kind semicovering"),
        }
        .expect("writing to a string");
        let ws: Vec<String> = c.support.iter().map(|w| weight_text(w)).collect();
        let _ = writeln!(out, "support {}", ws.join(" "));
        out.push_str("end\n");
    }
    out
}
