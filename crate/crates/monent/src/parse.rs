//! Text formats: presentation files and generator expressions.
//!
//! Presentation files are line-oriented UTF-8 with `#` comments:
//!
//! ```text
//! vertices: u v w            # optional; default is one vertex "*"
//! arrows: x u v, y v w       # single-vertex shorthand: arrows: x, y, z
//! forbidden: x y, y y x      # words; contiguous form (xy) allowed iff
//!                            # all labels are single characters
//! ```
//!
//! Generator expressions are sums of rational-coefficient monomials over
//! the arrow labels, e.g. `y x + x`, `2 x y - 1/2 z`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::presentation::Presentation;
use crate::quiver::{Arrow, Quiver, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVertex(String),
    UnknownLabel(String),
    DuplicateVertex(String),
    DuplicateLabel(String),
    NonComposable(String),
}

/// A parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {}", self.describe())]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn describe(&self) -> String {
        match &self.kind {
            ParseErrorKind::Syntax(m) => m.clone(),
            ParseErrorKind::UnknownVertex(v) => format!("unknown vertex `{v}`"),
            ParseErrorKind::UnknownLabel(l) => format!("unknown label `{l}`"),
            ParseErrorKind::DuplicateVertex(v) => format!("duplicate vertex `{v}`"),
            ParseErrorKind::DuplicateLabel(l) => format!("duplicate arrow label `{l}`"),
            ParseErrorKind::NonComposable(w) => {
                format!("word `{w}` is not a composable path")
            }
        }
    }

    fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

#[derive(Debug, Clone)]
struct Tok {
    text: String,
    col: usize,
}

/// Whitespace-separated tokens with 1-based char columns.
fn tokenize(s: &str, col_offset: usize) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut cur_col = 0;
    for (i, ch) in s.chars().enumerate() {
        if ch.is_whitespace() {
            if !cur.is_empty() {
                out.push(Tok { text: std::mem::take(&mut cur), col: cur_col });
            }
        } else {
            if cur.is_empty() {
                cur_col = col_offset + i + 1;
            }
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(Tok { text: cur, col: cur_col });
    }
    out
}

/// Comma-separated entries with the column of each entry's first char.
fn split_entries(s: &str, col_offset: usize) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut start = 0usize;
    let chars: Vec<char> = s.chars().collect();
    for i in 0..=chars.len() {
        if i == chars.len() || chars[i] == ',' {
            let piece: String = chars[start..i].iter().collect();
            let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
            out.push((piece.trim().to_string(), col_offset + start + lead + 1));
            start = i + 1;
        }
    }
    out
}

/// Resolves word tokens to arrow indices. A single token that is not
/// itself a label splits into characters when every quiver label is a
/// single character.
fn resolve_word_tokens(
    tokens: &[Tok],
    quiver: &Quiver,
    line: usize,
) -> Result<Vec<usize>, ParseError> {
    if tokens.len() == 1 && quiver.arrow_index(&tokens[0].text).is_none() {
        let tok = &tokens[0];
        if quiver.single_char_labels() && tok.text.chars().count() > 1 {
            let mut arrows = Vec::new();
            for (i, ch) in tok.text.chars().enumerate() {
                match quiver.arrow_index(&ch.to_string()) {
                    Some(a) => arrows.push(a),
                    None => {
                        return Err(ParseError::new(
                            line,
                            tok.col + i,
                            ParseErrorKind::UnknownLabel(ch.to_string()),
                        ))
                    }
                }
            }
            return Ok(arrows);
        }
        return Err(ParseError::new(
            line,
            tok.col,
            ParseErrorKind::UnknownLabel(tok.text.clone()),
        ));
    }
    let mut arrows = Vec::new();
    for tok in tokens {
        match quiver.arrow_index(&tok.text) {
            Some(a) => arrows.push(a),
            None => {
                return Err(ParseError::new(
                    line,
                    tok.col,
                    ParseErrorKind::UnknownLabel(tok.text.clone()),
                ))
            }
        }
    }
    Ok(arrows)
}

/// Parses a presentation file into a validated, normalized [`Presentation`].
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut sections: Vec<(String, usize, String, usize)> = Vec::new(); // key, line, rest, rest_col
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let colon = match content.find(':') {
            Some(p) => p,
            None => {
                let col = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
                return Err(ParseError::new(
                    line_no,
                    col,
                    ParseErrorKind::Syntax("expected `vertices:`, `arrows:` or `forbidden:`".into()),
                ));
            }
        };
        let key = content[..colon].trim().to_string();
        let key_col = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
        if !matches!(key.as_str(), "vertices" | "arrows" | "forbidden") {
            return Err(ParseError::new(
                line_no,
                key_col,
                ParseErrorKind::Syntax(format!("unknown section `{key}`")),
            ));
        }
        if sections.iter().any(|(k, ..)| *k == key) {
            return Err(ParseError::new(
                line_no,
                key_col,
                ParseErrorKind::Syntax(format!("duplicate section `{key}`")),
            ));
        }
        let rest = content[colon + 1..].to_string();
        sections.push((key, line_no, rest, colon + 1));
    }

    let find = |key: &str| sections.iter().find(|(k, ..)| k == key);

    // Vertices (default: one vertex "*").
    let mut vertices: Vec<String> = Vec::new();
    let mut vline = 1usize;
    if let Some((_, line, rest, col)) = find("vertices") {
        vline = *line;
        for tok in tokenize(rest, *col) {
            if vertices.contains(&tok.text) {
                return Err(ParseError::new(
                    *line,
                    tok.col,
                    ParseErrorKind::DuplicateVertex(tok.text),
                ));
            }
            vertices.push(tok.text);
        }
    }
    if vertices.is_empty() {
        vertices.push("*".to_string());
    }

    // Arrows.
    let mut arrows: Vec<Arrow> = Vec::new();
    if let Some((_, line, rest, col)) = find("arrows") {
        if !rest.trim().is_empty() {
            for (entry, entry_col) in split_entries(rest, *col) {
                if entry.is_empty() {
                    return Err(ParseError::new(
                        *line,
                        entry_col,
                        ParseErrorKind::Syntax("empty arrow entry".into()),
                    ));
                }
                let toks = tokenize(&entry, entry_col - 1);
                let (label_tok, source, target) = match toks.len() {
                    1 => {
                        if vertices.len() != 1 {
                            return Err(ParseError::new(
                                *line,
                                toks[0].col,
                                ParseErrorKind::Syntax(
                                    "arrow shorthand `label` needs a single-vertex quiver; use `label src dst`".into(),
                                ),
                            ));
                        }
                        (&toks[0], 0usize, 0usize)
                    }
                    3 => {
                        let src = vertices.iter().position(|v| *v == toks[1].text).ok_or_else(
                            || ParseError::new(
                                *line,
                                toks[1].col,
                                ParseErrorKind::UnknownVertex(toks[1].text.clone()),
                            ),
                        )?;
                        let dst = vertices.iter().position(|v| *v == toks[2].text).ok_or_else(
                            || ParseError::new(
                                *line,
                                toks[2].col,
                                ParseErrorKind::UnknownVertex(toks[2].text.clone()),
                            ),
                        )?;
                        (&toks[0], src, dst)
                    }
                    _ => {
                        return Err(ParseError::new(
                            *line,
                            toks[0].col,
                            ParseErrorKind::Syntax(
                                "arrow entry must be `label src dst` (or `label` for a single vertex)".into(),
                            ),
                        ))
                    }
                };
                if arrows.iter().any(|a| a.label == label_tok.text) {
                    return Err(ParseError::new(
                        *line,
                        label_tok.col,
                        ParseErrorKind::DuplicateLabel(label_tok.text.clone()),
                    ));
                }
                arrows.push(Arrow {
                    label: label_tok.text.clone(),
                    source,
                    target,
                });
            }
        }
    }

    let quiver = Quiver::new(vertices, arrows).map_err(|e| {
        // Uniqueness was checked token by token; this is unreachable in
        // practice but keeps the error channel total.
        ParseError::new(vline, 1, ParseErrorKind::Syntax(e.to_string()))
    })?;

    // Forbidden words.
    let mut forbidden: Vec<Word> = Vec::new();
    if let Some((_, line, rest, col)) = find("forbidden") {
        if !rest.trim().is_empty() {
            for (entry, entry_col) in split_entries(rest, *col) {
                if entry.is_empty() {
                    return Err(ParseError::new(
                        *line,
                        entry_col,
                        ParseErrorKind::Syntax("empty forbidden entry".into()),
                    ));
                }
                let toks = tokenize(&entry, entry_col - 1);
                let arrows_idx = resolve_word_tokens(&toks, &quiver, *line)?;
                if !quiver.is_path(&arrows_idx) {
                    return Err(ParseError::new(
                        *line,
                        entry_col,
                        ParseErrorKind::NonComposable(entry.clone()),
                    ));
                }
                forbidden.push(Word::path(arrows_idx, &quiver).expect("checked above"));
            }
        }
    }

    Presentation::new(quiver, forbidden)
        .map_err(|e| ParseError::new(1, 1, ParseErrorKind::Syntax(e.to_string())))
}

/// Canonical text form of a normalized presentation. Parsing this text
/// reproduces the presentation exactly.
pub fn to_text(p: &Presentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    out.push_str("vertices:");
    for v in q.vertices() {
        out.push(' ');
        out.push_str(v);
    }
    out.push('\n');
    out.push_str("arrows:");
    for (i, a) in q.arrows().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push(' ');
        out.push_str(&format!(
            "{} {} {}",
            a.label,
            q.vertices()[a.source],
            q.vertices()[a.target]
        ));
    }
    out.push('\n');
    out.push_str("forbidden:");
    for (i, w) in p.forbidden().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push(' ');
        let labels: Vec<&str> = w
            .arrows()
            .iter()
            .map(|&a| q.arrows()[a].label.as_str())
            .collect();
        out.push_str(&labels.join(" "));
    }
    out.push('\n');
    out
}

/// One parsed generator term: an exact rational coefficient and a path.
pub type RawTerm = (BigRational, Word);

/// Parses a single generator expression such as `y x + x` or `2 x y - 1/2 z`.
pub fn parse_poly(text: &str, quiver: &Quiver) -> Result<Vec<RawTerm>, ParseError> {
    parse_poly_at(text, quiver, 1, 0)
}

/// Parses a comma-separated list of generator expressions.
pub fn parse_poly_list(text: &str, quiver: &Quiver) -> Result<Vec<Vec<RawTerm>>, ParseError> {
    let mut out = Vec::new();
    for (entry, col) in split_entries(text, 0) {
        if entry.is_empty() {
            return Err(ParseError::new(
                1,
                col,
                ParseErrorKind::Syntax("empty generator expression".into()),
            ));
        }
        out.push(parse_poly_at(&entry, quiver, 1, col - 1)?);
    }
    Ok(out)
}

fn parse_rational(tok: &Tok, line: usize) -> Result<BigRational, ParseError> {
    let bad = || {
        ParseError::new(
            line,
            tok.col,
            ParseErrorKind::Syntax(format!("malformed coefficient `{}`", tok.text)),
        )
    };
    let (num, den) = match tok.text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok.text.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn parse_poly_at(
    text: &str,
    quiver: &Quiver,
    line: usize,
    col_offset: usize,
) -> Result<Vec<RawTerm>, ParseError> {
    // Split into signed term strings at top-level + and -.
    let mut terms: Vec<(bool, String, usize)> = Vec::new(); // (negative, text, col)
    let mut cur = String::new();
    let mut cur_col = col_offset + 1;
    let mut negative = false;
    let mut seen_any = false;
    for (i, ch) in text.chars().enumerate() {
        if ch == '+' || ch == '-' {
            if cur.trim().is_empty() && seen_any {
                return Err(ParseError::new(
                    line,
                    col_offset + i + 1,
                    ParseErrorKind::Syntax("empty term".into()),
                ));
            }
            if !cur.trim().is_empty() {
                terms.push((negative, std::mem::take(&mut cur), cur_col));
            }
            negative = ch == '-';
            cur_col = col_offset + i + 2;
            seen_any = true;
        } else {
            cur.push(ch);
        }
    }
    if !cur.trim().is_empty() {
        terms.push((negative, cur, cur_col));
    }
    if terms.is_empty() {
        return Err(ParseError::new(
            line,
            col_offset + 1,
            ParseErrorKind::Syntax("empty expression".into()),
        ));
    }

    let mut out = Vec::new();
    for (neg, term, term_col) in terms {
        let toks = tokenize(&term, term_col - 1);
        let mut idx = 0;
        let mut coeff = BigRational::one();
        if idx < toks.len() && toks[idx].text.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            coeff = parse_rational(&toks[idx], line)?;
            idx += 1;
        }
        if neg {
            coeff = -coeff;
        }
        let word_toks = &toks[idx..];
        if word_toks.is_empty() {
            return Err(ParseError::new(
                line,
                toks.first().map_or(term_col, |t| t.col),
                ParseErrorKind::Syntax("term needs at least one label".into()),
            ));
        }
        let arrows = resolve_word_tokens(word_toks, quiver, line)?;
        if !quiver.is_path(&arrows) {
            let text: Vec<&str> = word_toks.iter().map(|t| t.text.as_str()).collect();
            return Err(ParseError::new(
                line,
                word_toks[0].col,
                ParseErrorKind::NonComposable(text.join(" ")),
            ));
        }
        out.push((coeff, Word::path(arrows, quiver).expect("checked above")));
    }
    Ok(out)
}
