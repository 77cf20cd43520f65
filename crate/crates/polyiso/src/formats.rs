//! Text formats: VFI incidences, GRAPH edge lists, VREP points, HREP
//! inequalities, and printed certificates.
//!
//! Every format allows blank lines and comment lines starting with `#`.
//! Line and column numbers in errors are 1-based.

use std::fmt::Write as _;
use std::str::FromStr;

use polyiso_core::geometry::{AffineMapCertificate, PointSet};
use polyiso_core::rational::Rational;
use polyiso_core::reduction::HDescription;
use polyiso_core::{Error, IncidenceError, IncidenceMatrix, InputGraph, PolytopeGraph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: Error,
    },
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// A whitespace-separated token with its 1-based column.
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn end_column(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.column + t.text.len())
    }

    fn parse<T: FromStr>(&self, i: usize, what: &str) -> Result<T, FormatError> {
        let tok = self
            .tokens
            .get(i)
            .ok_or_else(|| syntax(self.number, self.end_column(), format!("expected {what}")))?;
        tok.text
            .parse()
            .map_err(|_| syntax(self.number, tok.column, format!("expected {what}, found `{}`", tok.text)))
    }

    fn expect_len(&self, n: usize) -> Result<(), FormatError> {
        match self.tokens.get(n) {
            Some(t) => Err(syntax(self.number, t.column, format!("unexpected `{}`", t.text))),
            None if self.tokens.len() < n => {
                Err(syntax(self.number, self.end_column(), "line ends early"))
            }
            None => Ok(()),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in raw.char_indices().chain(std::iter::once((raw.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &raw[s..pos],
                        column: s + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        Some(Line {
            number: i + 1,
            tokens,
        })
    })
}

fn header<'a>(
    lines: &mut impl Iterator<Item = Line<'a>>,
    keyword: &str,
    fields: usize,
) -> Result<(Line<'a>, Vec<usize>), FormatError> {
    let line = lines
        .next()
        .ok_or_else(|| syntax(1, 1, format!("missing `{keyword}` header")))?;
    if line.tokens[0].text != keyword {
        return Err(syntax(
            line.number,
            1,
            format!("expected `{keyword}` header, found `{}`", line.tokens[0].text),
        ));
    }
    line.expect_len(fields + 1)?;
    let values = (1..=fields)
        .map(|i| line.parse(i, "a non-negative integer"))
        .collect::<Result<_, _>>()?;
    Ok((line, values))
}

fn no_trailing<'a>(mut lines: impl Iterator<Item = Line<'a>>, what: &str) -> Result<(), FormatError> {
    match lines.next() {
        Some(l) => Err(syntax(l.number, 1, format!("more {what} than the header declares"))),
        None => Ok(()),
    }
}

/// Parses a VFI file: `VFI <n> <m>` followed by `m` facet rows.
pub fn parse_vfi(text: &str) -> Result<IncidenceMatrix, FormatError> {
    let mut lines = content_lines(text);
    let (head, hv) = header(&mut lines, "VFI", 2)?;
    let (n, m) = (hv[0], hv[1]);
    let mut rows = Vec::with_capacity(m);
    let mut row_lines = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.next().ok_or_else(|| {
            syntax(head.number, 1, format!("header declares {m} facets, found {}", rows.len()))
        })?;
        let row = (0..line.tokens.len())
            .map(|i| line.parse::<usize>(i, "a vertex index"))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        row_lines.push(line.number);
    }
    no_trailing(lines, "facet rows")?;
    IncidenceMatrix::new(n, rows).map_err(|e| {
        let line = match e {
            IncidenceError::IndexOutOfRange { facet, .. }
            | IncidenceError::RepeatedIndex { facet, .. }
            | IncidenceError::EmptyFacet { facet }
            | IncidenceError::FacetEqualsVertexSet { facet } => row_lines[facet],
            IncidenceError::DuplicateFacet { second, .. } => row_lines[second],
            IncidenceError::FacetContainment { inner, outer } => row_lines[inner.max(outer)],
            IncidenceError::TooSmall { .. } | IncidenceError::UncoveredVertex { .. } => head.number,
        };
        FormatError::Invalid {
            line,
            source: e.into(),
        }
    })
}

pub fn write_vfi(p: &IncidenceMatrix) -> String {
    let mut s = format!("VFI {} {}\n", p.n_vertices(), p.n_facets());
    for f in p.facets() {
        push_joined(&mut s, f.iter());
        s.push('\n');
    }
    s
}

fn push_joined<T: std::fmt::Display>(s: &mut String, items: impl Iterator<Item = T>) {
    for (i, x) in items.enumerate() {
        if i > 0 {
            s.push(' ');
        }
        write!(s, "{x}").unwrap();
    }
}

/// Parses a GRAPH file: `GRAPH <n>` followed by one `u v` line per edge.
pub fn parse_graph(text: &str) -> Result<InputGraph, FormatError> {
    let mut lines = content_lines(text);
    let (head, hv) = header(&mut lines, "GRAPH", 1)?;
    let n = hv[0];
    let mut edges = Vec::new();
    for line in lines {
        line.expect_len(2)?;
        let u: usize = line.parse(0, "a node index")?;
        let v: usize = line.parse(1, "a node index")?;
        // Validate per line so the error points at the offending edge.
        InputGraph::new(n, vec![(u, v)]).map_err(|source| FormatError::Invalid {
            line: line.number,
            source,
        })?;
        if edges.iter().any(|&(a, b)| (a, b) == (u.min(v), u.max(v))) {
            return Err(FormatError::Invalid {
                line: line.number,
                source: Error::InvalidGraph("duplicate edge"),
            });
        }
        edges.push((u.min(v), u.max(v)));
    }
    InputGraph::new(n, edges).map_err(|source| FormatError::Invalid {
        line: head.number,
        source,
    })
}

pub fn write_graph(g: &PolytopeGraph) -> String {
    let mut s = format!("GRAPH {}\n", g.n_nodes());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn write_input_graph(g: &InputGraph) -> String {
    let mut s = format!("GRAPH {}\n", g.n_nodes());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

fn parse_rational(line: &Line<'_>, i: usize) -> Result<Rational, FormatError> {
    let tok = &line.tokens[i];
    Rational::from_str(tok.text).map_err(|_| {
        syntax(line.number, tok.column, format!("expected a rational `p/q`, found `{}`", tok.text))
    })
}

/// Parses a VREP file: `VREP <count> <dim>` followed by `count` rows.
pub fn parse_vrep(text: &str) -> Result<PointSet, FormatError> {
    let mut lines = content_lines(text);
    let (head, hv) = header(&mut lines, "VREP", 2)?;
    let (count, dim) = (hv[0], hv[1]);
    let mut points = Vec::with_capacity(count);
    let mut point_lines = Vec::with_capacity(count);
    for _ in 0..count {
        let line = lines.next().ok_or_else(|| {
            syntax(head.number, 1, format!("header declares {count} points, found {}", points.len()))
        })?;
        line.expect_len(dim)?;
        points.push((0..dim).map(|i| parse_rational(&line, i)).collect::<Result<Vec<_>, _>>()?);
        point_lines.push(line.number);
    }
    no_trailing(lines, "points")?;
    PointSet::new(dim, points).map_err(|source| {
        let line = match source {
            Error::DuplicatePoint(i) => point_lines[i],
            _ => head.number,
        };
        FormatError::Invalid { line, source }
    })
}

pub fn write_vrep(v: &PointSet) -> String {
    let mut s = format!("VREP {} {}\n", v.len(), v.dim());
    for p in v.points() {
        push_joined(&mut s, p.iter());
        s.push('\n');
    }
    s
}

/// Parses an HREP file: `HREP <rows> <dim>` followed by rows
/// `a_1 … a_dim <= b` or `a_1 … a_dim = b`.
pub fn parse_hrep(text: &str) -> Result<HDescription, FormatError> {
    let mut lines = content_lines(text);
    let (head, hv) = header(&mut lines, "HREP", 2)?;
    let (rows, dim) = (hv[0], hv[1]);
    let mut h = HDescription {
        dim,
        inequalities: Vec::new(),
        equalities: Vec::new(),
    };
    for k in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| syntax(head.number, 1, format!("header declares {rows} rows, found {k}")))?;
        line.expect_len(dim + 2)?;
        let a = (0..dim).map(|i| parse_rational(&line, i)).collect::<Result<Vec<_>, _>>()?;
        let b = parse_rational(&line, dim + 1)?;
        let rel = &line.tokens[dim];
        match rel.text {
            "<=" => h.inequalities.push((a, b)),
            "=" => h.equalities.push((a, b)),
            other => {
                return Err(syntax(line.number, rel.column, format!("expected `<=` or `=`, found `{other}`")))
            }
        }
    }
    no_trailing(lines, "rows")?;
    Ok(h)
}

/// Inequalities first, then equations.
pub fn write_hrep(h: &HDescription) -> String {
    let mut s = format!("HREP {} {}\n", h.inequalities.len() + h.equalities.len(), h.dim);
    for (rows, rel) in [(&h.inequalities, "<="), (&h.equalities, "=")] {
        for (a, b) in rows {
            push_joined(&mut s, a.iter());
            writeln!(s, " {rel} {b}").unwrap();
        }
    }
    s
}

/// `i -> j` lines, one per index.
pub fn write_map(map: &[usize]) -> String {
    let mut s = String::new();
    for (i, j) in map.iter().enumerate() {
        writeln!(s, "{i} -> {j}").unwrap();
    }
    s
}

/// The body of a printed affine certificate: rows `A …`, a row `b …`,
/// then the vertex map.
pub fn write_affine(c: &AffineMapCertificate) -> String {
    let mut s = String::new();
    for row in &c.linear {
        s.push_str("A ");
        push_joined(&mut s, row.iter());
        s.push('\n');
    }
    s.push_str("b ");
    push_joined(&mut s, c.translation.iter());
    s.push('\n');
    s + &write_map(&c.vertex_map)
}

/// A certificate read back from printed output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedCertificate {
    /// The first word of the status line, e.g. `ISO` or `AFFINE`.
    pub kind: String,
    /// The second word, e.g. `yes`, `direct`, `dual`.
    pub verdict: String,
    pub linear: Vec<Vec<Rational>>,
    pub translation: Vec<Rational>,
    pub map: Vec<usize>,
}

/// Parses printed command output: a status line such as `ISO yes`, optional
/// `A`/`b` rows, then `i -> j` lines with `i` running through `0..n` in order.
pub fn parse_certificate(text: &str) -> Result<PrintedCertificate, FormatError> {
    let mut lines = content_lines(text);
    let status = lines.next().ok_or_else(|| syntax(1, 1, "empty certificate"))?;
    status.expect_len(2)?;
    let mut cert = PrintedCertificate {
        kind: status.tokens[0].text.to_owned(),
        verdict: status.tokens[1].text.to_owned(),
        linear: Vec::new(),
        translation: Vec::new(),
        map: Vec::new(),
    };
    for line in lines {
        match line.tokens[0].text {
            "A" => cert
                .linear
                .push((1..line.tokens.len()).map(|i| parse_rational(&line, i)).collect::<Result<_, _>>()?),
            "b" => {
                cert.translation =
                    (1..line.tokens.len()).map(|i| parse_rational(&line, i)).collect::<Result<_, _>>()?
            }
            _ => {
                line.expect_len(3)?;
                let i: usize = line.parse(0, "an index")?;
                if line.tokens[1].text != "->" {
                    return Err(syntax(line.number, line.tokens[1].column, "expected `->`"));
                }
                if i != cert.map.len() {
                    return Err(syntax(
                        line.number,
                        1,
                        format!("expected index {}, found {i}", cert.map.len()),
                    ));
                }
                cert.map.push(line.parse(2, "an index")?);
            }
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_carry_columns() {
        let l: Vec<_> = content_lines("# c\n\n  VFI  4 x\n").collect();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].number, 3);
        let cols: Vec<_> = l[0].tokens.iter().map(|t| (t.text, t.column)).collect();
        assert_eq!(cols, [("VFI", 3), ("4", 8), ("x", 10)]);
    }
}
