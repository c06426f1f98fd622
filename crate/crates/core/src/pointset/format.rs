//! The `P1` point-set text format.
//!
//! ```text
//! P1 k=<k> n=<n> N=<N> dim=<k^n>
//! <address> <runs>
//! ```
//!
//! Addresses are `L`, `R` or `e1.e2...em/q` (an empty path prints as `/q`).
//! Runs are `a-b` pairs joined by commas, or a lone `-` for the zero label.
//! Vertices appear in the canonical export order.

use std::io::{self, Write};
use std::str::FromStr;

use thiserror::Error;

use super::{canonical_addresses, GraphParams, IntervalLabel, PointSet, VertexAddress};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("expected {expected} records, found {found}")]
    RecordCount { expected: u64, found: u64 },
}

impl ParseError {
    pub(crate) fn at(line: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { line, msg: msg.into() }
    }
}

fn parse_u64(s: &str) -> Option<u64> {
    // reject signs and empty strings that `u64::from_str` would partly accept
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_u32(s: &str) -> Option<u32> {
    parse_u64(s).and_then(|v| u32::try_from(v).ok())
}

impl FromStr for VertexAddress {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "L" => return Ok(VertexAddress::RootLeft),
            "R" => return Ok(VertexAddress::RootRight),
            _ => {}
        }
        let (path, position) = s.split_once('/').ok_or_else(|| format!("bad address {s:?}"))?;
        let position = parse_u32(position).ok_or_else(|| format!("bad position in {s:?}"))?;
        let path = if path.is_empty() {
            Vec::new()
        } else {
            path.split('.')
                .map(|c| parse_u32(c).ok_or_else(|| format!("bad edge coordinate in {s:?}")))
                .collect::<Result<_, _>>()?
        };
        Ok(VertexAddress::Inner { path, position })
    }
}

/// Parses a run list (`a-b,c-d` or `-`) for a label of length `len`.
pub fn parse_runs(s: &str, len: u64) -> Result<IntervalLabel, String> {
    if s == "-" {
        return Ok(IntervalLabel::zeros(len));
    }
    let runs = s
        .split(',')
        .map(|run| {
            let (a, b) = run.split_once('-').ok_or_else(|| format!("bad run {run:?}"))?;
            match (parse_u64(a), parse_u64(b)) {
                (Some(a), Some(b)) => Ok((a, b)),
                _ => Err(format!("bad run {run:?}")),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    IntervalLabel::from_runs(len, runs).map_err(|e| e.to_string())
}

/// Parses a `key=value` token with the expected key.
pub(crate) fn keyed<'a>(token: Option<&'a str>, key: &str, line: usize) -> Result<&'a str, ParseError> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| ParseError::at(line, format!("expected {key}=<value>")))
}

pub(crate) fn keyed_u64(token: Option<&str>, key: &str, line: usize) -> Result<u64, ParseError> {
    let v = keyed(token, key, line)?;
    parse_u64(v).ok_or_else(|| ParseError::at(line, format!("{key} is not an unsigned integer")))
}

pub fn write_pointset<W: Write>(points: &PointSet, mut out: W) -> io::Result<()> {
    let p = points.params();
    writeln!(
        out,
        "P1 k={} n={} N={} dim={}",
        p.k(),
        p.n(),
        points.len(),
        p.label_dim()
    )?;
    for (addr, label) in points.addresses().iter().zip(points.labels()) {
        writeln!(out, "{addr} {label}")?;
    }
    Ok(())
}

impl PointSet {
    pub fn to_p1_string(&self) -> String {
        let mut buf = Vec::new();
        write_pointset(self, &mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("P1 output is ASCII")
    }
}

/// Parses a `P1` file. Addresses must follow the canonical export order and
/// every label must be well formed; whether the labels agree with the
/// construction is a separate check (compare with [`PointSet::construct`]).
pub fn parse_pointset(text: &str) -> Result<PointSet, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| ParseError::at(1, "empty input"))?;
    let mut tok = header.split(' ');
    if tok.next() != Some("P1") {
        return Err(ParseError::at(1, "missing P1 magic"));
    }
    let k = keyed_u64(tok.next(), "k", 1)?;
    let n = keyed_u64(tok.next(), "n", 1)?;
    let count = keyed_u64(tok.next(), "N", 1)?;
    let dim = keyed_u64(tok.next(), "dim", 1)?;
    if tok.next().is_some() {
        return Err(ParseError::at(1, "trailing header fields"));
    }
    let params = GraphParams::new(k, n).map_err(|e| ParseError::at(1, e.to_string()))?;
    if count != params.vertex_count() {
        return Err(ParseError::at(1, format!("N={count} but k={k}, n={n} has {} vertices", params.vertex_count())));
    }
    if dim != params.label_dim() {
        return Err(ParseError::at(1, format!("dim={dim} but k^n = {}", params.label_dim())));
    }

    let mut expected = canonical_addresses(params);
    let mut addresses = Vec::new();
    let mut labels = Vec::new();
    for (line, record) in lines {
        let (addr, runs) = record
            .split_once(' ')
            .ok_or_else(|| ParseError::at(line, "expected `<address> <runs>`"))?;
        let addr: VertexAddress = addr.parse().map_err(|e: String| ParseError::at(line, e))?;
        match expected.next() {
            Some(want) if want == addr => {}
            Some(want) => return Err(ParseError::at(line, format!("expected vertex {want}, found {addr}"))),
            None => {
                return Err(ParseError::RecordCount { expected: count, found: addresses.len() as u64 + 1 })
            }
        }
        labels.push(parse_runs(runs, dim).map_err(|e| ParseError::at(line, e))?);
        addresses.push(addr);
    }
    if (addresses.len() as u64) != count {
        return Err(ParseError::RecordCount { expected: count, found: addresses.len() as u64 });
    }
    Ok(PointSet::from_parts(params, addresses, labels))
}
