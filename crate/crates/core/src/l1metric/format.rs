//! The `L1EMB v1` embedding text format.
//!
//! ```text
//! L1EMB v1 d=<d> N=<N> k=<k> n=<n>
//! <address> <v_1> ... <v_d>
//! ```
//!
//! Records follow the point-set export order. Floats are written with the
//! shortest representation that round-trips.

use std::io::{self, Write};

use super::Embedding;
use crate::pointset::{keyed_u64, ParseError, PointSet, VertexAddress};

/// Header fields of an embedding file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingHeader {
    pub dim: u64,
    pub points: u64,
    pub k: u64,
    pub n: u64,
}

impl EmbeddingHeader {
    pub fn parse(line: &str) -> Result<Self, ParseError> {
        let mut tok = line.split(' ');
        if tok.next() != Some("L1EMB") || tok.next() != Some("v1") {
            return Err(ParseError::at(1, "missing `L1EMB v1` magic"));
        }
        let header = Self {
            dim: keyed_u64(tok.next(), "d", 1)?,
            points: keyed_u64(tok.next(), "N", 1)?,
            k: keyed_u64(tok.next(), "k", 1)?,
            n: keyed_u64(tok.next(), "n", 1)?,
        };
        if tok.next().is_some() {
            return Err(ParseError::at(1, "trailing header fields"));
        }
        if header.dim == 0 {
            return Err(ParseError::at(1, "d must be at least 1"));
        }
        Ok(header)
    }
}

pub fn write_embedding<W: Write>(points: &PointSet, emb: &Embedding, mut out: W) -> io::Result<()> {
    assert_eq!(points.len(), emb.len(), "embedding does not cover the point set");
    let p = points.params();
    writeln!(out, "L1EMB v1 d={} N={} k={} n={}", emb.dim(), emb.len(), p.k(), p.n())?;
    for (addr, row) in points.addresses().iter().zip(emb.rows()) {
        write!(out, "{addr}")?;
        for v in row {
            write!(out, " {v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

impl Embedding {
    pub fn to_l1emb_string(&self, points: &PointSet) -> String {
        let mut buf = Vec::new();
        write_embedding(points, self, &mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("L1EMB output is ASCII")
    }
}

/// Parses an embedding of `points`. The header must agree with the point set
/// and every record must name the vertex expected at its position.
pub fn parse_embedding(text: &str, points: &PointSet) -> Result<Embedding, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| ParseError::at(1, "empty input"))?;
    let header = EmbeddingHeader::parse(header)?;
    let p = points.params();
    if header.k != p.k() as u64 || header.n != p.n() as u64 {
        return Err(ParseError::at(
            1,
            format!("embedding is for k={}, n={} but the point set has k={}, n={}", header.k, header.n, p.k(), p.n()),
        ));
    }
    if header.points != points.len() as u64 {
        return Err(ParseError::at(1, format!("N={} but the point set has {} points", header.points, points.len())));
    }
    let dim = usize::try_from(header.dim).map_err(|_| ParseError::at(1, "d too large"))?;

    let mut coords = Vec::new();
    let mut found = 0usize;
    for (line, record) in lines {
        let mut tok = record.split(' ');
        let addr: VertexAddress = tok
            .next()
            .unwrap_or_default()
            .parse()
            .map_err(|e: String| ParseError::at(line, e))?;
        let Some(want) = points.addresses().get(found) else {
            return Err(ParseError::RecordCount { expected: header.points, found: found as u64 + 1 });
        };
        if *want != addr {
            return Err(ParseError::at(line, format!("expected vertex {want}, found {addr}")));
        }
        let before = coords.len();
        for t in tok {
            let v: f64 = t.parse().map_err(|_| ParseError::at(line, format!("bad number {t:?}")))?;
            if !v.is_finite() {
                return Err(ParseError::at(line, format!("non-finite coordinate {t:?}")));
            }
            coords.push(v);
            if coords.len() - before > dim {
                break;
            }
        }
        if coords.len() - before != dim {
            return Err(ParseError::at(line, format!("expected {dim} coordinates")));
        }
        found += 1;
    }
    if found != points.len() {
        return Err(ParseError::RecordCount { expected: header.points, found: found as u64 });
    }
    Embedding::new(dim, coords).map_err(|e| ParseError::at(1, e.to_string()))
}
