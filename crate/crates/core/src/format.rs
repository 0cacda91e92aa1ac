//! Text formats for functions and path certificates.
//!
//! Function files:
//!
//! ```text
//! # comment
//! n 3
//! 000 0
//! 100 1/2
//! ```
//!
//! A total function lists every point exactly once; a partial function any
//! subset. Certificate files:
//!
//! ```text
//! n 2
//! path 00 01
//! path 11 10
//! match 0.0 1.0
//! ```
//!
//! `match a.b c.d` pairs edge `b` of path `a` (upward) with edge `d` of path
//! `c` (downward); indices are 0-based. Without `match` lines the verifier
//! computes a matching itself.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::extendability::{EdgeRef, PathCertificate};
use crate::functions::{PartialFunction, TotalFunction};
use crate::hypercube::{check_dim, Point};
use crate::scalar::Scalar;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((k + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>) -> Result<usize> {
    let (line, fields) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing `n <dimension>` header"))?;
    match fields.as_slice() {
        ["n", dim] => {
            let dim: usize = dim
                .parse()
                .map_err(|_| parse_error(line, format!("bad dimension {dim:?}")))?;
            check_dim(dim).map_err(|e| parse_error(line, e.to_string()))?;
            Ok(dim)
        }
        _ => Err(parse_error(line, "expected `n <dimension>` header")),
    }
}

fn parse_point(line: usize, text: &str, dim: usize) -> Result<Point> {
    let p = Point::parse(text).map_err(|e| parse_error(line, e.to_string()))?;
    if p.dim() != dim {
        return Err(parse_error(
            line,
            format!("bitstring {text:?} has length {}, expected {dim}", p.dim()),
        ));
    }
    Ok(p)
}

pub fn parse_partial<T: Scalar>(text: &str) -> Result<PartialFunction<T>> {
    let mut lines = content_lines(text);
    let dim = parse_header(&mut lines)?;
    let mut f = PartialFunction::empty(dim)?;
    for (line, fields) in lines {
        let [point, value] = fields.as_slice() else {
            return Err(parse_error(line, "expected `<bitstring> <value>`"));
        };
        let p = parse_point(line, point, dim)?;
        let v = T::parse_literal(value).ok_or_else(|| parse_error(line, format!("bad value {value:?}")))?;
        if f.is_defined(p) {
            return Err(parse_error(line, format!("duplicate point {p}")));
        }
        f.define(p, v)?;
    }
    Ok(f)
}

pub fn parse_total<T: Scalar>(text: &str) -> Result<TotalFunction<T>> {
    let f = parse_partial(text)?;
    let missing = (1usize << f.dim()) - f.len();
    f.to_total().ok_or_else(|| {
        let last = text.lines().count().max(1);
        parse_error(last, format!("total function is missing {missing} point(s)"))
    })
}

pub fn write_total<T: Scalar>(f: &TotalFunction<T>) -> String {
    let mut out = format!("n {}\n", f.dim());
    for (p, v) in f.points().zip(f.values()) {
        writeln!(out, "{p} {v}").unwrap();
    }
    out
}

pub fn write_partial<T: Scalar>(f: &PartialFunction<T>) -> String {
    let mut out = format!("n {}\n", f.dim());
    for (p, v) in f.iter() {
        writeln!(out, "{p} {v}").unwrap();
    }
    out
}

fn parse_edge_ref(line: usize, text: &str) -> Result<EdgeRef> {
    let bad = || parse_error(line, format!("bad edge reference {text:?}, expected <path>.<edge>"));
    let (path, edge) = text.split_once('.').ok_or_else(bad)?;
    Ok(EdgeRef {
        path: path.parse().map_err(|_| bad())?,
        edge: edge.parse().map_err(|_| bad())?,
    })
}

/// Structural checks (adjacency, endpoints, matching validity) happen in
/// the verifier; this only enforces syntax and dimensions.
pub fn parse_certificate(text: &str) -> Result<PathCertificate> {
    let mut lines = content_lines(text);
    let dim = parse_header(&mut lines)?;
    let mut paths = Vec::new();
    let mut matching: Option<Vec<(EdgeRef, EdgeRef)>> = None;
    for (line, fields) in lines {
        match fields.as_slice() {
            ["path", points @ ..] if !points.is_empty() => {
                let walk = points
                    .iter()
                    .map(|t| parse_point(line, t, dim))
                    .collect::<Result<Vec<_>>>()?;
                paths.push(walk);
            }
            ["match", up, down] => {
                let pair = (parse_edge_ref(line, up)?, parse_edge_ref(line, down)?);
                matching.get_or_insert_with(Vec::new).push(pair);
            }
            _ => {
                return Err(parse_error(
                    line,
                    "expected `path <bitstring>...` or `match <p.e> <p.e>`",
                ))
            }
        }
    }
    Ok(PathCertificate { dim, paths, matching })
}

pub fn write_certificate(cert: &PathCertificate) -> String {
    let mut out = format!("n {}\n", cert.dim);
    for walk in &cert.paths {
        out.push_str("path");
        for p in walk {
            write!(out, " {p}").unwrap();
        }
        out.push('\n');
    }
    for (up, down) in cert.matching.iter().flatten() {
        writeln!(out, "match {}.{} {}.{}", up.path, up.edge, down.path, down.edge).unwrap();
    }
    out
}
