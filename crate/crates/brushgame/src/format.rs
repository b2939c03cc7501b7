//! Text formats: edge lists, brush configurations and `A/B` rationals.
//!
//! Edge lists have one `u v` pair per line. An optional `vertices N` line
//! fixes the vertex count (otherwise it is one more than the largest id).
//! Lines starting with `#` and blank lines are ignored.
//!
//! Configurations have one `v count` pair per line, with the same comment
//! rules; unlisted vertices hold no brushes.

use std::fmt::Write as _;

use brushgame_core::graph::GraphError;
use brushgame_core::rate::RateError;
use brushgame_core::{FractionParam, Graph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: expected {expected}, found {found:?}")]
    Syntax { line: usize, expected: &'static str, found: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("line {line}: vertex {vertex} listed twice")]
    RepeatedVertex { line: usize, vertex: usize },
    #[error("configuration names vertex {vertex} but the graph has {count}")]
    OutOfRange { vertex: usize, count: usize },
    #[error("{0:?} is not a rational of the form A/B")]
    Rational(String),
    #[error(transparent)]
    Rate(#[from] RateError),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number(line: usize, token: Option<&str>, expected: &'static str) -> Result<usize, FormatError> {
    let token = token.ok_or(FormatError::Syntax { line, expected, found: String::new() })?;
    token.parse().map_err(|_| FormatError::Syntax { line, expected, found: token.into() })
}

fn pair(line: usize, text: &str, expected: &'static str) -> Result<(usize, usize), FormatError> {
    let mut tokens = text.split_whitespace();
    let a = number(line, tokens.next(), expected)?;
    let b = number(line, tokens.next(), expected)?;
    if let Some(extra) = tokens.next() {
        return Err(FormatError::Syntax { line, expected, found: extra.into() });
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("vertices") {
            let mut tokens = rest.split_whitespace();
            declared = Some(number(line, tokens.next(), "a vertex count")?);
            if let Some(extra) = tokens.next() {
                return Err(FormatError::Syntax { line, expected: "end of line", found: extra.into() });
            }
            continue;
        }
        edges.push((line, pair(line, l, "two vertex ids")?));
    }
    let implied = edges.iter().map(|&(_, (u, v))| u.max(v) + 1).max().unwrap_or(0);
    let mut g = Graph::empty(declared.unwrap_or(implied));
    for (line, (u, v)) in edges {
        g.add_edge(u, v).map_err(|source| FormatError::Graph { line, source })?;
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_config(text: &str, vertex_count: usize) -> Result<Vec<u64>, FormatError> {
    let mut config = vec![0; vertex_count];
    let mut seen = vec![false; vertex_count];
    for (line, l) in content_lines(text) {
        let (v, count) = pair(line, l, "a vertex id and a brush count")?;
        if v >= vertex_count {
            return Err(FormatError::OutOfRange { vertex: v, count: vertex_count });
        }
        if seen[v] {
            return Err(FormatError::RepeatedVertex { line, vertex: v });
        }
        seen[v] = true;
        config[v] = count as u64;
    }
    Ok(config)
}

/// Nonzero entries only.
pub fn write_config(config: &[u64]) -> String {
    let mut out = String::new();
    for (v, &c) in config.iter().enumerate().filter(|(_, &c)| c > 0) {
        writeln!(out, "{v} {c}").unwrap();
    }
    out
}

/// Parses `A/B` (or a bare integer) into a rate in `(0, 1]`.
pub fn parse_rate(text: &str) -> Result<FractionParam, FormatError> {
    let bad = || FormatError::Rational(text.into());
    let (a, b) = match text.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let a: u64 = a.parse().map_err(|_| bad())?;
    let b: u64 = b.parse().map_err(|_| bad())?;
    Ok(FractionParam::new(a, b)?)
}
