//! Edge-list and partition text formats.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with
//! `1 <= u < v <= n`. Partition: one line per block, space-separated labels,
//! blocks ordered by smallest member.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use gnpmod_core::{Graph, Partition};

use crate::error::{CliError, CliResult};

/// A malformed line in an input file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn format_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

fn parse_fields<const K: usize>(line_no: usize, line: &str) -> Result<[u64; K], FormatError> {
    let mut out = [0u64; K];
    let mut fields = line.split_whitespace();
    for slot in out.iter_mut() {
        let field = fields
            .next()
            .ok_or_else(|| format_error(line_no, format!("expected {K} integers")))?;
        *slot = field
            .parse()
            .map_err(|_| format_error(line_no, format!("not a nonnegative integer: {field:?}")))?;
    }
    if fields.next().is_some() {
        return Err(format_error(line_no, format!("expected {K} integers")));
    }
    Ok(out)
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| format_error(1, "missing header `n m`"))?;
    let [n, m] = parse_fields::<2>(1, header)?;
    if n == 0 {
        return Err(format_error(1, "n must be at least 1"));
    }
    let n_usize = usize::try_from(n).map_err(|_| format_error(1, "n too large"))?;
    if n > u64::from(u32::MAX) {
        return Err(format_error(1, "n too large"));
    }
    if m > n * (n - 1) / 2 {
        return Err(format_error(1, format!("m = {m} exceeds n(n-1)/2")));
    }
    let mut edges = Vec::with_capacity(m as usize);
    let mut seen = std::collections::HashSet::with_capacity(m as usize);
    for _ in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| format_error(edges.len() + 2, format!("expected {m} edge lines")))?;
        let [u, v] = parse_fields::<2>(line_no, line)?;
        if u == v {
            return Err(format_error(line_no, format!("self-loop at vertex {u}")));
        }
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(format_error(line_no, format!("vertex {x} is outside 1..={n}")));
            }
        }
        if u > v {
            return Err(format_error(line_no, format!("expected u < v, got {u} {v}")));
        }
        if !seen.insert((u, v)) {
            return Err(format_error(line_no, format!("duplicate edge {u} {v}")));
        }
        edges.push((u as u32, v as u32));
    }
    if let Some((line_no, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(format_error(line_no, format!("more than m = {m} edge lines")));
    }
    Graph::from_edges(n_usize, edges).map_err(|e| format_error(1, e.to_string()))
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

/// Parses a partition of `1..=n`. Block order in the file is free; the
/// result is canonical.
pub fn parse_partition(n: usize, text: &str) -> Result<Partition, FormatError> {
    let mut blocks = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let block = line
            .split_whitespace()
            .map(|f| {
                f.parse::<u32>()
                    .map_err(|_| format_error(i + 1, format!("not a vertex label: {f:?}")))
            })
            .collect::<Result<Vec<u32>, _>>()?;
        blocks.push(block);
    }
    Partition::new(n, blocks).map_err(|e| format_error(0, e.to_string()))
}

pub fn format_partition(p: &Partition) -> String {
    let mut out = String::new();
    for block in p.blocks() {
        let line: Vec<String> = block.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn read(path: &Path, field: &str) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::invalid(field, format!("cannot read {}: {e}", path.display())))
}

pub fn read_edge_list(path: &Path) -> CliResult<Graph> {
    parse_edge_list(&read(path, "graph")?)
        .map_err(|e| CliError::invalid("graph", format!("{}: {e}", path.display())))
}

pub fn read_partition(path: &Path, n: usize) -> CliResult<Partition> {
    parse_partition(n, &read(path, "partition")?)
        .map_err(|e| CliError::invalid("partition", format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))
}
