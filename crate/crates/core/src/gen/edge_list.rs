use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeListOptions {
    /// Ids start at 0 rather than 1. Only matters without `compact`.
    pub zero_indexed: bool,
    /// Relabel ids to `0..n` in order of first appearance. Otherwise ids are
    /// used as given and `n` is the largest id seen.
    pub compact: bool,
    /// Keep only the largest connected component (relabeled in order).
    pub largest_component: bool,
}

impl Default for EdgeListOptions {
    fn default() -> Self {
        EdgeListOptions {
            zero_indexed: false,
            compact: true,
            largest_component: false,
        }
    }
}

fn load_error(line: usize, message: impl Into<String>) -> Error {
    Error::Load {
        line: Some(line),
        message: message.into(),
    }
}

/// Parses whitespace-separated id pairs, one edge per line. Blank lines and
/// lines starting with `#` or `%` are skipped; extra columns (weights,
/// timestamps) are ignored.
pub fn parse_edge_list(text: &str, options: EdgeListOptions) -> Result<Graph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut max_id = None::<usize>;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let mut endpoint = || -> Result<u64> {
            let field = fields
                .next()
                .ok_or_else(|| load_error(line_no, "expected two node ids"))?;
            field
                .parse::<u64>()
                .map_err(|_| load_error(line_no, format!("invalid node id {field:?}")))
        };
        let (a, b) = (endpoint()?, endpoint()?);
        if a == b {
            return Err(load_error(line_no, format!("self-loop on node {a}")));
        }
        let (a, b) = if options.compact {
            let mut intern = |id: u64| {
                let next = ids.len();
                *ids.entry(id).or_insert(next)
            };
            (intern(a), intern(b))
        } else {
            let offset = if options.zero_indexed { 0 } else { 1 };
            let shift = |id: u64| {
                (id as usize)
                    .checked_sub(offset)
                    .ok_or_else(|| load_error(line_no, "node id 0 in a 1-indexed edge list"))
            };
            (shift(a)?, shift(b)?)
        };
        max_id = max_id.max(Some(a.max(b)));
        edges.push((a, b));
    }
    let n = if options.compact {
        ids.len()
    } else {
        max_id.map_or(0, |m| m + 1)
    };
    if n == 0 {
        return Err(Error::Load {
            line: None,
            message: "edge list contains no edges".into(),
        });
    }
    let graph = Graph::from_edges(n, edges)?;
    if options.largest_component {
        Ok(graph.induced(&graph.largest_component()))
    } else {
        Ok(graph)
    }
}

pub fn load_edge_list(path: impl AsRef<Path>, options: EdgeListOptions) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    parse_edge_list(&text, options)
}
