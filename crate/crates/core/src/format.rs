//! Game files: one TOML document per game, players numbered from 1.
//!
//! ```toml
//! n = 3
//! homogeneity = "homogeneous"
//! edges = [[1, 2], [2, 3]]
//! costs = [1.0, 2.0, 3.0]
//! g = [[4.5, 6.0, 9.5], [4.5, 6.0, 9.5, 10.0], [4.5, 6.0, 9.5]]
//!
//! [provenance]
//! seed = 7
//! ```
//!
//! `g` holds one table per player, the `i`-th of length `deg_i + 2`. The
//! optional `[provenance]` table records how a generated game was produced.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::ops::Range;
use std::path::Path;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::{Error, Result, Violation};
use crate::game::{BnpgInstance, ExternalityTable, Homogeneity};
use crate::gen::{GraphSpec, UtilityFamilyParams};
use crate::graph::Graph;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Free-form origin, e.g. an edge-list path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utilities: Option<UtilityFamilyParams>,
}

impl Provenance {
    fn is_empty(&self) -> bool {
        *self == Provenance::default()
    }
}

#[derive(Debug, Clone)]
pub struct GameFile {
    pub instance: BnpgInstance,
    pub provenance: Option<Provenance>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGame {
    n: Spanned<usize>,
    #[serde(default)]
    homogeneity: Option<Spanned<Homogeneity>>,
    edges: Spanned<Vec<Spanned<(usize, usize)>>>,
    costs: Spanned<Vec<Spanned<f64>>>,
    g: Spanned<Vec<Spanned<Vec<f64>>>>,
    #[serde(default)]
    provenance: Option<Provenance>,
}

/// Maps byte offsets to 1-based line numbers.
struct Lines<'a>(&'a str);

impl Lines<'_> {
    fn of(&self, span: Range<usize>) -> usize {
        let end = span.start.min(self.0.len());
        self.0.as_bytes()[..end].iter().filter(|&&b| b == b'\n').count() + 1
    }
}

fn at(line: usize, message: impl Into<String>) -> Error {
    Error::Load {
        line: Some(line),
        message: message.into(),
    }
}

pub fn parse_game(text: &str) -> Result<GameFile> {
    let lines = Lines(text);
    let raw: RawGame = toml::from_str(text).map_err(|e| Error::Load {
        line: e.span().map(|s| lines.of(s)),
        message: e.message().trim().to_string(),
    })?;

    let n = *raw.n.get_ref();
    let n_line = lines.of(raw.n.span());
    if n == 0 {
        return Err(at(n_line, Violation::EmptyGame.to_string()));
    }

    let mut adjacency = vec![Vec::new(); n];
    let mut seen = HashSet::new();
    for edge in raw.edges.get_ref() {
        let line = lines.of(edge.span());
        let (a, b) = *edge.get_ref();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(at(line, format!("edge ({a}, {b}) names a player outside 1..={n}")));
        }
        let (a, b) = (a - 1, b - 1);
        if a == b {
            return Err(at(line, Violation::SelfLoop { player: a }.to_string()));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(at(line, Violation::DuplicateEdge { a, b }.to_string()));
        }
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let graph = Graph::from_adjacency(adjacency);

    let costs: Vec<f64> = raw.costs.get_ref().iter().map(|c| *c.get_ref()).collect();
    let tables: Vec<ExternalityTable> = raw
        .g
        .get_ref()
        .iter()
        .map(|t| ExternalityTable::new(t.get_ref().clone()))
        .collect();
    let homogeneity = raw
        .homogeneity
        .as_ref()
        .map_or(Homogeneity::Heterogeneous, |h| *h.get_ref());
    let instance = BnpgInstance::from_parts(graph, costs, tables, homogeneity);

    let violations = instance.validate();
    if let Some(first) = violations.first() {
        let line = match *first {
            Violation::EmptyGame => n_line,
            Violation::CostCount { .. } => lines.of(raw.costs.span()),
            Violation::TableCount { .. } => lines.of(raw.g.span()),
            Violation::NonFiniteCost { player } => lines.of(raw.costs.get_ref()[player].span()),
            Violation::TableLength { player, .. }
            | Violation::NonFiniteTable { player, .. }
            | Violation::NonMonotone { player, .. } => lines.of(raw.g.get_ref()[player].span()),
            Violation::HomogeneityMismatch { player } => lines.of(raw.g.get_ref()[player].span()),
            Violation::CostMismatch { player } => lines.of(raw.costs.get_ref()[player].span()),
            _ => lines.of(raw.edges.span()),
        };
        let message = violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        return Err(at(line, message));
    }
    Ok(GameFile {
        instance,
        provenance: raw.provenance,
    })
}

pub fn load_game(path: impl AsRef<Path>) -> Result<GameFile> {
    parse_game(&std::fs::read_to_string(path)?)
}

/// Serializes a game. Floats use the shortest representation that parses
/// back to the same bits, so `parse_game(write_game(..))` is exact.
pub fn write_game(instance: &BnpgInstance, provenance: Option<&Provenance>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}", instance.n());
    let _ = writeln!(out, "homogeneity = \"{}\"", instance.homogeneity());
    let edges: Vec<String> = instance
        .graph()
        .edges()
        .map(|(a, b)| format!("[{}, {}]", a + 1, b + 1))
        .collect();
    write_array(&mut out, "edges", &edges);
    let costs: Vec<String> = instance.costs().iter().map(|c| float(*c)).collect();
    write_array(&mut out, "costs", &costs);
    let tables: Vec<String> = instance
        .tables()
        .iter()
        .map(|t| {
            let values: Vec<String> = t.values().iter().map(|v| float(*v)).collect();
            format!("[{}]", values.join(", "))
        })
        .collect();
    write_array(&mut out, "g", &tables);
    if let Some(p) = provenance.filter(|p| !p.is_empty()) {
        #[derive(Serialize)]
        struct Wrapper<'a> {
            provenance: &'a Provenance,
        }
        let section = toml::to_string(&Wrapper { provenance: p })
            .expect("provenance is always representable");
        out.push('\n');
        out.push_str(&section);
    }
    out
}

pub fn save_game(
    path: impl AsRef<Path>,
    instance: &BnpgInstance,
    provenance: Option<&Provenance>,
) -> Result<()> {
    std::fs::write(path, write_game(instance, provenance))?;
    Ok(())
}

fn float(v: f64) -> String {
    // Debug keeps a decimal point or exponent, which TOML needs for floats
    format!("{v:?}")
}

fn write_array(out: &mut String, key: &str, items: &[String]) {
    if items.is_empty() {
        let _ = writeln!(out, "{key} = []");
        return;
    }
    let _ = writeln!(out, "{key} = [");
    for item in items {
        let _ = writeln!(out, "  {item},");
    }
    out.push_str("]\n");
}
