//! Reduction gadgets, used as hard test fixtures.

use crate::error::{Error, Result};
use crate::game::{BnpgInstance, ExternalityTable, Homogeneity};
use crate::graph::Graph;

/// Adds an apex adjacent to every base node (the apex is the last player).
///
/// Base players follow a best-shot rule: invest iff no neighbor invests. The
/// apex rewards between 2 and `k` investing neighbors, so it ends up idle with
/// no consistent base profile unless some maximal independent set has at least
/// `k` nodes. The game has an equilibrium iff the base graph has an
/// independent set of size `k`.
pub fn independent_set_gadget(base: &Graph, k: usize) -> Result<BnpgInstance> {
    if k == 0 {
        return Err(Error::InvalidParameter("gadget size k must be at least 1".into()));
    }
    let m = base.n();
    let apex = m;
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    edges.extend((0..m).map(|v| (v, apex)));
    let graph = Graph::from_edges(m + 1, edges)?;

    let mut tables = Vec::with_capacity(m + 1);
    for v in 0..m {
        let len = graph.degree(v) + 2;
        tables.push(ExternalityTable::new(
            (0..len).map(|t| if t == 0 { 0.0 } else { 1.0 }).collect(),
        ));
    }
    // with k = 1 the ramp would start at x = 1 and reward a lone investor, so
    // the apex table is flat there (any non-empty base has a 1-node set)
    let apex_value = |x: usize| {
        if x <= 1 || k == 1 {
            0.0
        } else {
            x.min(k) as f64
        }
    };
    tables.push(ExternalityTable::new((0..m + 2).map(apex_value).collect()));
    BnpgInstance::new(graph, vec![0.5; m + 1], tables, Homogeneity::Heterogeneous)
}

/// Fully homogeneous game with `g(x) = x` for `x <= 3`, `x + 1` beyond, and
/// cost 2. Investing is a best response exactly at 3 investing neighbors
/// (with indifference), so the non-empty investing sets of equilibria are the
/// 3-regular induced subgraphs.
pub fn three_ris_gadget(base: &Graph) -> Result<BnpgInstance> {
    let len = base.max_degree() + 2;
    let g: Vec<f64> = (0..len)
        .map(|x| if x <= 3 { x as f64 } else { x as f64 + 1.0 })
        .collect();
    BnpgInstance::fully_homogeneous(base.clone(), 2.0, &g)
}
