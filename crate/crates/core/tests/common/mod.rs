//! Random dyadic games: every value is a multiple of 1/4, so sums and
//! differences are exact and ties at indifference actually occur.
#![allow(dead_code)]

use bnpg::{BnpgInstance, ExternalityTable, Graph, Homogeneity};
use rand::Rng;

pub fn quarter<R: Rng>(rng: &mut R, max_quarters: u32) -> f64 {
    rng.random_range(0..=max_quarters) as f64 / 4.0
}

/// Non-decreasing table of `len` dyadic values.
pub fn dyadic_table<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let mut v = quarter(rng, 8);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v);
        v += quarter(rng, 8);
    }
    out
}

/// Table whose differences strictly increase.
pub fn convex_table<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let mut step = quarter(rng, 4);
    let mut v = quarter(rng, 4);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v);
        v += step;
        step += 0.25 + quarter(rng, 4);
    }
    out
}

pub fn heterogeneous<R: Rng>(rng: &mut R, graph: Graph) -> BnpgInstance {
    let n = graph.n();
    let costs = (0..n).map(|_| quarter(rng, 12)).collect();
    let tables = (0..n)
        .map(|i| ExternalityTable::new(dyadic_table(rng, graph.degree(i) + 2)))
        .collect();
    BnpgInstance::new(graph, costs, tables, Homogeneity::Heterogeneous).unwrap()
}

pub fn homogeneous<R: Rng>(rng: &mut R, graph: Graph) -> BnpgInstance {
    let n = graph.n();
    let costs = (0..n).map(|_| quarter(rng, 12)).collect();
    let g = dyadic_table(rng, graph.max_degree() + 2);
    BnpgInstance::homogeneous(graph, costs, &g).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
