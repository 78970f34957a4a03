use std::collections::BinaryHeap;
use std::cmp::Reverse;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphKind {
    Complete,
    Path,
    /// Player 1 is the center.
    Star,
    /// Uniform over labeled trees.
    #[serde(alias = "tree")]
    RandomTree,
    Cycle,
    ErdosRenyi {
        p: f64,
    },
    /// Preferential attachment with `m` edges per new node. With `exponent`
    /// set, attachment weight is `degree + m (exponent - 3)`, which shifts the
    /// degree exponent from 3 toward the target.
    BarabasiAlbert {
        m: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exponent: Option<f64>,
    },
    /// Ring lattice where each node links to its `k / 2` nearest neighbors on
    /// each side, with each lattice edge rewired with probability `p`.
    WattsStrogatz {
        k: usize,
        p: f64,
    },
}

impl GraphKind {
    pub fn name(&self) -> &'static str {
        match self {
            GraphKind::Complete => "complete",
            GraphKind::Path => "path",
            GraphKind::Star => "star",
            GraphKind::RandomTree => "random_tree",
            GraphKind::Cycle => "cycle",
            GraphKind::ErdosRenyi { .. } => "erdos_renyi",
            GraphKind::BarabasiAlbert { .. } => "barabasi_albert",
            GraphKind::WattsStrogatz { .. } => "watts_strogatz",
        }
    }

    /// Kind-specific parameters as `key=value` pairs joined by `;`.
    pub fn params_label(&self) -> String {
        match self {
            GraphKind::ErdosRenyi { p } => format!("p={p}"),
            GraphKind::BarabasiAlbert { m, exponent: None } => format!("m={m}"),
            GraphKind::BarabasiAlbert {
                m,
                exponent: Some(r),
            } => format!("m={m};exponent={r}"),
            GraphKind::WattsStrogatz { k, p } => format!("k={k};p={p}"),
            _ => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(flatten)]
    pub kind: GraphKind,
}

fn invalid<T>(msg: String) -> Result<T> {
    Err(Error::InvalidParameter(msg))
}

pub fn gen_graph(spec: &GraphSpec) -> Result<Graph> {
    let n = spec.n;
    if n == 0 {
        return invalid("graph needs at least one node".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GraphKind::Complete => Ok(Graph::complete(n)),
        GraphKind::Path => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        GraphKind::Star => Graph::from_edges(n, (1..n).map(|i| (0, i))),
        GraphKind::Cycle => {
            if n < 3 {
                return invalid(format!("cycle needs n >= 3, got {n}"));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        GraphKind::RandomTree => Graph::from_edges(n, random_tree_edges(n, &mut rng)),
        GraphKind::ErdosRenyi { p } => {
            if !(0.0..=1.0).contains(&p) {
                return invalid(format!("edge probability {p} outside [0, 1]"));
            }
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
        GraphKind::BarabasiAlbert { m, exponent } => {
            if m == 0 || m >= n {
                return invalid(format!("attachment count m = {m} must satisfy 1 <= m < n = {n}"));
            }
            let offset = match exponent {
                None => 0.0,
                Some(r) if r > 2.0 && r.is_finite() => m as f64 * (r - 3.0),
                Some(r) => return invalid(format!("degree exponent {r} must exceed 2")),
            };
            Ok(barabasi_albert(n, m, offset, &mut rng))
        }
        GraphKind::WattsStrogatz { k, p } => {
            if k % 2 == 1 || k == 0 || k >= n {
                return invalid(format!("lattice degree k = {k} must be even with 0 < k < n = {n}"));
            }
            if !(0.0..=1.0).contains(&p) {
                return invalid(format!("rewiring probability {p} outside [0, 1]"));
            }
            Ok(watts_strogatz(n, k, p, &mut rng))
        }
    }
}

/// Decodes a uniformly random Prüfer sequence.
fn random_tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two nodes remain");
    let Reverse(b) = leaves.pop().expect("two nodes remain");
    edges.push((a, b));
    edges
}

/// Starts from a clique on `m + 1` nodes; each new node links to `m` distinct
/// existing nodes chosen with probability proportional to `degree + offset`,
/// `offset > -m`.
fn barabasi_albert(n: usize, m: usize, offset: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let seed_nodes = m + 1;
    for a in 0..seed_nodes.min(n) {
        for b in a + 1..seed_nodes.min(n) {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    // node v appears degree(v) - m times; every node has degree >= m
    let mut excess: Vec<usize> = Vec::new();
    let base_weight = m as f64 + offset;
    let mut targets = Vec::with_capacity(m);
    for v in seed_nodes..n {
        let existing = v;
        targets.clear();
        while targets.len() < m {
            let stub_weight = excess.len() as f64;
            let total = stub_weight + base_weight * existing as f64;
            let pick = if rng.random::<f64>() * total < stub_weight {
                excess[rng.random_range(0..excess.len())]
            } else {
                rng.random_range(0..existing)
            };
            if !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        for &u in &targets {
            adjacency[u].push(v);
            adjacency[v].push(u);
            excess.push(u);
        }
    }
    Graph::from_adjacency(adjacency)
}

fn watts_strogatz(n: usize, k: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let link = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    let unlink = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        adj[a].retain(|&x| x != b);
        adj[b].retain(|&x| x != a);
    };
    for u in 0..n {
        for j in 1..=k / 2 {
            link(&mut adjacency, u, (u + j) % n);
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.random_bool(p) || !adjacency[u].contains(&v) {
                continue;
            }
            if adjacency[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adjacency[u].contains(&w) {
                    break w;
                }
            };
            unlink(&mut adjacency, u, v);
            link(&mut adjacency, u, w);
        }
    }
    Graph::from_adjacency(adjacency)
}

/// Mean local clustering coefficient; nodes of degree < 2 count as 0.
pub fn average_clustering(graph: &Graph) -> f64 {
    let n = graph.n();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = (0..n)
        .map(|v| {
            let nbrs = graph.neighbors(v);
            let d = nbrs.len();
            if d < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (a_pos, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[a_pos + 1..] {
                    if graph.has_edge(a, b) {
                        links += 1;
                    }
                }
            }
            2.0 * links as f64 / (d * (d - 1)) as f64
        })
        .sum();
    total / n as f64
}

/// Maximum-likelihood power-law exponent of the degree sequence restricted
/// to degrees `>= k_min` (discrete approximation with the `k_min - 1/2` shift).
pub fn power_law_exponent(graph: &Graph, k_min: usize) -> f64 {
    let k_min = k_min.max(1);
    let shift = k_min as f64 - 0.5;
    let (count, sum) = (0..graph.n())
        .map(|v| graph.degree(v))
        .filter(|&d| d >= k_min)
        .fold((0usize, 0.0f64), |(c, s), d| (c + 1, s + (d as f64 / shift).ln()));
    if count == 0 || sum == 0.0 {
        return f64::NAN;
    }
    1.0 + count as f64 / sum
}

/// Shuffled copy of `0..n`, handy for relabeling tests.
#[allow(dead_code)]
pub(crate) fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    perm
}
