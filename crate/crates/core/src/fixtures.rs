//! Small hand-built games with known equilibrium structure.

use crate::game::{BnpgInstance, Homogeneity};
use crate::graph::Graph;

/// Three players on a path `1 - 2 - 3` with shared
/// `g = (4.5, 6, 9.5, 10)` and costs `(1, 2, 3)`. Has no PSNE.
pub fn three_player_path() -> BnpgInstance {
    let graph = Graph::from_edges(3, [(0, 1), (1, 2)]).expect("path");
    BnpgInstance::homogeneous(graph, vec![1.0, 2.0, 3.0], &[4.5, 6.0, 9.5, 10.0])
        .expect("valid path game")
}

/// Two connected players without a PSNE:
/// `g_A = (ε, c_A, 2c_A + ε)`, `g_B = (ε, c_B + 2ε, 2c_B + ε)`, `ε <= c_A, c_B`.
pub fn two_player_no_psne(cost_a: f64, cost_b: f64, eps: f64) -> BnpgInstance {
    let graph = Graph::complete(2);
    let tables = vec![
        vec![eps, cost_a, 2.0 * cost_a + eps].into(),
        vec![eps, cost_b + 2.0 * eps, 2.0 * cost_b + eps].into(),
    ];
    BnpgInstance::new(graph, vec![cost_a, cost_b], tables, Homogeneity::Heterogeneous)
        .expect("valid two-player game")
}

/// Homogeneous triangle with `Δg = (0.4, 0.6, 0.2)` and costs `(0.1, 0.5, 0.9)`.
pub fn homogeneous_triangle() -> BnpgInstance {
    BnpgInstance::homogeneous(Graph::complete(3), vec![0.1, 0.5, 0.9], &[0.0, 0.4, 1.0, 1.2])
        .expect("valid triangle game")
}

/// Best-shot game on a star with center `center` (0-indexed) and the other
/// `n - 1` players as leaves; `g(t) = min(t, 1)`, every cost `cost`.
pub fn best_shot_star(n: usize, center: usize, cost: f64) -> BnpgInstance {
    let graph = Graph::from_edges(n, (0..n).filter(|&i| i != center).map(|i| (center, i)))
        .expect("star");
    best_shot(graph, cost)
}

/// Best-shot utilities `g(t) = min(t, 1)` with a shared cost on any graph.
pub fn best_shot(graph: Graph, cost: f64) -> BnpgInstance {
    let g: Vec<f64> = (0..graph.max_degree() + 2).map(|t| (t.min(1)) as f64).collect();
    BnpgInstance::fully_homogeneous(graph, cost, &g).expect("valid best-shot game")
}
