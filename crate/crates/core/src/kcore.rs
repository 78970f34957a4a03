//! Fully homogeneous games with strictly convex externality.
//!
//! With `Δg` strictly increasing, investing is a best response exactly when at
//! least `k = min{t : Δg(t) >= c}` neighbors invest, so the investors of any
//! non-trivial equilibrium induce a subgraph of minimum degree `k`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::game::{ActionProfile, BnpgInstance};
use crate::graph::Graph;
use crate::report::{Diagnostics, Method, SolveReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreThreshold {
    /// `c < Δg(0)`: investing is strictly best whatever the neighbors do.
    AllInvest,
    /// `c > Δg(d_max)`: investing never pays.
    NoneInvest,
    /// Smallest neighbor count at which investing is a best response.
    K(usize),
}

fn shared_deltas(instance: &BnpgInstance) -> Result<Vec<f64>> {
    if !instance.is_fully_homogeneous() {
        return Err(Error::NotFullyHomogeneous);
    }
    let g = instance.shared_externality().ok_or(Error::NotFullyHomogeneous)?;
    // Δg(0..=d_max)
    Ok(g.deltas())
}

pub fn check_strict_convexity(instance: &BnpgInstance) -> Result<bool> {
    let deltas = shared_deltas(instance)?;
    Ok(deltas.windows(2).all(|w| w[0] < w[1]))
}

pub fn threshold_k(instance: &BnpgInstance) -> Result<CoreThreshold> {
    let deltas = shared_deltas(instance)?;
    if !deltas.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::NotStrictlyConvex);
    }
    let c = instance.cost(0);
    Ok(threshold_from(&deltas, c))
}

fn threshold_from(deltas: &[f64], c: f64) -> CoreThreshold {
    if c < deltas[0] {
        CoreThreshold::AllInvest
    } else if c > deltas[deltas.len() - 1] {
        CoreThreshold::NoneInvest
    } else {
        CoreThreshold::K(deltas.iter().position(|&d| d >= c).expect("c <= last delta"))
    }
}

/// Maximal induced subgraph with minimum degree `k`, as an ascending node list.
/// Computed by repeatedly deleting nodes of degree below `k`.
pub fn k_core(graph: &Graph, k: usize) -> Vec<usize> {
    let n = graph.n();
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] < k).collect();
    for &v in &queue {
        removed[v] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &u in graph.neighbors(v) {
            if removed[u] {
                continue;
            }
            degree[u] -= 1;
            if degree[u] < k {
                removed[u] = true;
                queue.push_back(u);
            }
        }
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// Equilibria certified by the k-core characterization.
#[derive(Debug, Clone, PartialEq)]
pub struct KcoreSolution {
    pub threshold: CoreThreshold,
    /// Maximal k-core when the threshold is an integer.
    pub core: Option<Vec<usize>>,
    pub inventory: Vec<ActionProfile>,
    pub report: SolveReport,
}

/// Solves a fully homogeneous, strictly convex game.
///
/// The reported equilibrium is the one with the most investors: all-ones or
/// all-zeros at the extremes, otherwise the maximal k-core investing (which
/// is all-ones when the core is every node), falling back to all-zeros when
/// the core is empty.
pub fn solve_fully_homogeneous_convex(instance: &BnpgInstance) -> Result<KcoreSolution> {
    let threshold = threshold_k(instance)?;
    let n = instance.n();
    let (core, inventory) = match threshold {
        CoreThreshold::AllInvest => (None, vec![ActionProfile::ones(n)]),
        CoreThreshold::NoneInvest => (None, vec![ActionProfile::zeros(n)]),
        CoreThreshold::K(k) => {
            let core = k_core(instance.graph(), k);
            let mut inventory = vec![ActionProfile::zeros(n)];
            if !core.is_empty() {
                inventory.push(ActionProfile::from_investors(n, &core));
            }
            (Some(core), inventory)
        }
    };
    let best = inventory.last().cloned().expect("inventory is never empty");
    let diagnostics = Diagnostics {
        psne_found: inventory.len(),
        ..Diagnostics::default()
    };
    Ok(KcoreSolution {
        threshold,
        core,
        inventory,
        report: SolveReport::psne(best, Method::Kcore).with_diagnostics(diagnostics),
    })
}
