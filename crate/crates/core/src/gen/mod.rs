//! Seeded graph and game generators.

mod edge_list;
mod gadgets;
mod graphs;

pub use edge_list::{load_edge_list, parse_edge_list, EdgeListOptions};
pub use gadgets::{independent_set_gadget, three_ris_gadget};
pub use graphs::{average_clustering, gen_graph, power_law_exponent, GraphKind, GraphSpec};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{BnpgInstance, ExternalityTable, Homogeneity};
use crate::graph::Graph;

pub const DEFAULT_ALPHAS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
pub const DEFAULT_BETAS: [f64; 3] = [1.2, 1.5, 2.0];

/// Random mix of concave and convex externalities, scaled per player.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UtilityFamilyParams {
    /// Probability that a player's externality is convex.
    pub gamma: f64,
    #[serde(default = "default_alphas")]
    pub alpha_pool: Vec<f64>,
    #[serde(default = "default_betas")]
    pub beta_pool: Vec<f64>,
}

fn default_alphas() -> Vec<f64> {
    DEFAULT_ALPHAS.to_vec()
}

fn default_betas() -> Vec<f64> {
    DEFAULT_BETAS.to_vec()
}

impl UtilityFamilyParams {
    pub fn new(gamma: f64) -> Self {
        UtilityFamilyParams {
            gamma,
            alpha_pool: default_alphas(),
            beta_pool: default_betas(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::InvalidParameter(format!(
                "gamma {} outside [0, 1]",
                self.gamma
            )));
        }
        for (name, pool) in [("alpha", &self.alpha_pool), ("beta", &self.beta_pool)] {
            if pool.is_empty() {
                return Err(Error::InvalidParameter(format!("{name} pool is empty")));
            }
            if pool.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(Error::InvalidParameter(format!(
                    "{name} pool values must be positive and finite"
                )));
            }
        }
        Ok(())
    }
}

/// `α β ln(t + 1)`: increasing with decreasing differences.
pub fn concave_family(alpha: f64, beta: f64, t: usize) -> f64 {
    alpha * beta * ((t + 1) as f64).ln()
}

/// `α ((t + 1)^β - 1)`: increasing with increasing differences for `β > 1`.
pub fn convex_family(alpha: f64, beta: f64, t: usize) -> f64 {
    alpha * (((t + 1) as f64).powf(beta) - 1.0)
}

/// Samples a heterogeneous game on `graph`. Per player, in index order:
/// cost `c ~ U[0,1]`, family (convex with probability γ), scale `λ ~ U[0,1]`,
/// then `α` and `β` uniformly from their pools.
pub fn gen_utilities(graph: Graph, params: &UtilityFamilyParams, seed: u64) -> Result<BnpgInstance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = graph.n();
    let mut costs = Vec::with_capacity(n);
    let mut tables = Vec::with_capacity(n);
    for i in 0..n {
        let cost: f64 = rng.random();
        let convex = rng.random_bool(params.gamma);
        let lambda: f64 = rng.random();
        let alpha = params.alpha_pool[rng.random_range(0..params.alpha_pool.len())];
        let beta = params.beta_pool[rng.random_range(0..params.beta_pool.len())];
        let family = if convex { convex_family } else { concave_family };
        let values = (0..graph.degree(i) + 2)
            .map(|t| lambda * family(alpha, beta, t))
            .collect();
        costs.push(cost);
        tables.push(ExternalityTable::new(values));
    }
    BnpgInstance::new(graph, costs, tables, Homogeneity::Heterogeneous)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ba(n: usize, seed: u64) -> Graph {
        gen_graph(&GraphSpec {
            n,
            seed,
            kind: GraphKind::BarabasiAlbert { m: 3, exponent: None },
        })
        .unwrap()
    }

    fn differences(table: &ExternalityTable) -> Vec<f64> {
        table.deltas()
    }

    #[test]
    fn gamma_zero_gives_concave_tables() {
        let game = gen_utilities(ba(200, 1), &UtilityFamilyParams::new(0.0), 5).unwrap();
        for table in game.tables() {
            let d = differences(table);
            assert!(d.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn gamma_one_gives_convex_tables() {
        let game = gen_utilities(ba(200, 1), &UtilityFamilyParams::new(1.0), 5).unwrap();
        for table in game.tables() {
            let d = differences(table);
            assert!(d.windows(2).all(|w| w[1] >= w[0]));
        }
    }

    #[test]
    fn utilities_are_reproducible() {
        let params = UtilityFamilyParams::new(0.5);
        let a = gen_utilities(ba(100, 2), &params, 9).unwrap();
        let b = gen_utilities(ba(100, 2), &params, 9).unwrap();
        assert_eq!(a.costs(), b.costs());
        assert_eq!(a.tables(), b.tables());
        let c = gen_utilities(ba(100, 2), &params, 10).unwrap();
        assert_ne!(a.costs(), c.costs());
    }

    #[test]
    fn params_are_validated() {
        assert!(UtilityFamilyParams::new(1.5).validate().is_err());
        let mut p = UtilityFamilyParams::new(0.5);
        p.beta_pool.clear();
        assert!(p.validate().is_err());
    }
}
