//! Best-response heuristic for approximate equilibria on arbitrary graphs.
//!
//! An outer loop repeatedly calls [`evolve`], which runs up to `K`
//! asynchronous best-response sweeps and keeps the lowest-ε profile it
//! visited. The loop stops at an exact equilibrium, when two consecutive
//! profiles are closer than `δ`, or after `B` iterations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ActionProfile, BnpgInstance};
use crate::report::{Diagnostics, Method, SolveReport, Status};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeuristicParams {
    /// Best-response sweeps per [`evolve`] call.
    pub trials: usize,
    /// Maximum outer iterations.
    pub max_iterations: usize,
    /// Stop once consecutive profiles are closer than this.
    pub delta: f64,
    /// Norm index of the profile distance.
    pub p: f64,
    pub seed: u64,
    pub normalized: bool,
}

impl Default for HeuristicParams {
    fn default() -> Self {
        HeuristicParams {
            trials: 10,
            max_iterations: 100,
            delta: 1.0,
            p: 1.0,
            seed: 0,
            normalized: true,
        }
    }
}

impl HeuristicParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if self.trials < 1 {
            return bad("trials (K) must be at least 1");
        }
        if self.max_iterations < 1 {
            return bad("max_iterations (B) must be at least 1");
        }
        if self.delta.is_nan() || self.delta <= 0.0 {
            return bad("delta must be positive");
        }
        if self.p.is_nan() || self.p < 1.0 {
            return bad("p must be at least 1");
        }
        Ok(())
    }
}

/// Generator for outer iteration `stream` (0 draws the initial profile).
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One sweep over players in ascending order, each best-responding to the
/// current (partially updated) profile. Exact indifference is a fair coin.
pub fn asynchronous_br<R: Rng + ?Sized>(
    instance: &BnpgInstance,
    x: &ActionProfile,
    rng: &mut R,
) -> ActionProfile {
    let mut next = x.clone();
    br_sweep(instance, &mut next, rng);
    next
}

fn br_sweep<R: Rng + ?Sized>(instance: &BnpgInstance, x: &mut ActionProfile, rng: &mut R) {
    let tol = instance.tolerance();
    for i in 0..instance.n() {
        let count = instance.count_unchecked(x.actions(), i);
        let surplus = instance.dg(i, count) - instance.cost(i);
        let invest = if surplus > tol {
            true
        } else if surplus < -tol {
            false
        } else {
            rng.random_bool(0.5)
        };
        x.set(i, invest);
    }
}

fn epsilon(instance: &BnpgInstance, x: &ActionProfile, normalized: bool) -> f64 {
    instance
        .max_epsilon(x, normalized)
        .expect("profile length matches instance")
}

/// Runs up to `trials` sweeps from `x`, returning the first exact equilibrium
/// encountered or else the lowest-ε profile evaluated (earliest on ties).
pub fn evolve<R: Rng + ?Sized>(
    instance: &BnpgInstance,
    x: &ActionProfile,
    trials: usize,
    rng: &mut R,
    normalized: bool,
) -> (ActionProfile, f64) {
    evolve_counted(instance, x, trials, rng, normalized).0
}

fn evolve_counted<R: Rng + ?Sized>(
    instance: &BnpgInstance,
    x: &ActionProfile,
    trials: usize,
    rng: &mut R,
    normalized: bool,
) -> ((ActionProfile, f64), usize) {
    let mut current = x.clone();
    let mut best: Option<(ActionProfile, f64)> = None;
    let mut sweeps = 0;
    for _ in 0..trials {
        let eps = epsilon(instance, &current, normalized);
        if eps == 0.0 {
            return ((current, 0.0), sweeps);
        }
        if best.as_ref().is_none_or(|(_, b)| eps < *b) {
            best = Some((current.clone(), eps));
        }
        br_sweep(instance, &mut current, rng);
        sweeps += 1;
    }
    (best.expect("trials >= 1"), sweeps)
}

/// Approximate equilibrium search; deterministic given `params.seed`.
pub fn find_approx_psne(instance: &BnpgInstance, params: &HeuristicParams) -> Result<SolveReport> {
    params.validate()?;
    let n = instance.n();
    let mut init_rng = stream_rng(params.seed, 0);
    let mut x = ActionProfile::new((0..n).map(|_| init_rng.random_bool(0.5)).collect());
    let mut diagnostics = Diagnostics::default();
    if epsilon(instance, &x, params.normalized) == 0.0 {
        return Ok(SolveReport::psne(x, Method::Heuristic).with_diagnostics(diagnostics));
    }

    let mut distance = f64::INFINITY;
    let mut last = x.clone();
    while distance >= params.delta && diagnostics.iterations < params.max_iterations {
        diagnostics.iterations += 1;
        let mut rng = stream_rng(params.seed, diagnostics.iterations as u64);
        let ((next, eps), sweeps) =
            evolve_counted(instance, &x, params.trials, &mut rng, params.normalized);
        diagnostics.evolve_calls += 1;
        diagnostics.br_sweeps += sweeps;
        if eps == 0.0 {
            return Ok(SolveReport::psne(next, Method::Heuristic).with_diagnostics(diagnostics));
        }
        distance = next.lp_distance(&x, params.p);
        x = next.clone();
        last = next;
    }
    let eps = epsilon(instance, &last, params.normalized);
    let status = Status::ApproxPsne {
        profile: last,
        epsilon: eps,
    };
    Ok(SolveReport::new(status, Method::Heuristic).with_diagnostics(diagnostics))
}
