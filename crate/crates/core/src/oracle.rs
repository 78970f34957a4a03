//! Exhaustive ground truth for small games.
//!
//! Profiles are visited in Gray-code order so that each step flips a single
//! player and only that player's neighborhood needs updating. Results are
//! reported in lexicographic profile order (player 1 most significant).

use crate::error::{Error, Result};
use crate::game::{ActionProfile, BnpgInstance};
use crate::report::{Diagnostics, Method, SolveReport};

pub const DEFAULT_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub all_psne: Vec<ActionProfile>,
    /// Welfare-maximizing PSNE, lexicographically smallest among ties.
    pub best_welfare: Option<(ActionProfile, f64)>,
    /// Profile of minimum `max_epsilon`, lexicographically smallest among ties.
    pub min_epsilon: (ActionProfile, f64),
}

fn check_size(instance: &BnpgInstance, limit: usize) -> Result<()> {
    let n = instance.n();
    if n > limit || n >= 64 {
        Err(Error::InstanceTooLarge { n, limit })
    } else {
        Ok(())
    }
}

/// Visits every profile once. The callback receives the lexicographic mask,
/// the actions, the neighbor invest counts, and whether the profile is a PSNE.
fn for_each_profile<F>(instance: &BnpgInstance, mut visit: F)
where
    F: FnMut(u64, &[bool], &[usize], bool),
{
    let n = instance.n();
    let graph = instance.graph();
    let mut actions = vec![false; n];
    let mut counts = vec![0usize; n];
    let mut unhappy: Vec<bool> = (0..n)
        .map(|i| !instance.action_is_best_response(i, false, 0))
        .collect();
    let mut n_unhappy = unhappy.iter().filter(|&&u| u).count();
    let mut mask = 0u64;

    let refresh = |i: usize,
                   actions: &[bool],
                   counts: &[usize],
                   unhappy: &mut [bool],
                   n_unhappy: &mut usize| {
        let now = !instance.action_is_best_response(i, actions[i], counts[i]);
        if now != unhappy[i] {
            unhappy[i] = now;
            if now {
                *n_unhappy += 1;
            } else {
                *n_unhappy -= 1;
            }
        }
    };

    visit(mask, &actions, &counts, n_unhappy == 0);
    for step in 1u64..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        let i = n - 1 - bit;
        actions[i] = !actions[i];
        mask ^= 1 << bit;
        for &j in graph.neighbors(i) {
            if actions[i] {
                counts[j] += 1;
            } else {
                counts[j] -= 1;
            }
            refresh(j, &actions, &counts, &mut unhappy, &mut n_unhappy);
        }
        refresh(i, &actions, &counts, &mut unhappy, &mut n_unhappy);
        visit(mask, &actions, &counts, n_unhappy == 0);
    }
}

/// Every PSNE, in lexicographic order.
pub fn enumerate_psne(instance: &BnpgInstance, limit: usize) -> Result<Vec<ActionProfile>> {
    check_size(instance, limit)?;
    let mut masks = Vec::new();
    for_each_profile(instance, |mask, _, _, psne| {
        if psne {
            masks.push(mask);
        }
    });
    masks.sort_unstable();
    let n = instance.n();
    Ok(masks.into_iter().map(|m| ActionProfile::from_mask(n, m)).collect())
}

fn best_of(instance: &BnpgInstance, psne: &[ActionProfile]) -> Option<(ActionProfile, f64)> {
    let mut best: Option<(ActionProfile, f64)> = None;
    for x in psne {
        let sw = instance.social_welfare(x).expect("profile sized by oracle");
        if best.as_ref().is_none_or(|(_, b)| sw > *b) {
            best = Some((x.clone(), sw));
        }
    }
    best
}

pub fn best_psne_welfare(
    instance: &BnpgInstance,
    limit: usize,
) -> Result<Option<(ActionProfile, f64)>> {
    let psne = enumerate_psne(instance, limit)?;
    Ok(best_of(instance, &psne))
}

pub fn min_epsilon_profile(
    instance: &BnpgInstance,
    limit: usize,
    normalized: bool,
) -> Result<(ActionProfile, f64)> {
    check_size(instance, limit)?;
    let n = instance.n();
    let mut best = (u64::MAX, f64::INFINITY);
    for_each_profile(instance, |mask, actions, counts, psne| {
        let eps = if psne {
            0.0
        } else {
            (0..n)
                .map(|i| instance.epsilon_at(i, actions[i], counts[i], normalized))
                .fold(0.0, f64::max)
        };
        if eps < best.1 || (eps == best.1 && mask < best.0) {
            best = (mask, eps);
        }
    });
    Ok((ActionProfile::from_mask(n, best.0), best.1))
}

/// All oracle outputs in one enumeration pass.
pub fn solve_oracle(instance: &BnpgInstance, limit: usize, normalized: bool) -> Result<OracleResult> {
    check_size(instance, limit)?;
    let n = instance.n();
    let mut masks = Vec::new();
    let mut best_eps = (u64::MAX, f64::INFINITY);
    for_each_profile(instance, |mask, actions, counts, psne| {
        let eps = if psne {
            masks.push(mask);
            0.0
        } else {
            (0..n)
                .map(|i| instance.epsilon_at(i, actions[i], counts[i], normalized))
                .fold(0.0, f64::max)
        };
        if eps < best_eps.1 || (eps == best_eps.1 && mask < best_eps.0) {
            best_eps = (mask, eps);
        }
    });
    masks.sort_unstable();
    let all_psne: Vec<ActionProfile> = masks.into_iter().map(|m| ActionProfile::from_mask(n, m)).collect();
    let best_welfare = best_of(instance, &all_psne);
    Ok(OracleResult {
        all_psne,
        best_welfare,
        min_epsilon: (ActionProfile::from_mask(n, best_eps.0), best_eps.1),
    })
}

/// Oracle as a solver: reports the welfare-best PSNE, or certifies none exists.
pub fn solve(instance: &BnpgInstance, limit: usize) -> Result<SolveReport> {
    let psne = enumerate_psne(instance, limit)?;
    let diagnostics = Diagnostics {
        enumerated: 1u64 << instance.n(),
        psne_found: psne.len(),
        ..Diagnostics::default()
    };
    let report = match best_of(instance, &psne) {
        Some((x, _)) => SolveReport::psne(x, Method::Oracle),
        None => SolveReport::no_psne(Method::Oracle),
    };
    Ok(report.with_diagnostics(diagnostics))
}
