//! Exact solvers for games on complete graphs.
//!
//! On a complete graph every investor sees `k - 1` investing neighbors and
//! every non-investor sees `k`, so a profile with `k` investors is an
//! equilibrium iff each investor has `c_i <= Δg_i(k - 1)` and each
//! non-investor has `c_i >= Δg_i(k)`.

use crate::error::{Error, Result};
use crate::game::{ActionProfile, BnpgInstance};
use crate::report::{Diagnostics, Method, SolveReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KPsneStatus {
    /// No equilibrium with exactly `k` investors.
    None,
    /// Exactly one equilibrium with `k` investors; these are they.
    Unique(Vec<usize>),
    /// Equilibria are `forced` plus any `required` players of `indifferent`.
    Family {
        forced: Vec<usize>,
        indifferent: Vec<usize>,
        required: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPsneClassification {
    pub k: usize,
    pub status: KPsneStatus,
}

impl KPsneClassification {
    /// A concrete `k`-investor equilibrium: the forced players plus the
    /// lowest-index indifferent players.
    pub fn realize(&self, n: usize) -> Option<ActionProfile> {
        match &self.status {
            KPsneStatus::None => None,
            KPsneStatus::Unique(investors) => Some(ActionProfile::from_investors(n, investors)),
            KPsneStatus::Family {
                forced,
                indifferent,
                required,
            } => {
                let mut x = ActionProfile::from_investors(n, forced);
                for &i in &indifferent[..*required] {
                    x.set(i, true);
                }
                Some(x)
            }
        }
    }
}

fn require_complete(instance: &BnpgInstance) -> Result<()> {
    if instance.graph().is_complete() {
        Ok(())
    } else {
        Err(Error::NotComplete)
    }
}

fn require_k(instance: &BnpgInstance, k: usize) -> Result<()> {
    let n = instance.n();
    if k == 0 || k >= n {
        Err(Error::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// Players who must invest in any `k`-investor equilibrium: `c_i < Δg_i(k)`.
pub fn iplus(instance: &BnpgInstance, k: usize) -> Result<Vec<usize>> {
    require_complete(instance)?;
    require_k(instance, k)?;
    Ok(iplus_unchecked(instance, k))
}

/// Players who cannot invest in any `k`-investor equilibrium: `c_i > Δg_i(k - 1)`.
pub fn iminus(instance: &BnpgInstance, k: usize) -> Result<Vec<usize>> {
    require_complete(instance)?;
    require_k(instance, k)?;
    Ok(iminus_unchecked(instance, k))
}

fn iplus_unchecked(instance: &BnpgInstance, k: usize) -> Vec<usize> {
    (0..instance.n())
        .filter(|&i| instance.cost(i) < instance.dg(i, k))
        .collect()
}

fn iminus_unchecked(instance: &BnpgInstance, k: usize) -> Vec<usize> {
    (0..instance.n())
        .filter(|&i| instance.cost(i) > instance.dg(i, k - 1))
        .collect()
}

pub fn classify_k_psne(instance: &BnpgInstance, k: usize) -> Result<KPsneClassification> {
    require_complete(instance)?;
    require_k(instance, k)?;
    Ok(classify(instance, k, instance.is_homogeneous()))
}

fn classify(instance: &BnpgInstance, k: usize, homogeneous: bool) -> KPsneClassification {
    let n = instance.n();
    let none = KPsneClassification {
        k,
        status: KPsneStatus::None,
    };
    let mut forced = Vec::new();
    let mut excluded = 0usize;
    let mut indifferent = Vec::new();
    for i in 0..n {
        let c = instance.cost(i);
        let must_invest = c < instance.dg(i, k);
        let must_not = c > instance.dg(i, k - 1);
        match (must_invest, must_not) {
            // Δg_i(k-1) < c_i < Δg_i(k): neither action is stable
            (true, true) => return none,
            (true, false) => forced.push(i),
            (false, true) => excluded += 1,
            (false, false) => indifferent.push(i),
        }
    }
    if forced.len() > k || excluded > n - k || indifferent.len() < k - forced.len() {
        return none;
    }
    let required = k - forced.len();
    let status = if homogeneous && instance.dg(0, k) > instance.dg(0, k - 1) {
        // strictly increasing difference at k: nobody is indifferent
        debug_assert!(indifferent.is_empty());
        KPsneStatus::Unique(forced)
    } else {
        KPsneStatus::Family {
            forced,
            indifferent,
            required,
        }
    };
    KPsneClassification { k, status }
}

fn all_zeros_stable(instance: &BnpgInstance) -> bool {
    (0..instance.n()).all(|i| instance.cost(i) >= instance.dg(i, 0))
}

fn all_ones_stable(instance: &BnpgInstance) -> bool {
    let top = instance.n() - 1;
    (0..instance.n()).all(|i| instance.cost(i) <= instance.dg(i, top))
}

/// First equilibrium found by checking both trivial profiles and then
/// sweeping `k = 1..n-1`, or a certificate that none exists.
pub fn solve_complete(instance: &BnpgInstance) -> Result<SolveReport> {
    require_complete(instance)?;
    let n = instance.n();
    if all_zeros_stable(instance) {
        return Ok(SolveReport::psne(ActionProfile::zeros(n), Method::Complete));
    }
    if all_ones_stable(instance) {
        return Ok(SolveReport::psne(ActionProfile::ones(n), Method::Complete));
    }
    let homogeneous = instance.is_homogeneous();
    for k in 1..n {
        if let Some(x) = classify(instance, k, homogeneous).realize(n) {
            let d = Diagnostics {
                iterations: k,
                ..Diagnostics::default()
            };
            return Ok(SolveReport::psne(x, Method::Complete).with_diagnostics(d));
        }
    }
    let d = Diagnostics {
        iterations: n.saturating_sub(1),
        ..Diagnostics::default()
    };
    Ok(SolveReport::no_psne(Method::Complete).with_diagnostics(d))
}

fn require_homogeneous(instance: &BnpgInstance) -> Result<()> {
    if instance.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// Players in ascending cost order, ties by index.
fn by_cost(instance: &BnpgInstance, players: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut order: Vec<usize> = players.collect();
    order.sort_by(|&a, &b| instance.cost(a).total_cmp(&instance.cost(b)));
    order
}

/// Homogeneous complete graphs always have an equilibrium in which the `k`
/// cheapest players invest; this finds it with one sort and one greedy pass.
pub fn simple_sort(instance: &BnpgInstance) -> Result<SolveReport> {
    require_complete(instance)?;
    require_homogeneous(instance)?;
    let n = instance.n();
    let order = by_cost(instance, 0..n);
    let dg = |t: usize| instance.dg(0, t);
    let cheapest = instance.cost(order[0]);
    let dearest = instance.cost(order[n - 1]);
    if dg(0) < cheapest {
        return Ok(SolveReport::psne(ActionProfile::zeros(n), Method::SimpleSort));
    }
    if dearest <= dg(n - 1) {
        return Ok(SolveReport::psne(ActionProfile::ones(n), Method::SimpleSort));
    }
    let mut x = ActionProfile::zeros(n);
    let mut count = 0;
    for &i in &order {
        if instance.cost(i) <= dg(count) {
            x.set(i, true);
            count += 1;
        } else {
            break;
        }
    }
    Ok(SolveReport::psne(x, Method::SimpleSort))
}

/// Welfare-maximizing equilibrium of a homogeneous game on a complete graph.
///
/// With `k` investors every player's externality is `g(k)`, so welfare is
/// `n g(k) - Σ_{investors} c_i`; for each feasible `k` the cheapest admissible
/// investors are chosen. Ties go to the smallest `k`.
pub fn socially_optimal_complete(instance: &BnpgInstance) -> Result<SolveReport> {
    require_complete(instance)?;
    require_homogeneous(instance)?;
    let n = instance.n();
    let g = instance.table(0).values();
    let nf = n as f64;
    let mut best: Option<(f64, ActionProfile)> = None;
    let mut consider = |sw: f64, x: ActionProfile| {
        if best.as_ref().is_none_or(|(b, _)| sw > *b) {
            best = Some((sw, x));
        }
    };

    if all_zeros_stable(instance) {
        consider(nf * g[0], ActionProfile::zeros(n));
    }
    #[allow(clippy::needless_range_loop)]
    for k in 1..n {
        let class = classify(instance, k, true);
        let investors = match class.status {
            KPsneStatus::None => continue,
            KPsneStatus::Unique(investors) => investors,
            KPsneStatus::Family { .. } => {
                let minus = iminus_unchecked(instance, k);
                let admissible = (0..n).filter(|i| minus.binary_search(i).is_err());
                let mut chosen = by_cost(instance, admissible);
                if chosen.len() < k {
                    continue;
                }
                chosen.truncate(k);
                chosen
            }
        };
        let paid: f64 = investors.iter().map(|&i| instance.cost(i)).sum();
        consider(nf * g[k] - paid, ActionProfile::from_investors(n, &investors));
    }
    if all_ones_stable(instance) {
        let paid: f64 = instance.costs().iter().sum();
        consider(nf * g[n] - paid, ActionProfile::ones(n));
    }

    Ok(match best {
        Some((_, x)) => SolveReport::psne(x, Method::SociallyOptimal),
        None => SolveReport::no_psne(Method::SociallyOptimal),
    })
}
