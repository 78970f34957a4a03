//! Game representation and the equilibrium predicates everything else builds on.
//!
//! Player `i`'s utility is `g_i(x_i + n_i) - c_i * x_i`, where `n_i` counts the
//! investing neighbors. Investing is a (weak) best response exactly when
//! `Δg_i(n_i) = g_i(n_i + 1) - g_i(n_i) >= c_i`, and not investing when
//! `Δg_i(n_i) <= c_i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::graph::Graph;

/// Non-decreasing externality values `g(0), g(1), ..., g(deg + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExternalityTable(Vec<f64>);

impl ExternalityTable {
    pub fn new(values: Vec<f64>) -> Self {
        ExternalityTable(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, t: usize) -> Option<f64> {
        self.0.get(t).copied()
    }

    /// `g(t + 1) - g(t)`, if both entries exist.
    pub fn delta(&self, t: usize) -> Option<f64> {
        Some(self.get(t + 1)? - self.get(t)?)
    }

    /// All finite differences of the table.
    pub fn deltas(&self) -> Vec<f64> {
        self.0.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// First index `t >= 1` with `g(t) < g(t - 1)`.
    pub fn first_decrease(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[1] < w[0]).map(|p| p + 1)
    }

    pub fn truncated(&self, len: usize) -> ExternalityTable {
        ExternalityTable(self.0[..len.min(self.0.len())].to_vec())
    }
}

impl From<Vec<f64>> for ExternalityTable {
    fn from(values: Vec<f64>) -> Self {
        ExternalityTable(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Homogeneity {
    #[default]
    Heterogeneous,
    Homogeneous,
    FullyHomogeneous,
}

impl Homogeneity {
    pub fn as_str(self) -> &'static str {
        match self {
            Homogeneity::Heterogeneous => "heterogeneous",
            Homogeneity::Homogeneous => "homogeneous",
            Homogeneity::FullyHomogeneous => "fully_homogeneous",
        }
    }
}

impl fmt::Display for Homogeneity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Homogeneity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heterogeneous" => Ok(Homogeneity::Heterogeneous),
            "homogeneous" => Ok(Homogeneity::Homogeneous),
            "fully_homogeneous" => Ok(Homogeneity::FullyHomogeneous),
            other => Err(Error::InvalidParameter(format!(
                "unknown homogeneity tag {other:?}"
            ))),
        }
    }
}

/// Binary action vector; `true` means the player invests.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionProfile(Vec<bool>);

impl ActionProfile {
    pub fn new(actions: Vec<bool>) -> Self {
        ActionProfile(actions)
    }

    pub fn zeros(n: usize) -> Self {
        ActionProfile(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        ActionProfile(vec![true; n])
    }

    pub fn from_investors(n: usize, investors: &[usize]) -> Self {
        let mut actions = vec![false; n];
        for &i in investors {
            actions[i] = true;
        }
        ActionProfile(actions)
    }

    /// Profile for an enumeration mask where bit `n - 1 - i` holds player `i`,
    /// so ascending masks are lexicographic profile order.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        ActionProfile((0..n).map(|i| (mask >> (n - 1 - i)) & 1 == 1).collect())
    }

    pub fn actions(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, invest: bool) {
        self.0[i] = invest;
    }

    pub fn investors(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &a)| a).map(|(i, _)| i)
    }

    pub fn invest_count(&self) -> usize {
        self.0.iter().filter(|&&a| a).count()
    }

    pub fn invest_ratio(&self) -> f64 {
        if self.0.is_empty() {
            0.0
        } else {
            self.invest_count() as f64 / self.0.len() as f64
        }
    }

    pub fn is_trivial(&self) -> bool {
        let k = self.invest_count();
        k == 0 || k == self.0.len()
    }

    /// `ℓ_p` distance between two binary vectors.
    pub fn lp_distance(&self, other: &ActionProfile, p: f64) -> f64 {
        let diff = self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count() as f64;
        if p.is_infinite() {
            diff.min(1.0)
        } else {
            diff.powf(1.0 / p)
        }
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.0 {
            f.write_str(if a { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for ActionProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::ProfileParse(format!(
                    "unexpected character {other:?}, expected 0 or 1"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ActionProfile)
    }
}

/// A binary networked public goods game.
#[derive(Debug, Clone)]
pub struct BnpgInstance {
    graph: Graph,
    costs: Vec<f64>,
    tables: Vec<ExternalityTable>,
    homogeneity: Homogeneity,
    tolerance: f64,
    /// `max U_i - min U_i` over both actions and every neighbor count.
    utility_range: Vec<f64>,
}

impl BnpgInstance {
    /// Assembles a game without checking it. Call [`validate`](Self::validate)
    /// before using any other operation; the predicates assume a valid game.
    pub fn from_parts(
        graph: Graph,
        costs: Vec<f64>,
        tables: Vec<ExternalityTable>,
        homogeneity: Homogeneity,
    ) -> Self {
        let utility_range = tables
            .iter()
            .zip(&costs)
            .map(|(table, &c)| utility_range(table, c))
            .collect();
        BnpgInstance {
            graph,
            costs,
            tables,
            homogeneity,
            tolerance: 0.0,
            utility_range,
        }
    }

    /// Assembles and validates a game.
    pub fn new(
        graph: Graph,
        costs: Vec<f64>,
        tables: Vec<ExternalityTable>,
        homogeneity: Homogeneity,
    ) -> Result<Self> {
        let instance = Self::from_parts(graph, costs, tables, homogeneity);
        let violations = instance.validate();
        if violations.is_empty() {
            Ok(instance)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    /// Homogeneous game: every player's table is `g` truncated to `deg_i + 2`.
    pub fn homogeneous(graph: Graph, costs: Vec<f64>, g: &[f64]) -> Result<Self> {
        let tables = shared_tables(&graph, g)?;
        Self::new(graph, costs, tables, Homogeneity::Homogeneous)
    }

    /// Fully homogeneous game with shared `g` and a single cost.
    pub fn fully_homogeneous(graph: Graph, cost: f64, g: &[f64]) -> Result<Self> {
        let tables = shared_tables(&graph, g)?;
        let costs = vec![cost; graph.n()];
        Self::new(graph, costs, tables, Homogeneity::FullyHomogeneous)
    }

    /// Absolute tolerance used when comparing `Δg_i(n_i)` against `c_i`.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance.max(0.0);
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn cost(&self, i: usize) -> f64 {
        self.costs[i]
    }

    pub fn tables(&self) -> &[ExternalityTable] {
        &self.tables
    }

    pub fn table(&self, i: usize) -> &ExternalityTable {
        &self.tables[i]
    }

    pub fn homogeneity(&self) -> Homogeneity {
        self.homogeneity
    }

    pub fn validate(&self) -> Vec<Violation> {
        let n = self.n();
        let mut out = Vec::new();
        if n == 0 {
            out.push(Violation::EmptyGame);
        }
        out.extend(self.graph.violations());
        if self.costs.len() != n {
            out.push(Violation::CostCount {
                expected: n,
                found: self.costs.len(),
            });
        }
        if self.tables.len() != n {
            out.push(Violation::TableCount {
                expected: n,
                found: self.tables.len(),
            });
        }
        for (player, &c) in self.costs.iter().enumerate() {
            if !c.is_finite() {
                out.push(Violation::NonFiniteCost { player });
            }
        }
        for (player, table) in self.tables.iter().enumerate().take(n) {
            let expected = self.graph.degree(player) + 2;
            if table.len() != expected {
                out.push(Violation::TableLength {
                    player,
                    expected,
                    found: table.len(),
                });
            }
            if let Some(index) = table.values().iter().position(|v| !v.is_finite()) {
                out.push(Violation::NonFiniteTable { player, index });
            } else if let Some(index) = table.first_decrease() {
                out.push(Violation::NonMonotone { player, index });
            }
        }
        if self.homogeneity != Homogeneity::Heterogeneous && !self.tables.is_empty() {
            for player in 1..self.tables.len() {
                if !tables_agree(&self.tables[0], &self.tables[player]) {
                    out.push(Violation::HomogeneityMismatch { player });
                }
            }
        }
        if self.homogeneity == Homogeneity::FullyHomogeneous && !self.costs.is_empty() {
            for player in 1..self.costs.len() {
                if self.costs[player] != self.costs[0] {
                    out.push(Violation::CostMismatch { player });
                }
            }
        }
        out
    }

    /// True when all tables agree on their common domain, whatever the
    /// declared tag says.
    pub fn is_homogeneous(&self) -> bool {
        match self.longest_table() {
            Some(reference) => self.tables.iter().all(|t| tables_agree(reference, t)),
            None => true,
        }
    }

    pub fn is_fully_homogeneous(&self) -> bool {
        self.is_homogeneous() && self.costs.windows(2).all(|w| w[0] == w[1])
    }

    /// The shared externality function of a homogeneous game, taken from the
    /// player with the longest table.
    pub fn shared_externality(&self) -> Option<&ExternalityTable> {
        if self.is_homogeneous() {
            self.longest_table()
        } else {
            None
        }
    }

    fn longest_table(&self) -> Option<&ExternalityTable> {
        // first player of maximum length
        self.tables
            .iter()
            .rev()
            .max_by_key(|t| t.len())
    }

    pub fn check_player(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::PlayerOutOfRange {
                player: i,
                n: self.n(),
            })
        }
    }

    pub fn check_profile(&self, x: &ActionProfile) -> Result<()> {
        if x.len() == self.n() {
            Ok(())
        } else {
            Err(Error::ProfileLength {
                expected: self.n(),
                found: x.len(),
            })
        }
    }

    fn check(&self, x: &ActionProfile, i: usize) -> Result<()> {
        self.check_profile(x)?;
        self.check_player(i)
    }

    /// `n_i`: number of `i`'s neighbors that invest under `x`.
    pub fn neighbor_invest_count(&self, x: &ActionProfile, i: usize) -> Result<usize> {
        self.check(x, i)?;
        Ok(self.count_unchecked(x.actions(), i))
    }

    pub fn utility(&self, x: &ActionProfile, i: usize) -> Result<f64> {
        self.check(x, i)?;
        let own = x.get(i);
        Ok(self.utility_at(i, own, self.count_unchecked(x.actions(), i)))
    }

    /// `Δg_i(t)` for `0 <= t <= deg_i`.
    pub fn delta_g(&self, i: usize, t: usize) -> Result<f64> {
        self.check_player(i)?;
        let max = self.graph.degree(i);
        if t > max {
            return Err(Error::CountOutOfRange { player: i, t, max });
        }
        Ok(self.dg(i, t))
    }

    pub fn is_best_response(&self, x: &ActionProfile, i: usize) -> Result<bool> {
        self.check(x, i)?;
        Ok(self.action_is_best_response(i, x.get(i), self.count_unchecked(x.actions(), i)))
    }

    pub fn is_psne(&self, x: &ActionProfile) -> Result<bool> {
        self.check_profile(x)?;
        let actions = x.actions();
        Ok((0..self.n())
            .all(|i| self.action_is_best_response(i, actions[i], self.count_unchecked(actions, i))))
    }

    /// `U_i(1 - x_i, n_i) - U_i(x_i, n_i)`, unclamped.
    pub fn deviation_gain(&self, x: &ActionProfile, i: usize) -> Result<f64> {
        self.check(x, i)?;
        Ok(self.gain_at(i, x.get(i), self.count_unchecked(x.actions(), i)))
    }

    /// Largest clamped deviation gain over all players. With `normalized`,
    /// each gain is divided by the range of that player's utility.
    pub fn max_epsilon(&self, x: &ActionProfile, normalized: bool) -> Result<f64> {
        self.check_profile(x)?;
        let actions = x.actions();
        Ok((0..self.n())
            .map(|i| self.epsilon_at(i, actions[i], self.count_unchecked(actions, i), normalized))
            .fold(0.0, f64::max))
    }

    /// Sum of all players' utilities.
    pub fn social_welfare(&self, x: &ActionProfile) -> Result<f64> {
        self.check_profile(x)?;
        let actions = x.actions();
        Ok((0..self.n())
            .map(|i| self.utility_at(i, actions[i], self.count_unchecked(actions, i)))
            .sum())
    }

    pub(crate) fn count_unchecked(&self, actions: &[bool], i: usize) -> usize {
        self.graph
            .neighbors(i)
            .iter()
            .filter(|&&j| actions[j])
            .count()
    }

    #[inline]
    pub(crate) fn dg(&self, i: usize, t: usize) -> f64 {
        let values = self.tables[i].values();
        values[t + 1] - values[t]
    }

    #[inline]
    pub(crate) fn utility_at(&self, i: usize, invest: bool, count: usize) -> f64 {
        let values = self.tables[i].values();
        if invest {
            values[count + 1] - self.costs[i]
        } else {
            values[count]
        }
    }

    /// Whether `invest` is a best response for `i` facing `count` investing
    /// neighbors.
    #[inline]
    pub(crate) fn action_is_best_response(&self, i: usize, invest: bool, count: usize) -> bool {
        let d = self.dg(i, count);
        let c = self.costs[i];
        if invest {
            d >= c - self.tolerance
        } else {
            d <= c + self.tolerance
        }
    }

    #[inline]
    pub(crate) fn gain_at(&self, i: usize, invest: bool, count: usize) -> f64 {
        let surplus = self.dg(i, count) - self.costs[i];
        if invest {
            -surplus
        } else {
            surplus
        }
    }

    #[inline]
    pub(crate) fn epsilon_at(&self, i: usize, invest: bool, count: usize, normalized: bool) -> f64 {
        let gain = self.gain_at(i, invest, count);
        if gain <= self.tolerance {
            return 0.0;
        }
        if normalized {
            let range = self.utility_range[i];
            if range > 0.0 {
                gain / range
            } else {
                0.0
            }
        } else {
            gain
        }
    }
}

fn utility_range(table: &ExternalityTable, cost: f64) -> f64 {
    let values = table.values();
    if values.len() < 2 {
        return 0.0;
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for t in 0..values.len() - 1 {
        for u in [values[t], values[t + 1] - cost] {
            lo = lo.min(u);
            hi = hi.max(u);
        }
    }
    hi - lo
}

fn tables_agree(a: &ExternalityTable, b: &ExternalityTable) -> bool {
    a.values().iter().zip(b.values()).all(|(x, y)| x == y)
}

fn shared_tables(graph: &Graph, g: &[f64]) -> Result<Vec<ExternalityTable>> {
    let needed = graph.max_degree() + 2;
    if g.len() < needed {
        return Err(Error::InvalidParameter(format!(
            "shared externality needs at least {needed} values, got {}",
            g.len()
        )));
    }
    Ok((0..graph.n())
        .map(|i| ExternalityTable::new(g[..graph.degree(i) + 2].to_vec()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(s: &str) -> ActionProfile {
        s.parse().unwrap()
    }

    #[test]
    fn invest_counts() {
        let path = fixtures::three_player_path();
        assert_eq!(path.neighbor_invest_count(&p("101"), 1).unwrap(), 2);
        assert_eq!(path.neighbor_invest_count(&p("000"), 0).unwrap(), 0);
        let k4 = BnpgInstance::homogeneous(Graph::complete(4), vec![0.0; 4], &[0.0; 5]).unwrap();
        assert_eq!(k4.neighbor_invest_count(&p("1101"), 3).unwrap(), 2);
    }

    #[test]
    fn index_errors() {
        let path = fixtures::three_player_path();
        assert!(matches!(
            path.neighbor_invest_count(&p("000"), 3),
            Err(Error::PlayerOutOfRange { player: 3, n: 3 })
        ));
        assert!(matches!(
            path.is_psne(&p("00")),
            Err(Error::ProfileLength { expected: 3, found: 2 })
        ));
        assert!(matches!(
            path.delta_g(0, 2),
            Err(Error::CountOutOfRange { player: 0, t: 2, max: 1 })
        ));
    }

    #[test]
    fn utilities_on_path_game() {
        let path = fixtures::three_player_path();
        assert_eq!(path.utility(&p("101"), 1).unwrap(), 9.5);
        assert_eq!(path.utility(&p("101"), 0).unwrap(), 5.0);
    }

    #[test]
    fn zero_game_has_zero_utility() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let tables = (0..3).map(|i| vec![0.0; g.degree(i) + 2].into()).collect();
        let game = BnpgInstance::new(g, vec![0.0; 3], tables, Homogeneity::Heterogeneous).unwrap();
        for mask in 0..8 {
            let x = ActionProfile::from_mask(3, mask);
            for i in 0..3 {
                assert_eq!(game.utility(&x, i).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn delta_g_values() {
        let path = fixtures::three_player_path();
        assert_eq!(path.delta_g(1, 0).unwrap(), 1.5);
        assert_eq!(path.delta_g(1, 1).unwrap(), 3.5);
        assert_eq!(path.delta_g(1, 2).unwrap(), 0.5);
        let flat = BnpgInstance::homogeneous(Graph::complete(3), vec![1.0; 3], &[2.0; 4]).unwrap();
        assert!((0..3).all(|t| flat.delta_g(0, t).unwrap() == 0.0));
    }

    #[test]
    fn best_response_checks() {
        let path = fixtures::three_player_path();
        assert!(!path.is_best_response(&p("000"), 0).unwrap());
        assert!(path.is_best_response(&p("000"), 2).unwrap());
        // Δg(0) = 1 = c: indifferent, both actions are best responses
        let single = BnpgInstance::new(
            Graph::empty(1),
            vec![1.0],
            vec![vec![0.0, 1.0].into()],
            Homogeneity::Heterogeneous,
        )
        .unwrap();
        assert!(single.is_best_response(&p("0"), 0).unwrap());
        assert!(single.is_best_response(&p("1"), 0).unwrap());
    }

    #[test]
    fn no_profile_of_the_no_psne_fixtures_is_an_equilibrium() {
        let path = fixtures::three_player_path();
        let pair = fixtures::two_player_no_psne(1.0, 1.0, 0.5);
        assert!((0..8).all(|m| !path.is_psne(&ActionProfile::from_mask(3, m)).unwrap()));
        assert!((0..4).all(|m| !pair.is_psne(&ActionProfile::from_mask(2, m)).unwrap()));
        let single = BnpgInstance::new(
            Graph::empty(1),
            vec![0.5],
            vec![vec![0.0, 1.0].into()],
            Homogeneity::Heterogeneous,
        )
        .unwrap();
        assert!(single.is_psne(&p("1")).unwrap());
    }

    #[test]
    fn epsilon_values() {
        let path = fixtures::three_player_path();
        assert_eq!(path.max_epsilon(&p("000"), false).unwrap(), 0.5);
        assert_eq!(path.max_epsilon(&p("111"), false).unwrap(), 1.5);
        let single = BnpgInstance::new(
            Graph::empty(1),
            vec![0.5],
            vec![vec![0.0, 1.0].into()],
            Homogeneity::Heterogeneous,
        )
        .unwrap();
        assert_eq!(single.max_epsilon(&p("1"), true).unwrap(), 0.0);
        // utilities {0, 0.5}: the 0.5 gain is the whole range
        assert_eq!(single.max_epsilon(&p("0"), true).unwrap(), 1.0);
        assert_eq!(single.max_epsilon(&p("0"), false).unwrap(), 0.5);
    }

    #[test]
    fn welfare_values() {
        let path = fixtures::three_player_path();
        assert_eq!(path.social_welfare(&p("000")).unwrap(), 13.5);
        assert_eq!(path.social_welfare(&p("111")).unwrap(), 23.0);
        let zero = BnpgInstance::new(
            Graph::empty(1),
            vec![0.0],
            vec![vec![0.0, 0.0].into()],
            Homogeneity::Heterogeneous,
        )
        .unwrap();
        assert_eq!(zero.social_welfare(&p("0")).unwrap(), 0.0);
    }

    #[test]
    fn validation_reports_each_violation() {
        assert!(fixtures::three_player_path().validate().is_empty());

        let bad_table = BnpgInstance::from_parts(
            Graph::empty(1),
            vec![0.0],
            vec![vec![1.0, 0.5, 2.0].into()],
            Homogeneity::Heterogeneous,
        );
        assert!(bad_table
            .validate()
            .contains(&Violation::NonMonotone { player: 0, index: 1 }));

        let asym = BnpgInstance::from_parts(
            Graph::from_adjacency(vec![vec![1], vec![]]),
            vec![0.0, 0.0],
            vec![vec![0.0; 3].into(), vec![0.0; 2].into()],
            Homogeneity::Heterogeneous,
        );
        assert!(asym.validate().contains(&Violation::Asymmetric { a: 0, b: 1 }));

        let mislabeled = BnpgInstance::from_parts(
            Graph::empty(2),
            vec![1.0, 2.0],
            vec![vec![0.0, 1.0].into(), vec![0.0, 2.0].into()],
            Homogeneity::FullyHomogeneous,
        );
        let v = mislabeled.validate();
        assert!(v.contains(&Violation::HomogeneityMismatch { player: 1 }));
        assert!(v.contains(&Violation::CostMismatch { player: 1 }));
    }

    #[test]
    fn profile_parsing_and_display() {
        let x = p("0110");
        assert_eq!(x.to_string(), "0110");
        assert_eq!(x.invest_count(), 2);
        assert!("01a".parse::<ActionProfile>().is_err());
        assert_eq!(ActionProfile::from_mask(3, 0b100), p("100"));
        assert_eq!(p("0000").lp_distance(&p("1101"), 1.0), 3.0);
    }

    #[test]
    fn structural_homogeneity() {
        let path = fixtures::three_player_path();
        assert!(path.is_homogeneous());
        assert!(!path.is_fully_homogeneous());
        assert_eq!(
            path.shared_externality().unwrap().values(),
            &[4.5, 6.0, 9.5, 10.0]
        );
    }
}
