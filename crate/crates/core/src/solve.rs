//! Method dispatch: pick the most specific exact solver whose preconditions
//! hold, falling back to enumeration for small games and the heuristic
//! otherwise.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::BnpgInstance;
use crate::heuristic::{self, HeuristicParams};
use crate::report::{Method, SolveReport};
use crate::{complete, kcore, oracle, tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverChoice {
    #[default]
    Auto,
    Oracle,
    Complete,
    SimpleSort,
    SociallyOptimal,
    Tree,
    Kcore,
    Heuristic,
}

impl SolverChoice {
    pub const ALL: [SolverChoice; 8] = [
        SolverChoice::Auto,
        SolverChoice::Oracle,
        SolverChoice::Complete,
        SolverChoice::SimpleSort,
        SolverChoice::SociallyOptimal,
        SolverChoice::Tree,
        SolverChoice::Kcore,
        SolverChoice::Heuristic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverChoice::Auto => "auto",
            SolverChoice::Oracle => "oracle",
            SolverChoice::Complete => "complete",
            SolverChoice::SimpleSort => "simple_sort",
            SolverChoice::SociallyOptimal => "socially_optimal",
            SolverChoice::Tree => "tree",
            SolverChoice::Kcore => "kcore",
            SolverChoice::Heuristic => "heuristic",
        }
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverChoice::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub choice: SolverChoice,
    pub heuristic: HeuristicParams,
    /// Largest game `auto` (and `oracle`) will enumerate.
    pub oracle_limit: usize,
    /// Let the tree solver handle disconnected forests.
    pub allow_forest: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            choice: SolverChoice::Auto,
            heuristic: HeuristicParams::default(),
            oracle_limit: oracle::DEFAULT_LIMIT,
            allow_forest: true,
        }
    }
}

/// The method `auto` would use on `instance`.
pub fn select_method(instance: &BnpgInstance, options: &SolveOptions) -> Method {
    let graph = instance.graph();
    if graph.is_complete() {
        Method::Complete
    } else if graph.is_tree() || (options.allow_forest && graph.is_forest()) {
        Method::Tree
    } else if kcore::check_strict_convexity(instance).unwrap_or(false) {
        Method::Kcore
    } else if instance.n() <= options.oracle_limit {
        Method::Oracle
    } else {
        Method::Heuristic
    }
}

pub fn solve(instance: &BnpgInstance, options: &SolveOptions) -> Result<SolveReport> {
    let method = match options.choice {
        SolverChoice::Auto => select_method(instance, options),
        SolverChoice::Oracle => Method::Oracle,
        SolverChoice::Complete => Method::Complete,
        SolverChoice::SimpleSort => Method::SimpleSort,
        SolverChoice::SociallyOptimal => Method::SociallyOptimal,
        SolverChoice::Tree => Method::Tree,
        SolverChoice::Kcore => Method::Kcore,
        SolverChoice::Heuristic => Method::Heuristic,
    };
    run(instance, method, options)
}

pub fn run(instance: &BnpgInstance, method: Method, options: &SolveOptions) -> Result<SolveReport> {
    match method {
        Method::Oracle => oracle::solve(instance, options.oracle_limit),
        Method::Complete => complete::solve_complete(instance),
        Method::SimpleSort => complete::simple_sort(instance),
        Method::SociallyOptimal => complete::socially_optimal_complete(instance),
        Method::Tree => tree::solve_tree_with(instance, options.allow_forest),
        Method::Kcore => kcore::solve_fully_homogeneous_convex(instance).map(|s| s.report),
        Method::Heuristic => heuristic::find_approx_psne(instance, &options.heuristic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Graph;
    use crate::report::Status;

    fn auto(instance: &BnpgInstance) -> Method {
        select_method(instance, &SolveOptions::default())
    }

    #[test]
    fn dispatch_order() {
        assert_eq!(auto(&fixtures::homogeneous_triangle()), Method::Complete);
        assert_eq!(auto(&fixtures::three_player_path()), Method::Tree);
        // K2 is both complete and a tree
        assert_eq!(auto(&fixtures::two_player_no_psne(1.0, 1.0, 0.5)), Method::Complete);

        let square = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let convex = BnpgInstance::fully_homogeneous(square.clone(), 1.5, &[0.0, 1.0, 3.0, 6.0]).unwrap();
        assert_eq!(auto(&convex), Method::Kcore);
        let linear = BnpgInstance::fully_homogeneous(square, 1.5, &[0.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(auto(&linear), Method::Oracle);
    }

    #[test]
    fn near_misses_are_not_misclassified() {
        // complete minus one edge
        let mut edges: Vec<_> = Graph::complete(5).edges().collect();
        edges.pop();
        let almost = fixtures::best_shot(Graph::from_edges(5, edges).unwrap(), 0.5);
        assert_eq!(auto(&almost), Method::Oracle);

        // tree plus one edge
        let cycle = fixtures::best_shot(
            Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
            0.5,
        );
        assert_eq!(auto(&cycle), Method::Oracle);

        // convex but with one cost off
        let square = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let costs = vec![1.5, 1.5, 1.5, 1.25];
        let uneven = BnpgInstance::homogeneous(square, costs, &[0.0, 1.0, 3.0, 6.0]).unwrap();
        assert_eq!(auto(&uneven), Method::Oracle);

        // forests go to the tree solver only when allowed
        let forest = fixtures::best_shot(Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap(), 0.5);
        assert_eq!(auto(&forest), Method::Tree);
        let strict = SolveOptions {
            allow_forest: false,
            ..Default::default()
        };
        assert_eq!(select_method(&forest, &strict), Method::Oracle);
    }

    #[test]
    fn large_games_fall_back_to_the_heuristic() {
        let options = SolveOptions {
            oracle_limit: 3,
            ..Default::default()
        };
        let cycle = fixtures::best_shot(
            Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
            0.5,
        );
        assert_eq!(select_method(&cycle, &options), Method::Heuristic);
        let report = solve(&cycle, &options).unwrap();
        assert_eq!(report.method, Method::Heuristic);
    }

    #[test]
    fn explicit_choices_respect_preconditions() {
        let path = fixtures::three_player_path();
        let forced = |choice| {
            solve(
                &path,
                &SolveOptions {
                    choice,
                    ..Default::default()
                },
            )
        };
        assert!(matches!(forced(SolverChoice::Complete), Err(Error::NotComplete)));
        assert!(forced(SolverChoice::Kcore).is_err());
        assert_eq!(forced(SolverChoice::Tree).unwrap().status, Status::NoPsne);
        assert_eq!(forced(SolverChoice::Oracle).unwrap().status, Status::NoPsne);
    }

    #[test]
    fn choice_names_round_trip() {
        for c in SolverChoice::ALL {
            assert_eq!(c.as_str().parse::<SolverChoice>().unwrap(), c);
        }
        assert!("fastest".parse::<SolverChoice>().is_err());
    }
}
