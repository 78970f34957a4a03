//! Binary networked public goods games: representation, exact solvers for
//! structured graphs, a best-response heuristic for everything else, and
//! seeded instance generators.

pub mod complete;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod format;
pub mod game;
pub mod gen;
pub mod graph;
pub mod heuristic;
pub mod kcore;
pub mod oracle;
pub mod report;
pub mod solve;
pub mod tree;

pub use error::{Error, Result, Violation};
pub use game::{ActionProfile, BnpgInstance, ExternalityTable, Homogeneity};
pub use graph::Graph;
pub use heuristic::HeuristicParams;
pub use report::{Diagnostics, Method, SolveReport, Status};
pub use solve::{solve, SolveOptions, SolverChoice};
