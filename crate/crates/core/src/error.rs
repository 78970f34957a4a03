use std::fmt;

/// A broken invariant found while validating a graph or game.
///
/// Player indices are stored 0-based and displayed 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EmptyGame,
    SelfLoop { player: usize },
    NeighborOutOfRange { player: usize, neighbor: usize },
    DuplicateEdge { a: usize, b: usize },
    /// `b` lists `a`'s edge missing: `b ∈ N(a)` but `a ∉ N(b)`.
    Asymmetric { a: usize, b: usize },
    CostCount { expected: usize, found: usize },
    TableCount { expected: usize, found: usize },
    TableLength { player: usize, expected: usize, found: usize },
    NonFiniteCost { player: usize },
    NonFiniteTable { player: usize, index: usize },
    /// `g(index) < g(index - 1)`.
    NonMonotone { player: usize, index: usize },
    HomogeneityMismatch { player: usize },
    CostMismatch { player: usize },
}

impl Violation {
    /// The player the violation is attributed to, if any.
    pub fn player(&self) -> Option<usize> {
        match *self {
            Violation::SelfLoop { player }
            | Violation::NeighborOutOfRange { player, .. }
            | Violation::TableLength { player, .. }
            | Violation::NonFiniteCost { player }
            | Violation::NonFiniteTable { player, .. }
            | Violation::NonMonotone { player, .. }
            | Violation::HomogeneityMismatch { player }
            | Violation::CostMismatch { player } => Some(player),
            Violation::DuplicateEdge { a, .. } | Violation::Asymmetric { a, .. } => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::EmptyGame => write!(f, "game has no players"),
            Violation::SelfLoop { player } => write!(f, "self-loop at player {}", player + 1),
            Violation::NeighborOutOfRange { player, neighbor } => write!(
                f,
                "player {} lists out-of-range neighbor {}",
                player + 1,
                neighbor + 1
            ),
            Violation::DuplicateEdge { a, b } => {
                write!(f, "duplicate edge ({}, {})", a + 1, b + 1)
            }
            Violation::Asymmetric { a, b } => write!(
                f,
                "asymmetric adjacency: {} is a neighbor of {} but not vice versa",
                b + 1,
                a + 1
            ),
            Violation::CostCount { expected, found } => {
                write!(f, "expected {expected} costs, found {found}")
            }
            Violation::TableCount { expected, found } => {
                write!(f, "expected {expected} externality tables, found {found}")
            }
            Violation::TableLength {
                player,
                expected,
                found,
            } => write!(
                f,
                "table of player {} has length {found}, expected degree + 2 = {expected}",
                player + 1
            ),
            Violation::NonFiniteCost { player } => {
                write!(f, "cost of player {} is not finite", player + 1)
            }
            Violation::NonFiniteTable { player, index } => write!(
                f,
                "table of player {} has a non-finite entry at index {index}",
                player + 1
            ),
            Violation::NonMonotone { player, index } => write!(
                f,
                "table of player {} decreases at index {index} (monotonicity violation)",
                player + 1
            ),
            Violation::HomogeneityMismatch { player } => write!(
                f,
                "declared homogeneous, but the table of player {} differs from player 1's",
                player + 1
            ),
            Violation::CostMismatch { player } => write!(
                f,
                "declared fully homogeneous, but the cost of player {} differs from player 1's",
                player + 1
            ),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("player {player} out of range for a game with {n} players")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("profile has length {found}, game has {expected} players")]
    ProfileLength { expected: usize, found: usize },
    #[error("count {t} out of range for player {player} (maximum {max})")]
    CountOutOfRange { player: usize, t: usize, max: usize },
    #[error("invalid profile string: {0}")]
    ProfileParse(String),
    #[error("invalid game: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("graph is not complete")]
    NotComplete,
    #[error("graph is not a tree: {0}")]
    NotTree(String),
    #[error("game is not homogeneous")]
    NotHomogeneous,
    #[error("game is not fully homogeneous")]
    NotFullyHomogeneous,
    #[error("externality differences are not strictly increasing")]
    NotStrictlyConvex,
    #[error("k = {k} out of range (need 0 < k < {n})")]
    KOutOfRange { k: usize, n: usize },
    #[error("instance has {n} players, above the enumeration limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{}", format_load(*.line, .message))]
    Load { line: Option<usize>, message: String },
    #[error("table for player {0} is missing an entry required by its parent")]
    TreeInconsistency(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn format_load(line: Option<usize>, message: &str) -> String {
    match line {
        Some(line) => format!("line {line}: {message}"),
        None => message.to_string(),
    }
}
