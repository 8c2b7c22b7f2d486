use thiserror::Error;

/// Every failure the engine can report.
///
/// Player indices carried in variants are zero-based positions among the
/// regular players; rendered messages use one-based numbering.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational literal {0:?} (expected \"p/q\" or an integer)")]
    InvalidRational(String),
    #[error("prior does not sum to 1 (sum = {sum})")]
    PriorNotNormalized { sum: String },
    #[error("prior probability of type {ty:?} is negative")]
    NegativePrior { ty: String },
    #[error("partition of player {} does not partition the type space: {reason}", player + 1)]
    PartitionNotCovering { player: usize, reason: String },
    #[error("type {ty:?} desires unknown good {good:?}")]
    UnknownGood { ty: String, good: String },
    #[error("unknown or duplicate type identifier {0:?}")]
    UnknownType(String),
    #[error("duplicate good identifier {0:?}")]
    DuplicateGood(String),
    #[error("base value of player {} is {value}, outside [0, 1]", player + 1)]
    BaseValueOutOfRange { player: usize, value: String },
    #[error("game needs at least two regular players, found {0}")]
    TooFewPlayers(usize),
    #[error("expected {expected} base values, found {found}")]
    BaseValueCount { expected: usize, found: usize },
    #[error("game has no types or no goods")]
    EmptyGame,
    #[error("{field} has no entry for type {ty:?}")]
    MissingEntry { field: &'static str, ty: String },

    #[error("strategy of player {} has no action for cell {cell} / message {message:?}", player + 1)]
    ProfileIncomplete {
        player: usize,
        cell: usize,
        message: Option<usize>,
    },
    #[error("information set of player {} (cell {cell}, message {message:?}) has zero probability", player + 1)]
    UnreachableInformationSet {
        player: usize,
        cell: usize,
        message: Option<usize>,
    },
    #[error("profile covers {found} players but the game has {expected}")]
    PlayerCountMismatch { expected: usize, found: usize },
    #[error("variant {variant} does not apply: {reason}")]
    VariantMismatch { variant: String, reason: String },
    #[error("pure-strategy enumeration needs {needed} profiles, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("the unmediated game has no pure-strategy Bayesian Nash equilibrium")]
    NoPureBne,

    #[error("base values are infeasible: {}", violated.join("; "))]
    InfeasibleBaseValues { violated: Vec<String> },
    #[error("alpha_j = 1 leaves the mixing threshold undefined")]
    DegenerateAlpha,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("mediator has no entry for joint cell {0:?}")]
    MissingCell(Vec<usize>),
    #[error("mediator distribution for joint cell {cells:?} is invalid: {reason}")]
    InvalidMediator { cells: Vec<usize>, reason: String },
    #[error("supplied profile is not a Bayesian Nash equilibrium (max gain {max_gain})")]
    NotABne { max_gain: String },
    #[error("LP(v1, v2) is infeasible for v = ({v1}, {v2})")]
    LpInfeasible { v1: String, v2: String },

    #[error("scenario parameters outside the required regime: {0}")]
    RegimeViolated(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
