use thiserror::Error;

/// Per-player counts behind the equitability test: `(|O_i|, |X_-i \ O_-i|)`.
pub type Margins = Vec<(u128, u128)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed instance: {0}")]
    Malformed(String),

    #[error("{what} index {index} out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("empty desired set for player {player}")]
    EmptyDesiredSet { player: usize },

    #[error("negative promise value for player {player}")]
    NegativePromise { player: usize },

    #[error("infinite utility for player {player}")]
    InfiniteUtility { player: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("strategy {strategy} compared with itself for player {player}")]
    SelfComparison { player: usize, strategy: usize },

    #[error("strategy {strategy} of player {player} is undominated")]
    Undominated { player: usize, strategy: usize },

    #[error("game is not equitable for the desired region (margins {margins:?})")]
    NotEquitable { margins: Margins },

    #[error(
        "player {player} has undesired strategies but every opponent profile is desired; \
         no minimum-cost promise exists"
    )]
    DegenerateRegion { player: usize },

    #[error("promise is infinite on desired profile {profile:?} for player {player}")]
    InfiniteOnRegion { player: usize, profile: Vec<usize> },

    #[error("promise does not implement the desired region")]
    NotImplemented,

    #[error("region is not a promise-Nash equilibrium (player {player}, strategy {strategy})")]
    NotPne { player: usize, strategy: usize },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid exact cover: {0}")]
    InvalidCover(String),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid X3C instance: {0}")]
    InvalidX3c(String),

    #[error("sampler exhausted after {attempts} attempts")]
    SamplerExhausted { attempts: usize },

    #[error("decode failed: {0}")]
    Decode(String),

    #[error("oracle check failed: {0}")]
    OracleViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
