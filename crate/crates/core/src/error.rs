use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the list is empty")]
    EmptyList,

    #[error("empty item label")]
    EmptyLabel,

    #[error("duplicate item label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown item `{0}`")]
    UnknownLabel(String),

    #[error("item index {index} is not in a list of {len} items")]
    UnknownItem { index: usize, len: usize },

    #[error("position {position} is outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("request index {index} is outside 1..={len}")]
    RequestIndexOutOfRange { index: usize, len: usize },

    #[error("orderings over different universes ({left} vs {right} items)")]
    UniverseMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("subset member {member} does not precede item {item}")]
    SubsetNotPreceding { member: usize, item: usize },

    #[error("rank {rank} is out of range for {len} items")]
    RankOutOfRange { rank: usize, len: usize },

    #[error("schedule has {targets} targets for {requests} requests")]
    LengthMismatch { targets: usize, requests: usize },

    #[error("list size {len} exceeds the configured limit of {max}")]
    SizeLimit { len: usize, max: usize },

    #[error("sequence length {len} exceeds the configured limit of {max}")]
    SequenceLimit { len: usize, max: usize },

    #[error("unknown online policy `{0}`")]
    UnknownPolicy(String),

    #[error("invalid workload: {0}")]
    InvalidWorkload(String),

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Guard violations (list or sequence too large for the requested solver).
    pub fn is_config(&self) -> bool {
        matches!(self, Error::SizeLimit { .. } | Error::SequenceLimit { .. })
    }

    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Usage(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
