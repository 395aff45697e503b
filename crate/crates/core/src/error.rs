use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("root of depth greater than {cap} required; rebuild the system with a larger depth cap")]
    RootDepthExceeded { cap: usize },

    #[error("element `{0}` is not a reflection")]
    NotAReflection(String),

    #[error("bond m({0},{1}) is infinite")]
    InfiniteBond(String, String),

    #[error("no join exists")]
    NoJoin,

    #[error("no join within length cap {0}")]
    NoJoinWithinCap(usize),

    #[error("join iteration cap of {0} exceeded")]
    IterationCapExceeded(usize),

    #[error("element of length {length} is outside the ball of radius {cap}")]
    OutsideBall { length: usize, cap: usize },

    #[error("an intermediate preclosure was truncated; fixpoint cannot be certified")]
    TruncationUnsound,

    #[error("no reflection connects `{0}` and `{1}`")]
    NoConnectingReflection(String, String),

    #[error("invalid twist descriptor: {0}")]
    InvalidTwist(String),

    #[error("system is not of type A")]
    NotTypeA,

    #[error("transposition ({0},{1}) is out of range")]
    TranspositionOutOfRange(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = CoxeterError> = std::result::Result<T, E>;
