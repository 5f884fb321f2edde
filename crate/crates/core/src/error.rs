use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The (letter, rank) pair names no irreducible crystallographic root system.
    #[error("no irreducible root system of type {letter}{rank}")]
    Classification { letter: String, rank: usize },

    #[error("cannot parse root system specifier {0:?} (expected e.g. \"A2\", \"B3\", \"G2\")")]
    BadSpecifier(String),

    #[error("cannot parse weight {0:?} (expected comma-separated integers)")]
    BadWeight(String),

    #[error("weight has {got} coordinates but the system has rank {rank}")]
    RankMismatch { rank: usize, got: usize },

    #[error("vector {0:?} is not a root of this system")]
    NotARoot(Vec<i64>),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("parameters are not good (k_short = 0 but k_long > 0); pass force to run without confluence guarantees")]
    NotGood,

    #[error("operation requires {0} firing")]
    WrongKind(&'static str),

    #[error("point cap exceeded: more than {cap} points")]
    ResourceCap { cap: usize },

    #[error("firing step budget of {budget} exhausted from {start}")]
    StepBudget { budget: u64, start: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("fit inconsistent: {0}")]
    FitInconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
