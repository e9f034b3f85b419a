use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("row budget t must be at least {min}, got {got}")]
    RowBudget { min: usize, got: usize },

    #[error("reference dimension l must be positive")]
    ZeroReference,

    #[error("partition {rows:?} does not sum to n = {n}")]
    PartitionSum { rows: Vec<u64>, n: u64 },

    #[error("partition rows {0:?} are not non-increasing")]
    PartitionOrder(Vec<u64>),

    #[error("distribution has {got} weights but decomposition has {expected} blocks")]
    DistributionLength { expected: usize, got: usize },

    #[error("distribution is not normalized (sum = {0})")]
    Unnormalized(String),

    #[error("negative probability or eigenvalue {0}")]
    Negative(String),

    #[error("parameter {name} = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },

    #[error("n/(a*t) = {0} is not a positive integer")]
    NonIntegerGap(String),

    #[error("least-squares fit needs at least 3 points with distinct n, got {0}")]
    TooFewPoints(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("operator is not a density matrix: {0}")]
    InvalidDensity(String),

    #[error("oracle cap exceeded: {0}")]
    Cap(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("bisection failed: {0}")]
    Bisection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
