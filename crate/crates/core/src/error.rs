use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("distribution is not normalized (sum = {sum})")]
    Unnormalized { sum: f64 },

    #[error("distribution has a negative weight {weight} at index {index}")]
    NegativeWeight { index: usize, weight: f64 },

    #[error("infeasible attack: {coefficient} = {value} is negative")]
    InfeasibleAttack { coefficient: &'static str, value: f64 },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("not a density operator: {0}")]
    NotDensityOperator(String),

    #[error("dimension {dim} exceeds the cap {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("block index subsets overlap at basis index {0}")]
    OverlappingBlocks(usize),

    #[error("malformed announcement: {0}")]
    MalformedAnnouncement(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
