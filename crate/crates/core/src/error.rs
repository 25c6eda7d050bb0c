use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown function identifier `{0}`")]
    UnknownFunction(String),

    #[error("function `{function}` does not support {operation}")]
    Unsupported {
        function: &'static str,
        operation: &'static str,
    },

    #[error("mapping size is zero")]
    ZeroMapping,

    #[error("series needs at least one term")]
    InvalidTermCount,

    #[error("value {0} is outside [-1, 1]")]
    OutOfRange(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid BBS modulus: {0}")]
    InvalidModulus(String),

    #[error("invalid BBS seed {seed} for modulus {modulus}")]
    InvalidSeed { seed: u64, modulus: u64 },

    #[error("table of {entries} entries exceeds the feasibility limit of {limit}")]
    InfeasibleTable { entries: u128, limit: u128 },

    #[error("no entry matches the requested value")]
    NotFound,

    #[error("target {target} is outside the image of the bracket")]
    NotBracketed { target: f64 },

    #[error("target {target} lies between grid points and matches none within tolerance")]
    NoGridMatch { target: f64 },

    #[error("function is not monotone on the bracket near x = {at}")]
    NotMonotone { at: f64 },

    #[error("invalid bracket: {0}")]
    InvalidBracket(String),

    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("tour visits city {city} but the instance has {n} cities")]
    DimensionMismatch { city: usize, n: usize },

    #[error("{n} cities is above the exhaustive-search guard of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid flow graph: {0}")]
    InvalidGraph(String),

    #[error("graph already has the exit -> entry back edge")]
    AlreadyAugmented,

    #[error("graph has not been augmented with the exit -> entry back edge")]
    NotAugmented,

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("diamond depth {depth} exceeds the limit of {limit}")]
    DepthTooLarge { depth: usize, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
