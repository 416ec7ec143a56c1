use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("edge {from} -> {to} joins non-adjacent layers")]
    NonAdjacentLayers { from: u32, to: u32 },

    #[error("start node {0} is not in the first layer")]
    BadStart(u32),

    #[error("accept node {0} is not in the last layer")]
    BadAccept(u32),

    #[error("variable index {var} outside [1, {n}]")]
    VarOutOfRange { var: i64, n: usize },

    #[error("program has {size} edges, cap is {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("expected {expected} assignment bits, got {got}")]
    AssignmentLength { expected: usize, got: usize },

    #[error("truth table of 2^{n} entries exceeds budget {budget}")]
    Budget { n: usize, budget: usize },

    #[error("odd variable count {0}; halves must be equal")]
    OddVars(usize),

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("jump parameter mu={mu} outside [0, {q}]")]
    MuRange { mu: i64, q: i64 },

    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),

    #[error("index {index} outside [1, {max}]")]
    IndexRange { index: usize, max: usize },

    #[error("gadget contract violated on {0} pair(s)")]
    Contract(usize),

    #[error("program is outside the promise (PP_edit gap); refusing to decide")]
    PromiseViolated,

    #[error("invalid coarse alignment: {0}")]
    InvalidCoarse(String),

    #[error("coarse alignment contains {0} bad term(s)")]
    BadTerms(usize),

    #[error("invalid symbol block: {0}")]
    InvalidSymbol(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Stable snake_case tag for structured diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::NonAdjacentLayers { .. } => "non_adjacent_layers",
            Error::BadStart(_) => "bad_start",
            Error::BadAccept(_) => "bad_accept",
            Error::VarOutOfRange { .. } => "var_out_of_range",
            Error::SizeCap { .. } => "size_cap",
            Error::AssignmentLength { .. } => "assignment_length",
            Error::Budget { .. } => "budget",
            Error::OddVars(_) => "odd_vars",
            Error::Params(_) => "params",
            Error::InvalidPath(_) => "invalid_path",
            Error::MuRange { .. } => "mu_range",
            Error::TooLarge(_) => "too_large",
            Error::IndexRange { .. } => "index_range",
            Error::Contract(_) => "contract",
            Error::PromiseViolated => "promise_violated",
            Error::InvalidCoarse(_) => "invalid_coarse",
            Error::BadTerms(_) => "bad_terms",
            Error::InvalidSymbol(_) => "invalid_symbol",
            Error::Io(_) => "io",
        }
    }
}
