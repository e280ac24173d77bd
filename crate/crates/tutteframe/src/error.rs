use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid composition: {0}")]
    InvalidComposition(String),
    #[error("size mismatch: {0}")]
    Mismatch(String),
    #[error("shift vector {0:?} lies outside the box")]
    OutsideBox(Vec<usize>),
    #[error("index out of range: {0}")]
    Range(String),
    #[error("{what} exceeds cap ({size} > {cap}); {hint}")]
    Cap {
        what: &'static str,
        size: usize,
        cap: usize,
        hint: &'static str,
    },
    #[error("polynomial is not divisible by xy - x - y (remainder {0})")]
    NotDivisible(String),
    #[error("residual after peeling flat numbers: {0}")]
    Residual(String),
    #[error("non-integral aggregate {value} at {at}")]
    NonIntegral { at: String, value: String },
    #[error("matroid has loops: {0}")]
    Loops(String),
    #[error("calibration mismatch on {0}")]
    Calibration(String),
    #[error("x-degree {0} exceeds rank {1}")]
    Degree(u32, usize),
}

impl Error {
    /// True for errors that mean "too big for this route".
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Cap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
