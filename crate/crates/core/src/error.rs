use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("{what}: got {got}")]
    InvalidIndex { what: &'static str, got: i64 },
    #[error("g defined only for multiples of p (got n = {n}, p = {p})")]
    NotMultipleOfP { n: u64, p: u64 },
    #[error("count_Y requires even b with 0 < b < p^e/2 (got b = {b}, p^e = {pe})")]
    InvalidOffset { b: u64, pe: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("closed form requires Z2 membership (i = {0})")]
    NotInZ2(u64),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn bad_index(what: &'static str, got: i64) -> Error {
    Error::InvalidIndex { what, got }
}
