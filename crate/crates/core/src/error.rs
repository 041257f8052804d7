use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid parameters: {0}")]
    Validation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no sign change of f on [{lo}, {hi}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    BracketFailure { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("degenerate coupling: |J'(k)| = {0:e} at the eigenvalue")]
    DegenerateCoupling(f64),
    #[error("need at least {needed} records, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("coincident points in kernel evaluation")]
    CoincidentPoints,
    #[error("assembly error: {0}")]
    Assembly(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
