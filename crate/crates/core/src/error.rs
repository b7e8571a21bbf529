//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("expected a monic polynomial, got {0}")]
    NotMonic(String),
    #[error("expected an n-th-power-free polynomial, got {0}")]
    NotPowerfree(String),
    #[error("expected an irreducible polynomial, got {0}")]
    NotIrreducible(String),
    #[error("division by zero in the scalar ring")]
    DivisionByZero,
    #[error("scalar is not invertible: {0}")]
    NotInvertible(String),
    #[error("series expansion requires an invertible constant term")]
    NonUnitConstantTerm,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
