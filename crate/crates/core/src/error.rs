use thiserror::Error;

use crate::holo::ComplexScalar;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("evaluation at or near a pole (z = {z})")]
    Pole { z: ComplexScalar },

    #[error("polynomial degree {degree} exceeds the supported maximum {max}")]
    Degree { degree: usize, max: usize },

    #[error("non-finite coefficient in input")]
    NonFinite,

    #[error("denominator is the zero polynomial")]
    ZeroDenominator,

    #[error("invalid Weierstrass data: {0}")]
    InvalidData(String),

    #[error("point {z} lies outside the closed domain")]
    Domain { z: ComplexScalar },

    #[error("stencil at cell ({i}, {j}) leaves the masked region")]
    Boundary { i: usize, j: usize },

    #[error("cell ({i}, {j}) is masked out or unreachable")]
    Unreachable { i: usize, j: usize },

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("point lies on the denominator hyperplane")]
    DivisionByIncidence,

    #[error("surface is flat (max |K| = {max_abs_k:e}); renormalization undefined")]
    FlatSurface { max_abs_k: f64 },

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("hyperplanes not in general position; dependent subset {witness:?}")]
    GeneralPosition { witness: Vec<usize> },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Hypothesis(_) | Error::FlatSurface { .. } | Error::GeneralPosition { .. } => 3,
            _ => 2,
        }
    }
}
