use thiserror::Error;

/// Errors surfaced by the library layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid dimensions must be at least 2x2, got {m}x{n}")]
    InvalidDims { m: u32, n: u32 },

    #[error("line coefficients (a1, a2) must not both be zero")]
    DegenerateLine,

    #[error("point ({x}, {y}) is outside the {m}x{n} grid")]
    PointOutsideGrid { x: i64, y: i64, m: u32, n: u32 },

    #[error("function is not a threshold function")]
    NotThreshold,

    #[error("function value at the origin must be 0")]
    OriginNotZero,

    #[error("{op} supports at most {max} grid points, got {got}")]
    TooLarge {
        op: &'static str,
        max: u64,
        got: u64,
    },

    #[error("gcd class q must be at least 1")]
    InvalidGcdClass,

    #[error("summation extents must be positive")]
    NonPositiveExtent,

    #[error("invalid hex encoding of a grid function: {0}")]
    BadHex(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
