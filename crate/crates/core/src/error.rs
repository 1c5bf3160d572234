use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse group spec `{0}`: {1}")]
    GroupSpec(String, String),

    #[error("unsupported root system {kind}{rank}")]
    UnsupportedType { kind: char, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("{what} has {size} elements, above the cap of {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("sparse division left a nonzero remainder")]
    NonzeroRemainder,

    #[error("input is not W-antisymmetric (deviation at weight {0:?})")]
    NotAntisymmetric(Vec<i64>),

    #[error("window does not contain a full Weyl orbit")]
    WindowTooSmall,

    #[error("windows differ")]
    WindowMismatch,

    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("series has a non-invertible constant term")]
    NotInvertible,

    #[error("symbolic support exceeded cap of {0} terms")]
    SupportOverflow(usize),

    #[error("{0} is not a regular element of T_l")]
    NotRegular(String),

    #[error("element {0} is not in T_l")]
    NotInTLevel(String),

    #[error("regular orbit of size {size} is not free (|W| = {weyl})")]
    NonFreeOrbit { size: usize, weyl: usize },

    #[error("denominator factor {0:?} vanishes at the base point")]
    Pole(Vec<i64>),

    #[error("normal weight {0:?} is not polarized by beta")]
    Unpolarized(Vec<i64>),

    #[error("contribution family is not admissible: {0}")]
    NonAdmissible(String),

    #[error("vector field is not W-invariant (deviation {0:e})")]
    NotWeylInvariant(f64),

    #[error("result {value} is not a real integer within tolerance")]
    NotIntegral { value: String },

    #[error("{0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
