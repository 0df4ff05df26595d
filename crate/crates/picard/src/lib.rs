//! Exact-arithmetic calculus for rational divisor classes on the moduli
//! spaces of curves `Mbar_g`, `Mbar_{g,n}` and the universal symmetric
//! products `Cbar_{g,n}`.
//!
//! The crate provides the canonical Picard-group bases of these spaces,
//! sparse divisor-class vectors with exact rational (optionally
//! parameter-affine) coefficients, the pullback/pushforward homomorphisms
//! between the spaces, a catalog of named classes and test curves, and a
//! certificate engine (slopes, interpolation ledgers, uniruledness and
//! rigidity criteria, Reid-Tai ages) with a machine-readable verification
//! suite surfaced through the `picard` binary.

pub mod certify;
pub mod classes;
pub mod curves;
pub mod expr;
pub mod maps;
pub mod registry;
pub mod spaces;
pub mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for integers.
pub fn int(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

/// Binomial coefficient C(n, 2) for the boundary-coefficient closed forms.
pub fn choose2(n: i64) -> Rat {
    int(n * (n - 1) / 2)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("index out of range: i = {i} on genus {g}")]
    IndexOutOfRange { i: i64, g: u32 },
    #[error("forbidden boundary: canonical pair (0, T) with #T = {card} < 2")]
    ForbiddenBoundary { card: usize },
    #[error("space mismatch: expected {expected}, got {got}")]
    SpaceMismatch { expected: String, got: String },
    #[error("scalar is not numeric: {0}")]
    NonNumericScalar(String),
    #[error("unknown pairing entry: curve pairing against {gen} is not recorded")]
    UnknownPairingEntry { gen: String },
    #[error("basis element {gen} does not belong to {space}")]
    InvalidBasisElement { gen: String, space: String },
    #[error("label collision in kept-label list")]
    LabelCollision,
    #[error("curve parameter out of the entry's validity range: {0}")]
    RangeViolation(String),
    #[error("partial class lacks the required asserted support: missing {gen}")]
    InsufficientSupport { gen: String },
    #[error("residual escapes allowed support on: {offenders}")]
    ResidualEscapesSupport { offenders: String },
    #[error("genus congruence violated: g = {g} is not 1 mod 3")]
    GenusCongruence { g: u32 },
    #[error("Reid-Tai exponent out of [0, 1): {0}")]
    ExponentOutOfRange(String),
    #[error("slope undefined: lambda coefficient {0} is not positive")]
    UndefinedSlope(String),
    #[error("parameter {0} has no numeric value or declared lower bound")]
    UnboundParameter(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
