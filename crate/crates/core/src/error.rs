use crate::algebra::{Flavor, Mode};

/// Errors surfaced by the exact-arithmetic layers and the representation
/// machinery built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero polynomial has no root set")]
    ZeroPolynomialRoots,

    #[error("constant polynomial has no root set")]
    ConstantPolynomialRoots,

    #[error("integer too large for rational root candidate search")]
    RootSearchOverflow,

    #[error("q-series exponent {0} has denominator not dividing 8")]
    ExponentDenominator(String),

    #[error("negative truncation order {0}")]
    NegativeOrder(String),

    #[error("mode {mode} is not admitted by the {flavor} algebra")]
    FlavorMismatch { flavor: Flavor, mode: Mode },

    #[error("vector belongs to a different module (flavor or weights differ)")]
    ModuleMismatch,

    #[error("level {0}/2 is invalid here (negative, or fractional for Virasoro)")]
    BadLevel(i64),

    #[error("invalid label {0} for this operation")]
    BadLabel(i64),

    #[error("Kac curve parameter t must be nonzero")]
    ZeroKacParameter,

    #[error("NS Kac labels require p = q mod 2, got p={0}, q={1}")]
    KacParity(u32, u32),

    #[error("word contains a non-negative mode; only creation modes project")]
    PositiveModeInProjection,

    #[error("word contains a G-mode; Virasoro projection takes L-modes only")]
    GModeInVirasoroProjection,

    #[error("element is not level-homogeneous")]
    Inhomogeneous,

    #[error("mixed algebras in representation-ring operation")]
    MixedAlgebras,

    #[error("weight multiset is not a valid module character: {0}")]
    BadWeightMultiset(String),

    #[error("fusion table is incomplete: missing product ({0},{1})")]
    IncompleteTable(u32, u32),

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
