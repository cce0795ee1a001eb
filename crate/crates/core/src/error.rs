use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::Signature;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failures raised by the lattice routines.
///
/// Everything except [`Error::Internal`] is a violated precondition on the
/// caller's input; `Internal` means an invariant the algorithms themselves
/// maintain was found broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("empty input where at least one vector is required")]
    Empty,
    #[error("vectors are linearly dependent (rank {rank} < {count})")]
    RankDeficient { rank: usize, count: usize },
    #[error("sublattice has rank {rank} < {ambient}; its index is infinite")]
    InfiniteIndex { rank: usize, ambient: usize },
    #[error("sublattice is not primitive in the ambient lattice")]
    NotPrimitive,
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not primitive (content {content})")]
    ImprimitiveVector { content: BigInt },
    #[error("vector is not isotropic (square {square})")]
    NotIsotropic { square: BigInt },
    #[error("expected signature {expected}, found {found}")]
    SignatureMismatch { expected: Signature, found: Signature },
    #[error("lattice is not negative definite (signature {found})")]
    NotNegativeDefinite { found: Signature },
    #[error("vector {index} is not orthogonal to the isotropic vector")]
    NotOrthogonal { index: usize },
    #[error("sublattices are not mutually orthogonal")]
    NotOrthogonalDecomposition,
    #[error("hypothesis n - rank W > 2 fails (n = {n}, rank W = {rank_w})")]
    CorankTooSmall { n: usize, rank_w: usize },
    #[error("gamma vector has length {found}, expected {expected}")]
    GammaLength { expected: usize, found: usize },
    #[error("gamma entry {index} must vanish on the W block")]
    GammaOnW { index: usize },
    #[error("gamma entry {index} = {value} is not divisible by d = {d}; multiply gamma by d")]
    GammaNotDivisible { index: usize, value: BigInt, d: BigInt },
    #[error("matrix does not preserve the bilinear form")]
    NotAnIsometry,
    #[error("map does not send the sublattice into itself")]
    SublatticeNotPreserved,
    #[error("isometry does not fix the isotropic vector")]
    NotFixed,
    #[error("vector has non-positive square {square}")]
    NotPositive { square: BigInt },
    #[error("vector has non-negative square {square}")]
    NotNegative { square: BigInt },
    #[error("division by a vector of square zero")]
    IsotropicDivisor,
    #[error("vector is outside the positive cone")]
    OutsidePositiveCone,
    #[error("vector is not nef with respect to the wall system")]
    NotNef,
    #[error("invalid square range: need qmin < qmax <= 0, got ({qmin}, {qmax})")]
    InvalidQuery { qmin: BigInt, qmax: BigInt },
    #[error("fiber configuration gives negative rank {value}")]
    InconsistentFibers { value: i64 },
    #[error("picard number {0} is below 2")]
    PicardTooSmall(usize),
    #[error("fiber component count must be positive")]
    ZeroFiberComponents,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

impl Error {
    /// True when the error signals a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
