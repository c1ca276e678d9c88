use core::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the documented domain of an operation.
    Domain(&'static str),
    /// Tail-integral evaluation requested at order ν = −1/2, where the
    /// identity's divisor 2ν + 1 vanishes.
    UnsupportedOrder,
    /// Dimensions of two inputs do not agree.
    DimensionMismatch { expected: usize, got: usize },
    /// The smallest Gram eigenvalue is below `rank_tol` times the largest,
    /// so the input matrix does not have full column rank numerically.
    RankDeficient { min_eig: f64, max_eig: f64 },
    /// The predicted or actual enumeration size exceeded the ceiling.
    CountCeiling { estimate: f64, ceiling: u64 },
    /// The brute-force scan box does not cover the query ball; `required`
    /// is the minimal sufficient box radius.
    BoxTooSmall { required: i64 },
    /// No nonzero lattice vector was found within the search ceiling.
    ShortestVectorNotFound { ceiling: f64 },
    /// The computed bound denominator was not positive. The bound factor is
    /// provably positive, so this indicates a numerical failure, not a
    /// valid state.
    NonpositiveDenominator { denominator: f64 },
    /// The inequality's hypothesis δ·|A| ≤ 1 does not hold.
    HypothesisViolation { delta_times_norm: f64 },
    /// The test family's bandwidth `c` violates `c·√N ≤ δ`, so its
    /// transform is not supported inside the δ-ball.
    SupportViolation { bandwidth_sqrt_n: f64, delta: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::UnsupportedOrder => {
                write!(f, "tail integral is unsupported at order nu = -1/2 (2nu + 1 = 0)")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::RankDeficient { min_eig, max_eig } => write!(
                f,
                "matrix is numerically rank deficient (min eigenvalue {min_eig:e}, max {max_eig:e})"
            ),
            Error::CountCeiling { estimate, ceiling } => write!(
                f,
                "predicted point count {estimate:e} exceeds the enumeration ceiling {ceiling}"
            ),
            Error::BoxTooSmall { required } => {
                write!(f, "scan box too small; box radius of at least {required} is required")
            }
            Error::ShortestVectorNotFound { ceiling } => {
                write!(f, "no nonzero lattice vector of length <= {ceiling} found")
            }
            Error::NonpositiveDenominator { denominator } => {
                write!(f, "bound denominator {denominator:e} is not positive")
            }
            Error::HypothesisViolation { delta_times_norm } => write!(
                f,
                "hypothesis violated: delta * |A| = {delta_times_norm} exceeds 1"
            ),
            Error::SupportViolation { bandwidth_sqrt_n, delta } => write!(
                f,
                "bandwidth * sqrt(N) = {bandwidth_sqrt_n} exceeds delta = {delta}; \
                 transform not supported in the delta-ball"
            ),
        }
    }
}

impl core::error::Error for Error {}
