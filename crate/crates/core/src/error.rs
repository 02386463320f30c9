use core::fmt;

/// Errors raised by the analytic and construction routines of this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A series was built from an empty coefficient list.
    EmptySeries,
    /// A series coefficient was NaN or infinite.
    NonFiniteCoefficient { index: usize },
    /// Binary series operation on operands of different order.
    OrderMismatch { left: usize, right: usize },
    /// Division by a series whose constant term is zero.
    NonInvertibleSeries,
    /// Composition with an inner series whose constant term is nonzero.
    NonZeroInnerConstant,
    /// Reversion needs `g(0) = 0` and `g'(0) != 0`.
    NotReversible,
    /// A parameter is outside the domain of the operation.
    InvalidParameter(&'static str),
    /// The ensemble parameters lie outside the region where the degree
    /// distributions are known to be non-negative.
    OutsideProvenRegion { family: &'static str, p: f64 },
    /// A retained degree-distribution coefficient is negative.
    NegativeCoefficient { degree: usize, value: f64 },
    /// No truncation degree within the computed order meets the tail threshold.
    TruncationOrderTooSmall { order: usize, tail: f64, threshold: f64 },
    /// The closed-form evaluation left an imaginary residual (wrong branch).
    BranchSelection { x: f64, imaginary: f64 },
    /// Degree profile cannot be realised as a graph.
    InfeasibleProfile(&'static str),
    /// Edge post-processing did not remove every multi-edge and 4-cycle.
    ConstructionFailure { rounds: usize, remaining: usize },
    /// Encoding input violates a graph constraint.
    Encode(&'static str),
    /// Density evolution found no channel parameter with decoding success.
    NoSuccessRegion,
    /// Adaptive quadrature hit its recursion limit.
    QuadratureDiverged,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptySeries => write!(f, "series must have at least one coefficient"),
            Error::NonFiniteCoefficient { index } => {
                write!(f, "coefficient {index} is not finite")
            }
            Error::OrderMismatch { left, right } => {
                write!(f, "series order mismatch: {left} vs {right}")
            }
            Error::NonInvertibleSeries => {
                write!(f, "division by a series with zero constant term")
            }
            Error::NonZeroInnerConstant => {
                write!(f, "inner series of a composition must have zero constant term")
            }
            Error::NotReversible => write!(f, "series reversion needs g(0) = 0 and g'(0) != 0"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::OutsideProvenRegion { family, p } => write!(
                f,
                "p = {p} is outside the non-negativity region of the {family} ensemble"
            ),
            Error::NegativeCoefficient { degree, value } => {
                write!(f, "negative coefficient {value:e} at degree {degree}")
            }
            Error::TruncationOrderTooSmall { order, tail, threshold } => write!(
                f,
                "series order {order} too small: tail {tail:e} does not drop below {threshold:e}"
            ),
            Error::BranchSelection { x, imaginary } => write!(
                f,
                "closed-form evaluation at x = {x} left imaginary residual {imaginary:e}"
            ),
            Error::InfeasibleProfile(what) => write!(f, "infeasible degree profile: {what}"),
            Error::ConstructionFailure { rounds, remaining } => write!(
                f,
                "post-processing left {remaining} bad edges after {rounds} rounds"
            ),
            Error::Encode(what) => write!(f, "cannot encode: {what}"),
            Error::NoSuccessRegion => write!(f, "density evolution fails for every channel parameter"),
            Error::QuadratureDiverged => write!(f, "adaptive quadrature did not converge"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
