use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("exponent overflow in monomial product")]
    ExponentOverflow,
    #[error("order {order} is not below the field characteristic {characteristic}")]
    Characteristic { order: u64, characteristic: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degenerate line: the two points coincide")]
    DegenerateLine,
    #[error("reducible conic: the quadric restricted to the plane splits")]
    ReducibleConic,
    #[error("seed point is not on the curve")]
    SeedNotOnCurve,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("point is not in the affine image of the parametrization")]
    PointNotParametrized,
    #[error("parametrization is ramified at the requested parameter")]
    Ramified,
    #[error("irregular point: the gradients of the defining pair are dependent")]
    IrregularPoint,
    #[error("curves coincide, intersection is infinite")]
    InfiniteIntersection,
    #[error("duplicate curves {0} and {1} in configuration")]
    DuplicateCurves(usize, usize),
    #[error(
        "local dimension did not stabilise by truncation level {0}; point may not be isolated"
    )]
    NotIsolated(usize),
    #[error("candidate point is not a common zero of the system")]
    NotACommonZero,
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error("work limit exceeded: {0}")]
    WorkLimit(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
