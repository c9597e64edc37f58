use thiserror::Error;

/// Errors raised by the library.
///
/// Negative mathematical verdicts (not an isometry, no monomial equivalence,
/// a refuted decomposition) are ordinary return values, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus {modulus:?} is not an irreducible polynomial of degree {m} over GF({p})")]
    ReduciblePolynomial { p: u32, m: u32, modulus: Vec<u32> },
    #[error("field order {p}^{m} exceeds the bound {bound}")]
    OrderTooLarge { p: u32, m: u32, bound: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element index {index} does not belong to a field of order {q}")]
    FieldMismatch { index: u64, q: u32 },
    #[error("objects are defined over different fields")]
    DifferentFields,

    #[error("point space must contain at least one point")]
    EmptySpace,
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("measure of point {label:?} must be strictly positive")]
    NonPositiveMeasure { label: String },
    #[error("measures are too fine to share a common denominator")]
    MeasureOverflow,
    #[error("expected {expected} labels/measures, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("point sets belong to spaces of different size ({left} vs {right})")]
    SpaceMismatch { left: usize, right: usize },
    #[error("unknown point {0}")]
    UnknownPoint(String),

    #[error("row {row} has width {found}, expected {expected}")]
    WidthMismatch { row: usize, expected: usize, found: usize },
    #[error("all generator rows are zero")]
    ZeroSpace,
    #[error("every function vanishes at point {label:?}")]
    ZeroColumn { label: String },
    #[error("coefficient vector has length {found}, expected {expected}")]
    CoeffsMismatch { expected: usize, found: usize },
    #[error("vector is not a member of the function space")]
    NotInSpace,
    #[error("enumeration of {requested} items exceeds the bound {bound}")]
    EnumerationTooLarge { requested: u128, bound: u64 },
    #[error("ring of cozero sets exceeds {bound} members")]
    RingTooLarge { bound: usize },

    #[error("points {0} and {1} are not related")]
    NotRelated(usize, usize),
    #[error("points {0} and {1} are related")]
    PointsRelated(usize, usize),
    #[error("point set is not saturated")]
    NotSaturated,

    #[error("matrix shape {found:?} does not match ({rows}, {cols})", rows = expected.0, cols = expected.1)]
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("the functional at point {0} is zero")]
    ZeroFunctional(usize),
    #[error("not a monomial map: {0}")]
    NotMonomial(String),

    #[error("search space of {requested} candidates exceeds the bound {bound}")]
    SearchTooLarge { requested: u128, bound: u64 },
    #[error("measure is not uniform")]
    NonUniformMeasure,
    #[error("theorem violation (implementation bug): {0}")]
    TheoremViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
