use thiserror::Error;

/// Errors across the workbench. Every failure names the violated rule and
/// the offending data; nothing here panics on bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot invert zero")]
    DivisionByZero,

    #[error("scalar `{text}` does not have modulus one (|z|^2 = {norm_sq_text})")]
    NotUnitModulus { text: String, norm_sq_text: String },

    #[error("invalid scalar literal at byte {offset}: {message}")]
    ScalarParse { offset: usize, message: String },

    #[error("a dynamical system needs at least one point")]
    EmptySystem,

    #[error("sigma hits {image} twice (positions {first} and {second}), so it is not a bijection")]
    NotBijective {
        image: usize,
        first: usize,
        second: usize,
    },

    #[error("sigma sends {position} to {image}, which is out of range for {size} points")]
    ImageOutOfRange {
        position: usize,
        image: usize,
        size: usize,
    },

    #[error("periodicity sets take a nonzero exponent")]
    ZeroExponent,

    #[error("point {point} is out of range for {size} points")]
    PointOutOfRange { point: usize, size: usize },

    #[error("function has {actual} values but the system has {expected} points")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("operands live over different systems ({left} points vs {right})")]
    SystemMismatch { left: usize, right: usize },

    #[error("degree window {lo}:{hi} is inverted")]
    InvertedWindow { lo: i64, hi: i64 },

    #[error("element support reaches degree {degree}, outside the window {lo}:{hi}")]
    OutsideWindow { degree: i64, lo: i64, hi: i64 },

    #[error("degree overflow past {limit}")]
    DegreeOverflow { limit: i64 },

    #[error("ideal generation needs at least one generator")]
    NoGenerators,

    #[error("generator {index} is zero")]
    ZeroGenerator { index: usize },

    #[error("window certificate {index} does not reproduce its basis element")]
    BadWindowCertificate { index: usize },

    #[error("cannot reduce the zero element")]
    ZeroElement,

    #[error("certificate replay failed at step {step}: {reason}")]
    ReplayFailed { step: usize, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cannot evaluate a Laurent polynomial at zero")]
    EvalAtZero,

    #[error("root ideals need at least one root, all nonzero")]
    BadRootIdeal,

    #[error("trichotomy witnesses need a nonconstant polynomial")]
    ConstantPolynomial,

    #[error("element is not supported on a single point's functions")]
    NotOnePoint,

    #[error("structure constant check failed: {0}")]
    AlgebraCheck(String),

    #[error("not semisimple: the trace form is degenerate")]
    NotSemisimple,

    #[error("not split over the scalar field: no separating element with distinct scalar eigenvalues within the search budget")]
    NotSplit,

    #[error("character base point {point} is not fixed by sigma")]
    NotFixedPoint { point: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
