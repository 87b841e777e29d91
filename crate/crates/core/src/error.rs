use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // arithmetic
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("series with zero constant term is not invertible")]
    NonUnit,
    #[error("implicit lift: starting value is not a root (F(u0, 0) = {0})")]
    NotARoot(String),
    #[error("implicit lift: dF/du vanishes at the starting point")]
    NonRegularPoint,
    #[error("dimension mismatch: {0}")]
    Shape(String),

    // curve construction
    #[error("polynomial is not squarefree")]
    NonSquarefree,
    #[error("coordinate polynomials share a common factor of degree {0}")]
    CommonFactor(usize),
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("ambient dimension mismatch: {0}")]
    AmbientMismatch(String),
    #[error("polynomial does not split over the rationals")]
    NotSplit,

    // points and jets
    #[error("point is not on the curve: {0}")]
    PointNotOnCurve(String),
    #[error("singular point: {0}")]
    SingularPoint(String),
    #[error("unsupported multiplicity {mult} (limit {limit})")]
    UnsupportedMultiplicity { mult: u32, limit: u32 },
    #[error("linear system not available on this curve: {0}")]
    UnsupportedSystem(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("no rational point found after {0} candidates")]
    NoRationalPointFound(usize),

    // terracini
    #[error("input divisor is not reduced")]
    NonReducedInput,
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),

    // witnesses
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("degenerate image: {0}")]
    DegenerateImage(String),
    #[error("degree {0} is odd")]
    OddDegree(u32),
    #[error("{0} is not a square in Q")]
    NotASquare(String),
    #[error("curve is singular (or smoothness could not be certified)")]
    SingularCurve,
    #[error("elimination degenerate after {0} coordinate changes")]
    EliminationDegenerate(usize),
    #[error("witness self-check failed: {0}")]
    SelfCheck(String),

    // searchlab
    #[error("not a space curve in P^3: {0}")]
    NotSpaceCurve(String),

    // parsing
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
