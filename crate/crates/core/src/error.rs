use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {0} occurs more than once")]
    RepeatedPoint(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle notation: {0}")]
    MalformedSyntax(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("tuple length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("group order exceeds cap {cap}")]
    GroupTooLarge { cap: u128 },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("prime {0} does not divide the group order")]
    PrimeDoesNotDivide(u64),
    #[error("group does not act as a Frobenius group: {0}")]
    NotFrobenius(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("condition failed: {0}")]
    ConditionFailed(String),
    #[error("input group is abelian")]
    AbelianInput,
    #[error("no noncommuting pair with an element of order > 2")]
    NoValidPair,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("no anisotropic binary form over F_{0}")]
    NoAnisotropicForm(u64),
    #[error("vertex {vertex} out of range for {vertices} vertices")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("arity {arity} exceeds cap {cap}")]
    ArityTooLarge { arity: usize, cap: usize },
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
