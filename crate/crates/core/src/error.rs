use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector is a multiple of the all-one vector")]
    AllOnesMultiple,
    #[error("rays are linearly dependent")]
    DependentRays,
    #[error("enumeration needs {needed} subsets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("empty set or full ground set has no ray")]
    TopOrBottom,
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("no common maximal interval contains {0} and {1}")]
    NotComparableInterval(String, String),
    #[error("no positive wall relation: {0}")]
    GeometryViolation(String),
    #[error("missing value for label {0:?}")]
    MissingLabel(String),
    #[error("first supporting facets at vertex {0} are dependent")]
    DegenerateP0(String),
    #[error("polytope is empty")]
    EmptyQ,
    #[error("sequence is not strictly increasing")]
    NotIncreasing,
    #[error("(M, N) is not an appropriate choice: fails for tau = {tau:?} at i = {index}")]
    NotAppropriate { tau: Vec<usize>, index: usize },
    #[error("vertices do not share a coordinate sum")]
    NotConstantSum,
    #[error("chiseling distance too large: {0}")]
    EpsTooLarge(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
