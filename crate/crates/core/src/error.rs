use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("capacities sum to {found} but the instance declares {expected} units")]
    CapacityMismatch { expected: usize, found: usize },

    #[error("duplicate patient `{0}`")]
    DuplicatePatient(String),

    #[error("duplicate category `{0}`")]
    DuplicateCategory(String),

    #[error("malformed priority order for category `{category}`: {reason}")]
    MalformedPriority { category: String, reason: String },

    #[error("unknown patient `{0}`")]
    UnknownPatient(String),

    #[error("unknown category `{0}`")]
    UnknownCategory(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid bipartite graph: {0}")]
    InvalidGraph(String),

    #[error("invalid cutoff vector: {0}")]
    InvalidCutoff(String),

    #[error("matching violates the {0} axiom")]
    AxiomViolation(&'static str),

    #[error("invalid preference profile: {0}")]
    InvalidProfile(String),

    #[error("invalid precedence order: {0}")]
    InvalidPrecedence(String),

    #[error("categories `{first}` and `{second}` are not adjacent in the precedence order")]
    NotAdjacent { first: String, second: String },

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("invalid baseline instance: {0}")]
    InvalidBaseline(String),

    #[error(
        "invalid smart reserve parameter: n = {n} but the unreserved category has {capacity} units"
    )]
    InvalidSmartParameter { n: usize, capacity: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
