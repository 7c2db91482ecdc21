use thiserror::Error;

/// Errors raised by profile handling, the lottery engine and the reference methods.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: unknown candidate `{id}`")]
    UnknownCandidate { line: usize, id: String },
    #[error("duplicate candidate `{0}`")]
    DuplicateCandidate(String),
    #[error("line {line}: malformed weight `{text}`")]
    MalformedWeight { line: usize, text: String },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("profile has no ballots or zero total weight")]
    EmptyProfile,
    #[error("profile declares {0} candidates; at most {max} are supported", max = crate::set::MAX_CANDIDATES)]
    TooManyCandidates(usize),
    #[error("invalid candidate id `{0}`")]
    InvalidCandidateId(String),
    #[error("line {line}: grade {grade} outside 0..={max}")]
    GradeOutOfRange { line: usize, grade: u32, max: u32 },
    #[error("the allowed candidate set is empty")]
    EmptyAllowedSet,
    #[error("cannot fill {seats} seats from {candidates} candidates")]
    TooManySeats { seats: usize, candidates: usize },
    #[error("{what}: size {size} exceeds the limit of {limit}")]
    InstanceTooLarge { what: String, size: String, limit: String },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("ballot {ballot} already approves `{candidate}`")]
    AlreadyApproved { ballot: usize, candidate: String },
    #[error("profiles have different candidate sets")]
    CandidateMismatch,
    #[error("ballot index {0} out of range")]
    BallotOutOfRange(usize),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn too_large(what: &str, size: impl ToString, limit: impl ToString) -> Self {
        Error::InstanceTooLarge { what: what.to_string(), size: size.to_string(), limit: limit.to_string() }
    }

    /// True for guard-rail refusals (instance size, seat count), as opposed to bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::InstanceTooLarge { .. } | Error::TooManySeats { .. } | Error::TooManyCandidates(_))
    }
}
