use thiserror::Error;

/// Errors produced by the analysis engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("agent {agent} out of range for a network of {n} agents")]
    IndexOutOfRange { agent: usize, n: usize },

    #[error("agent {0} cannot buy an edge to itself")]
    SelfLoop(usize),

    #[error("network is not a tree")]
    NotATree,

    #[error("illegal strategy for agent {agent}: {reason}")]
    IllegalStrategy { agent: usize, reason: String },

    #[error("exact search requested for n = {n}, above the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("outside the formula's domain: {0}")]
    DomainError(String),

    #[error("anchor {0} listed more than once")]
    DuplicateAnchor(usize),

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("no cycle through edge ({0}, {1})")]
    NoCycle(usize, usize),

    #[error("edge ({0}, {1}) is not incident to the root or does not exist")]
    EdgeNotIncident(usize, usize),

    #[error("no witness found: {0}")]
    NotFound(String),

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid edge price `{0}`")]
    InvalidAlpha(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
