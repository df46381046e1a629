use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph order {0} exceeds the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("malformed edge list: {0}")]
    EdgeList(String),
    #[error("vertex {0} is not a member of the set")]
    NotInSet(usize),
    #[error("the vertex set must be nonempty")]
    EmptySet,
    #[error("unknown pattern name `{0}`")]
    UnknownPattern(String),
    #[error("order {n} exceeds the cap of {cap} for {what}")]
    SizeCap { what: &'static str, n: usize, cap: usize },
    #[error("catalog self-check failed: {0}")]
    SelfCheck(String),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
