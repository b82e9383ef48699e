use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least 2 vertices, got {n}")]
    TooSmall { n: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },
    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{what} limited to n <= {limit}, graph has n = {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree is a path")]
    IsAPath,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),
}

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            Error::Parse { .. } => self,
            other => Error::Parse {
                line,
                message: other.to_string(),
            },
        }
    }
}
