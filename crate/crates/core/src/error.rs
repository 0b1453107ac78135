use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex `{0}` receives no edges")]
    SourceVertex(String),
    #[error("edge `{edge}` references undeclared vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex set is not hereditary")]
    NotHereditary,
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("vertex set is not a maximal tail")]
    NotAMaximalTail,
    #[error("malformed angle: {0}")]
    BadAngle(String),
    #[error("malformed arc: {0}")]
    BadArc(String),
    #[error("invalid ideal pair: {0}")]
    InvalidPair(String),
    #[error("invalid primitive ideal: {0}")]
    InvalidPrimitive(String),
    #[error("malformed hull: {0}")]
    MalformedHull(String),
    #[error("meet or join of an empty family")]
    EmptyFamily,
    #[error("graph has {0} vertices; exhaustive search is limited to 16")]
    TooLarge(usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
