use crate::graph::VertexLabel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid vertex name {0:?}: must be a nonempty token without whitespace")]
    InvalidVertexName(String),

    #[error("loop edge at vertex `{0}` is not allowed")]
    LoopEdge(VertexLabel),

    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownVertex(VertexLabel),

    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),

    #[error("cycle repeats vertex `{0}`")]
    CycleRepeatsVertex(VertexLabel),

    #[error("{0} is not a cycle of this graph")]
    UnknownCycle(String),

    #[error("{0} is not a cycle of the weighted graph")]
    UnknownWeightCycle(String),

    #[error("cycles are not vertex-disjoint: both pass through `{0}`")]
    NotDisjoint(VertexLabel),

    #[error("graph is missing triangle {0}")]
    MissingTriangle(String),

    #[error("new vertex `{0}` already exists in the graph")]
    NameCollision(VertexLabel),

    #[error("vertex `{0}` has degree {1}; collapsing requires degree exactly 3")]
    CenterDegree(VertexLabel, usize),

    #[error("collapsing `{0}` would duplicate edge {1}")]
    CollapseMultiEdge(VertexLabel, String),

    #[error("element contains the exchanged triangle and has no image")]
    ContainsTriangle,

    #[error("triangles {0} and {1} share an edge; the set must be pairwise edge-disjoint")]
    NotEdgeDisjoint(String, String),

    #[error("unknown family member `{0}` (expected one of K6, Q7, Q8, P7, P8, P9, P10)")]
    UnknownMember(String),

    #[error("graph does not match any catalog member; relabel it or pass a catalog graph")]
    GraphNotInCatalog,

    #[error("embedding is not valid: {0}")]
    InvalidEmbedding(String),

    #[error("projection is degenerate ({0}); re-randomize or rotate the embedding")]
    DegenerateProjection(String),

    #[error("no generic embedding found after {0} attempts")]
    RetryExhausted(usize),

    #[error("diagram has {got} components, expected {want}")]
    ComponentCount { want: usize, got: usize },

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the CLI: 1 verification failure, 2 bad
    /// input, 3 internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerificationFailed(_) => 1,
            Error::Internal(_) | Error::ComponentCount { .. } => 3,
            _ => 2,
        }
    }
}
