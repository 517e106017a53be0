use thiserror::Error;

/// Errors produced by graph construction, enumeration, geometry, and census code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),

    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownEndpoint { edge: String, vertex: String },

    #[error("edge `{0}` is a self-loop")]
    SelfLoop(String),

    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCapExceeded { cap: usize },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex expansion: {0}")]
    BadExpansion(String),

    #[error("edge `{edge}` is not a consistent expansion arc: {reason}")]
    NotConsistent { edge: String, reason: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid minor witness: {0}")]
    InvalidWitness(String),

    #[error("pattern too large for exact search ({size} vertices, limit {limit})")]
    PatternTooLarge { size: usize, limit: usize },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("cycles are not vertex-disjoint (shared vertex `{0}`)")]
    NotDisjoint(String),

    #[error("no generic projection direction found after {tried} candidates")]
    DegenerateProjection { tried: usize },

    #[error("edge `{0}` has no antiparallel twin")]
    MissingTwin(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("geometric clearance construction failed: {0}")]
    ClearanceFailed(String),

    #[error("malformed rational `{0}` (expected `p` or `p/q`)")]
    BadRational(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("linking number out of i64 range")]
    LinkingOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
