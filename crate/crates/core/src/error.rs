use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("edge `{0}`-`{1}` has label {2}, labels must be at least 2")]
    LabelTooSmall(String, String, u64),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge `{0}`-`{1}` is not in the graph")]
    UnknownEdge(String, String),
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
    #[error("graph is disconnected")]
    Disconnected,

    #[error("character has no value for vertex `{0}`")]
    MissingValue(String),
    #[error("character is identically zero")]
    ZeroCharacter,
    #[error("odd edge `{0}`-`{1}` has unequal endpoint values")]
    OddEdgeViolation(String, String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("generator `{0}` does not belong to ambient {1}")]
    ForeignGenerator(String, String),
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("word is not in the kernel of the retraction onto K_{0}")]
    NotInKernel(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("labels are not reduced to primes: {0}")]
    NotReduced(String),
    #[error("index {0} lies in the base range, the claim is vacuous there")]
    BaseRange(i64),
    #[error("hypothesis fails: sum of 1/(2l_i+1) over power-of-two spokes is {0}, not < 1")]
    HypothesisFails(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
