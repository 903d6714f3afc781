use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("group order exceeds cap {cap}")]
    OrderExceedsCap { cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("group is not abelian")]
    NotAbelian,

    #[error("element {0} is not an involution")]
    NotInvolution(String),

    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("connection set contains the identity")]
    ConnectionContainsIdentity,

    #[error("connection set is not inverse-closed: inverse of {0} missing")]
    ConnectionNotInverseClosed(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {vertex} out of range for graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("element {0} does not act as a graph automorphism")]
    NotAutomorphism(String),

    #[error("group does not act regularly on the point set")]
    NotRegular,

    #[error("group is not arc-regular on the graph")]
    NotArcRegular,

    #[error("point sets differ: {left} vs {right} points")]
    PointSetMismatch { left: usize, right: usize },

    #[error("group has no permutation realization")]
    MissingRealization,

    #[error("degenerate group of order {0}")]
    DegenerateGroup(usize),

    #[error("automorphism enumeration exceeded {cap} elements")]
    AutomorphismCap { cap: usize },

    #[error("witness is malformed: {0}")]
    MalformedWitness(String),

    #[error("stage `{stage}` failed: {reason}")]
    Stage { stage: &'static str, reason: String },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Attach a pipeline stage identifier to a failure.
    pub fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |e| match e {
            e @ Error::Inconsistency(_) => e,
            e => Error::Stage { stage, reason: e.to_string() },
        }
    }
}
