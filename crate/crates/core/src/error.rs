use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relations contain a cycle through element `{0}`")]
    Cycle(String),
    #[error("element `{0}` listed more than once")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element id `{0}` is reserved for padding")]
    ReservedElement(String),
    #[error("subposet member `{0}` listed more than once")]
    DuplicateMember(String),
    #[error("subposet labels out of order: `{lower}` < `{upper}` in the poset but `{lower}` is labelled after `{upper}`")]
    SubposetLabel { lower: String, upper: String },
    #[error("subposet is not a chain: `{0}` and `{1}` are incomparable")]
    NotAChain(String, String),
    #[error("poset does not carry hat0/hat1 as global minimum and maximum")]
    NotPadded,
    #[error("element `{element}` matches {matches} blocks of the chain decomposition")]
    Partition { element: String, matches: usize },
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("poset has {size} elements; enumeration is capped at {cap} (use force to override)")]
    TooLarge { size: usize, cap: usize },
    #[error("no interval decomposition exists for point {0:?}")]
    Infeasible(Vec<i64>),
    #[error("{0:?} is not a lattice point of the polytope")]
    NonLatticePoint(Vec<i64>),
    #[error("malformed subdivision: {0}")]
    MalformedSubdivision(String),
    #[error("rectangle filling is not order preserving: `{lower}` placed after `{upper}`")]
    NotExtendable { lower: String, upper: String },
    #[error("subposet members `{0}` and `{1}` must be incomparable")]
    Comparable(String, String),
    #[error("invalid chamber {0:?}")]
    InvalidChamber(Vec<usize>),
    #[error("gluing violation between chambers {w:?} and {v:?}: {reason} (point {point:?})")]
    GluingViolation {
        w: Vec<usize>,
        v: Vec<usize>,
        point: Vec<i64>,
        reason: String,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
