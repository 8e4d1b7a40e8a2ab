use crate::tuple::VertexTuple;

/// Why a candidate internal-simplex set fails to describe an odd-dimensional
/// triangulation. Carries a witness so callers can report what went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OddDefect {
    /// A tuple is not an internal simplex of the ambient polytope.
    OutsideInternalSet { tuple: VertexTuple },
    /// No interleaving witness tuple exists for `tuple`.
    NotSupporting { tuple: VertexTuple },
    /// The pair (`a`, `b`) requires the interpolant `missing`.
    NotBridging {
        a: VertexTuple,
        b: VertexTuple,
        missing: VertexTuple,
    },
}

impl std::fmt::Display for OddDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OddDefect::OutsideInternalSet { tuple } => {
                write!(f, "tuple {tuple} is not an internal simplex")
            }
            OddDefect::NotSupporting { tuple } => {
                write!(f, "set is not supporting: no witness for {tuple}")
            }
            OddDefect::NotBridging { a, b, missing } => {
                write!(f, "set is not bridging: pair ({a}, {b}) requires {missing}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid arity: expected {expected}, got {got}")]
    InvalidArity { expected: String, got: String },

    #[error("vertex {v} out of range 1..={m}")]
    VertexOutOfRange { v: u32, m: u32 },

    #[error("vertex count m={m} exceeds the supported limit of 64")]
    TooManyVertices { m: u32 },

    #[error("tuple entries are not strictly increasing: {entries:?}")]
    NotStrictlyIncreasing { entries: Vec<u32> },

    #[error("degenerate polytope: need m >= delta + 1 (got m={m}, delta={delta})")]
    DegeneratePolytope { m: u32, delta: u32 },

    #[error("not a triangulation: {reason}")]
    NotTriangulation { reason: String },

    #[error("not an odd-dimensional triangulation: {defect}")]
    NotOddTriangulation { defect: OddDefect },

    #[error("incompatible operands: {0}")]
    Incompatible(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("duplicate vertex {v}")]
    DuplicateVertex { v: u32 },

    #[error("resource cap exceeded after {visited} elements: {cap}")]
    ResourceCap { visited: usize, cap: String },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
