use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient variable count {0} outside 1..=64")]
    AmbientOutOfRange(usize),

    #[error("variable index {index} outside 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("monomials live in different rings ({0} vs {1} variables)")]
    MixedAmbient(usize, usize),

    #[error("edges are not an antichain: {0} is contained in {1}")]
    NotAntichain(String, String),

    #[error("empty edge is not allowed here")]
    EmptyEdge,

    #[error("vertex {0} is not active in the clutter")]
    InactiveVertex(usize),

    #[error("input is not a graph: edge {0} does not have two vertices")]
    NotAGraph(String),

    #[error("expected a squarefree ideal, found exponents above 1")]
    NotSquarefree,

    #[error("the unit ideal is not allowed here")]
    UnitIdeal,

    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,

    #[error("order is not a permutation of the minimal generators")]
    NotAPermutation,

    #[error("position {0} is outside 2..={1}")]
    PositionOutOfRange(usize, usize),

    #[error("clutter is not chordal")]
    NotChordal,

    #[error("minimum edge cardinality {min} is smaller than d = {d}")]
    EdgeTooSmall { min: usize, d: usize },

    #[error("d must be at least 1")]
    InvalidDegree,

    #[error("active variables {active} do not cover the generator support {support}")]
    ActiveTooSmall { active: String, support: String },

    #[error("{what} of size {size} exceeds the desk-scale limit {limit}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
