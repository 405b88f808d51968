use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed group description: {0}")]
    MalformedSpec(String),
    #[error("operation table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("operation table has no two-sided identity")]
    MissingIdentity,
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("member set is not a subgroup")]
    NotASubgroup,
    #[error("objects live over different groups")]
    GroupMismatch,
    #[error("maps do not share a common target")]
    MismatchedTarget,
    #[error("map is not equivariant at group element {element}, point {point}")]
    NotEquivariant { element: usize, point: usize },
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error("span boundary objects do not match")]
    ObjectMismatch,
    #[error("spans have different boundary objects")]
    BoundaryMismatch,
    #[error("span enumeration exceeded the cap of {0} apex candidates")]
    SpanCapExceeded(usize),
    #[error("Mackey functor fails its axioms: {0}")]
    AxiomFailure(String),
    #[error("malformed Mackey functor data: {0}")]
    MalformedMackey(String),
    #[error("relation is not a transfer system: {0}")]
    InvalidRelation(String),
    #[error("not an indexing system: {0}")]
    InvalidIndexingSystem(String),
    #[error("transfer system is not contained in the diagram's transfer system")]
    NotASubSystem,
    #[error("invalid graded algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid diagram data: {0}")]
    InvalidDiagram(String),
    #[error("search for algebra maps is not finite: {0}")]
    UnboundedSearch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
