use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("not a planar embedding: v - e + f = {euler}, expected 2")]
    NotPlanar { euler: i64 },
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("face {0} out of range")]
    FaceOutOfRange(usize),

    #[error("count is not divisible by q^3 - q: {0}")]
    NotDivisible(String),
    #[error("enumeration too large: {0} assignments")]
    TooLarge(u128),
    #[error("graph is not simple: {0}")]
    NotSimple(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("presentation assertion failed: {0}")]
    PresentationAssertionFailed(String),
    #[error("not isotropic: {0}")]
    NotIsotropic(String),
    #[error("lifts are not dual to the kernel: {0}")]
    NotDual(String),
    #[error("kernel is not primitive: {0}")]
    NotPrimitive(String),
    #[error("framing matrix is not symmetric")]
    FramingNotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("blow-up decomposition failed: {0}")]
    DecompositionFailed(String),

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("face relation failed for face {0}")]
    FaceRelationFailed(usize),
    #[error("relation failed: {0}")]
    RelationFailed(String),
    #[error("invalid gauge: {0}")]
    InvalidGauge(String),

    #[error("truncation mismatch: {left:?} vs {right:?}")]
    TruncationMismatch { left: (usize, u32), right: (usize, u32) },
    #[error("series constant term is not 1")]
    NonUnitConstantTerm,
    #[error("Jacobian at the seed is singular")]
    SingularJacobian,
    #[error("seed is not a root of the system")]
    SeedNotRoot,
    #[error("rational function has a pole at the origin")]
    PoleAtOrigin,
    #[error("elimination blow-up: {0}")]
    EliminationBlowup(String),
    #[error("triangular solve stuck: {0}")]
    TriangularSolveStuck(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("convention error: {0}")]
    ConventionError(String),
    #[error("superpotential is not closed at {0}")]
    NotClosed(String),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
}
