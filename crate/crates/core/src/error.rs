use thiserror::Error;

use crate::graph::EdgeClass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("a periodic graph needs at least one orbit")]
    NoOrbits,
    #[error("orbit index {index} out of range for {num_orbits} orbits")]
    OrbitOutOfRange { index: usize, num_orbits: usize },
    #[error("offset has length {got}, expected dimension {expected}")]
    OffsetLength { expected: usize, got: usize },
    #[error("zero-offset self-loop on orbit {0}")]
    ZeroSelfLoop(usize),
    #[error("duplicate edge class {0}")]
    DuplicateClass(EdgeClass),
    #[error("orbit subset must be nonempty")]
    EmptySubset,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("facial polynomial of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("not a root: the polynomial does not vanish at lambda = {0}")]
    NotARoot(String),
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("point has a zero coordinate where a negative exponent occurs")]
    ZeroCoordinate,
    #[error("expected a polynomial in lambda only")]
    NotLambdaOnly,
    #[error("matrix must be square and nonempty")]
    BadMatrixShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("expected {expected} potentials, got {got}")]
    PotentialCount { expected: usize, got: usize },
    #[error("missing weight for edge class {0}")]
    MissingWeight(EdgeClass),
    #[error("weight given for edge class {0}, which is not in the graph")]
    UnknownClass(EdgeClass),
    #[error("zero weight on edge class {0} (pass zero weights explicitly to allow deleted edges)")]
    ZeroWeight(EdgeClass),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloquetError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("face enumeration supports d <= 2, got d = {0}")]
    UnsupportedDimension(usize),
    #[error("support is a vertical segment; it has no proper vertical faces")]
    VerticalSegment,
    #[error("support set is empty")]
    EmptySupport,
    #[error("weight vector does not identify a proper vertical face")]
    NotProperVerticalFace,
    #[error("number of trials must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Floquet(#[from] FloquetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatBandError {
    #[error("dispersion polynomial must have leading lambda coefficient +1 or -1")]
    NotMonicInLambda,
    #[error("no flat band: the precondition requires at least one flat band")]
    NoFlatBand,
    #[error("graph has a support-0 fundamental domain")]
    HasSupportZeroDomain,
    #[error("orbit {index} out of range for {num_orbits} orbits")]
    OrbitOutOfRange { index: usize, num_orbits: usize },
    #[error("inheritance check needs at least two orbits")]
    TooFewOrbits,
    #[error("number of trials must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Floquet(#[from] FloquetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResultantError {
    #[error("resultant needs polynomials of degree at least 1")]
    DegreeZero,
    #[error("subset has {got} orbits, expected n - 1 = {expected}")]
    WrongSubsetSize { expected: usize, got: usize },
    #[error("subset does not have support 0 in the current fundamental domain")]
    NotSupportZero,
    #[error("simplified quotient graph is disconnected")]
    Disconnected,
    #[error("quotient edge ({0}, {1}) is not a cut edge")]
    NonBridgeEdge(usize, usize),
    #[error("edge class {0} has zero weight")]
    ZeroWeight(EdgeClass),
    #[error("evaluation point has length {got}, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("evaluation point has a zero coordinate")]
    ZeroCoordinate,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Floquet(#[from] FloquetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("grid resolution must be at least 2, got {0}")]
    Resolution(usize),
    #[error("tolerance must be positive")]
    Tolerance,
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}
