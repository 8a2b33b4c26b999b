use thiserror::Error;

use crate::cell::Cell;

/// Crate-wide error type. Verification *results* (a tiling that fails to
/// cover, a boundary pattern that is violated) are reported through report
/// structs, not through this type; `Error` is reserved for malformed inputs
/// and broken preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("scale mismatch: {0} vs {1}")]
    ScaleMismatch(u64, u64),

    #[error("ambient dimension must be at least {min} (got {got})")]
    DimensionTooSmall { min: usize, got: usize },

    #[error("duplicate cell {0}")]
    DuplicateCell(Cell),

    #[error("cell {0} lies outside the box")]
    CellOutsideBox(Cell),

    #[error("polycube is empty")]
    EmptyPolycube,

    #[error("box bounds invalid: lo must be strictly below hi on every axis")]
    InvalidBox,

    #[error("scale denominator must be positive")]
    InvalidScale,

    #[error("refinement factor must be at least 1")]
    InvalidRefinement,

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("not a stack of cubes: cell {0} has no support below it")]
    NotAStack(Cell),

    #[error("boundary is not a closed pseudomanifold: ridge at {corner} (axes {axis_a}, {axis_b}) lies in {count} boundary facets")]
    NotPseudomanifold {
        corner: Cell,
        axis_a: usize,
        axis_b: usize,
        count: usize,
    },

    #[error("peninsula found where none may exist: cell {0}")]
    UnexpectedPeninsula(Cell),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("signs must all be +1 or -1")]
    InvalidSigns,

    #[error("rotation axes must be distinct and in range")]
    InvalidRotationAxes,

    #[error("quarter turns must lie in 1..=3")]
    InvalidQuarterTurns,

    #[error("rotation word has wrong shape for dimension {dim}")]
    InvalidRotationWord { dim: usize },

    #[error("corner entries must all be +1 or -1")]
    InvalidCorner,

    #[error("corner map inversion requires even dimension (got {0})")]
    OddDimensionCorner(usize),

    #[error("footprint heights are all zero")]
    AllZeroFootprint,

    #[error("footprint height {h} exceeds max height {max}")]
    HeightAboveMax { h: u64, max: u64 },

    #[error("swap source cell {0} is not contained in the polycube")]
    SwapSourceMissing(Cell),

    #[error("swap image cell {0} collides with a retained cell")]
    SwapCollision(Cell),

    #[error("polycube violates gluing face condition on the {which} face")]
    GluingFaceViolated { which: &'static str },

    #[error("polycube and its paired rotation do not tile the expected box: {0}")]
    PairTilingFailed(String),

    #[error("input polycube is not connected")]
    NotConnected,

    #[error("pieces do not partition the cube: {0}")]
    NotAPartition(String),

    #[error("boundary pattern violated: property ({property}) on face axis {face_axis}")]
    PatternViolated { property: u8, face_axis: usize },

    #[error("certificate failed verification: {0}")]
    CertificateFailed(String),

    #[error("constructed object failed its contract: {0}")]
    ContractViolated(String),

    #[error("scale ratio must be positive")]
    InvalidScaleRatio,

    #[error("placement translation is not integral at the composed scale")]
    NonIntegralTranslation,

    #[error("certificate target is not a cube")]
    TargetNotCube,

    #[error("certificate target is not an integer dilation of the tile")]
    TargetNotDilation,

    #[error("placements must be isometric (scale ratio 1) for this operation")]
    ScaledPlacement,

    #[error("search is gated to dimension <= {max_dim} and <= {max_cells} target cells")]
    SearchTooLarge { max_dim: usize, max_cells: usize },

    #[error("homology result exceeds the representable divisor range")]
    DivisorOverflow,

    #[error("mesh export requires dimension 3 (got {0})")]
    NotThreeDimensional(usize),

    #[error("fixture is only shipped for dimensions 2 and 3 (got {0})")]
    NoSuchFixture(usize),

    #[error("{0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
