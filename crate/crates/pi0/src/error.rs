use crate::space_k::SeparationWitness;

/// Domain errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("value {0} is outside [0,1]")]
    OutOfRange(String),
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("({x}, {y}) is not a point of K")]
    NotInK { x: String, y: String },
    #[error("interval endpoints are out of order")]
    InvalidOrder,
    #[error("points lie in different path components")]
    DifferentComponents(SeparationWitness),
    #[error("coordinate {coordinate} lies in different path components")]
    DifferentComponentsAt {
        coordinate: usize,
        witness: SeparationWitness,
    },
    #[error("points lie in the same path component")]
    SameComponent,
    #[error("level {requested} exceeds the resolution cap {max}")]
    ResolutionTooLarge { requested: u32, max: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("region contains no boxes")]
    EmptyRegion,
    #[error("box corners out of order on axis {axis}")]
    InvalidBox { axis: usize },
    #[error("conjugator and sign lists differ in length")]
    LengthMismatch,
    #[error("loop traversal points have inconsistent dimensions")]
    InvalidPoint,
    #[error("cannot parse {input:?} as {expected}")]
    Parse { input: String, expected: &'static str },
    #[error("io failure: {0}")]
    IoFailure(String),
}

impl Error {
    /// Stable machine-readable name, used in CLI error JSON.
    pub fn name(&self) -> &'static str {
        match self {
            Error::OutOfRange(_) => "out_of_range",
            Error::ZeroDenominator => "zero_denominator",
            Error::NotInK { .. } => "not_in_k",
            Error::InvalidOrder => "invalid_order",
            Error::DifferentComponents(_) => "different_components",
            Error::DifferentComponentsAt { .. } => "different_components",
            Error::SameComponent => "same_component",
            Error::ResolutionTooLarge { .. } => "resolution_too_large",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::EmptyRegion => "empty_region",
            Error::InvalidBox { .. } => "invalid_box",
            Error::LengthMismatch => "length_mismatch",
            Error::InvalidPoint => "invalid_point",
            Error::Parse { .. } => "parse_error",
            Error::IoFailure(_) => "io_failure",
        }
    }
}
