//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the geometric kernels.
///
/// Each variant corresponds to a distinct precondition or numerical breakdown so
/// that callers (and the CLI, which maps them to structured JSON records) can
/// react without parsing messages.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("vector is zero within tolerance")]
    ZeroVector,

    #[error("wedge product needs {expected} vectors, got {found}")]
    Arity { expected: usize, found: usize },

    #[error("metric is degenerate: {0}")]
    MetricDegenerate(String),

    #[error("derivative order {requested} exceeds the supported maximum {max}")]
    Order { requested: usize, max: usize },

    #[error("parameter {value} lies outside the domain [{min}, {max}]")]
    Domain { value: f64, min: f64, max: f64 },

    #[error("preset constraint violated: {0}")]
    PresetConstraint(String),

    #[error("frame undefined: {0}")]
    FrameUndefined(String),

    #[error("causal degeneracy: {0}")]
    CausalDegeneracy(String),

    #[error("sigma undefined: square-root argument {argument} is negative")]
    SigmaUndefined { argument: f64 },

    #[error("chart error: {0}")]
    Chart(String),

    #[error("no focal point: {0}")]
    NoFocalPoint(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("frame orientation flips between neighbouring samples: {0}")]
    FrameContinuity(String),

    #[error("point is not in anti-de Sitter space (residual {residual})")]
    ModelSpace { residual: f64 },

    #[error("Legendrian lift is degenerate (all homogeneous coordinates vanish)")]
    LiftDegenerate,

    #[error("expected corank {expected}, found {found}")]
    Corank { expected: usize, found: usize },

    #[error("invalid projection: {0}")]
    Projection(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short machine-readable name used in structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "DimensionError",
            Error::ZeroVector => "ZeroVectorError",
            Error::Arity { .. } => "ArityError",
            Error::MetricDegenerate(_) => "MetricDegenerateError",
            Error::Order { .. } => "OrderError",
            Error::Domain { .. } => "DomainError",
            Error::PresetConstraint(_) => "PresetConstraintError",
            Error::FrameUndefined(_) => "FrameUndefinedError",
            Error::CausalDegeneracy(_) => "CausalDegeneracyError",
            Error::SigmaUndefined { .. } => "SigmaUndefinedError",
            Error::Chart(_) => "ChartError",
            Error::NoFocalPoint(_) => "NoFocalPointError",
            Error::Grid(_) => "GridError",
            Error::FrameContinuity(_) => "FrameContinuityError",
            Error::ModelSpace { .. } => "ModelSpaceError",
            Error::LiftDegenerate => "LiftDegenerateError",
            Error::Corank { .. } => "CorankError",
            Error::Projection(_) => "ProjectionError",
            Error::InvalidInput(_) => "InvalidInputError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
