//! Lightlike hypersurfaces, focal sets and singularity classification for
//! spacelike curves and surfaces in anti-de Sitter space.

// Index loops mirror the formulas; negated comparisons deliberately send NaN
// down the failure branch.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod classifier;
pub mod curve_frames;
pub mod error;
pub mod export;
pub mod grid;
pub mod height;
pub mod jets;
pub mod models;
pub mod parametric;
pub mod presets;
pub mod semi_euclidean;
pub mod sheets;
pub mod surface_geometry;
pub mod terms;
pub mod tolerance;
pub mod verification;

pub use error::{Error, Result};
pub use parametric::{GeomObject, ParamCurve, ParamSurface};
pub use semi_euclidean::AmbientVector;
pub use tolerance::ToleranceConfig;
