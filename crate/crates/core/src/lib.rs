//! Fourier–Laplace transforms of polytopal regions at complex frequencies,
//! evaluated through vertex tangent cones, plus tools for studying where
//! those transforms can vanish: restrictions to complex circles and
//! parametrized curves, dominance along vertical parameter lines, and the
//! planar segment-measure reduction.

pub mod curves;
pub mod experiments;
pub mod expsum;
mod flat;
pub mod geometry;
pub mod io;
pub mod planar;
pub mod transform;

pub use num_complex::Complex64;

pub use curves::{ComplexCircle, CurveKind, ParametricCurve};
pub use expsum::{ExponentialSum, ScanRecord, ScanResult};
pub use geometry::{Point, PolytopalRegion, Polytope, SimplicialCone, VertexConeDecomposition};
pub use transform::{bb_transform, bb_transform_continued, quadrature_transform, ComplexVector, EvaluationResult};
