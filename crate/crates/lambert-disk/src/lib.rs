//! Hyperbolic geometry in the unit disk and upper half plane: distance
//! routines with redundant evaluation paths, geodesic carriers, Lambert
//! quadrilaterals with sharp side bounds, and Hölder-mean convexity
//! classification of the inverse hyperbolic sine.

pub mod geodesic;
pub mod holder;
pub mod lambert;
pub mod metric;
pub mod verify;

mod error;

pub use error::Error;
pub use geodesic::{GeodesicCarrier, OrthoCircle};
pub use holder::ConvexityClass;
pub use lambert::{LambertQuad, QuadParams, SweepReport};
pub use metric::{DiskPoint, ExtendedPoint, HalfPlanePoint};
