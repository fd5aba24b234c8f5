//! Distance routines for the unit-disk and upper-half-plane models.
//!
//! The disk distance is computed three independent ways: a closed form,
//! the log of a cross ratio with the ideal endpoints of the geodesic,
//! and midpoint quadrature of the metric density along the geodesic.
//! The redundancy is deliberate; the test suite plays the routes
//! against each other.

use std::f64::consts::PI;

use crate::error::Error;
use crate::geodesic::{self, GeodesicCarrier};

/// Point of the plane extended by a single point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedPoint {
    Finite(f64, f64),
    Infinity,
}

impl ExtendedPoint {
    /// Finite point; rejects NaN and infinite coordinates.
    pub fn finite(x1: f64, x2: f64) -> Result<Self, Error> {
        if x1.is_finite() && x2.is_finite() {
            Ok(ExtendedPoint::Finite(x1, x2))
        } else {
            Err(Error::NonFinite)
        }
    }
}

/// Point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    x1: f64,
    x2: f64,
}

impl DiskPoint {
    /// Rejects non-finite coordinates and points with |x| >= 1.
    pub fn new(x1: f64, x2: f64) -> Result<Self, Error> {
        if !(x1.is_finite() && x2.is_finite()) {
            return Err(Error::NonFinite);
        }
        if x1 * x1 + x2 * x2 >= 1.0 {
            return Err(Error::OutsideDisk);
        }
        Ok(DiskPoint { x1, x2 })
    }

    pub fn origin() -> Self {
        DiskPoint { x1: 0.0, x2: 0.0 }
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn norm(&self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn norm_sq(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2
    }

    /// 1 - |x|^2 evaluated as (1 - |x|)(1 + |x|), which keeps relative
    /// accuracy when |x| is close to 1.
    pub fn boundary_gap(&self) -> f64 {
        let n = self.norm();
        (1.0 - n) * (1.0 + n)
    }
}

/// Point of the open upper half plane (x2 > 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    x1: f64,
    x2: f64,
}

impl HalfPlanePoint {
    pub fn new(x1: f64, x2: f64) -> Result<Self, Error> {
        if !(x1.is_finite() && x2.is_finite()) {
            return Err(Error::NonFinite);
        }
        if x2 <= 0.0 {
            return Err(Error::OutsideHalfPlane);
        }
        Ok(HalfPlanePoint { x1, x2 })
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }
}

/// Chordal distance q(x, y) = |x - y| / (sqrt(1 + |x|^2) sqrt(1 + |y|^2)),
/// with q(x, Infinity) = 1 / sqrt(1 + |x|^2). Never exceeds 1.
pub fn chordal_distance(x: ExtendedPoint, y: ExtendedPoint) -> f64 {
    match (x, y) {
        (ExtendedPoint::Finite(a1, a2), ExtendedPoint::Finite(b1, b2)) => {
            let d = (a1 - b1).hypot(a2 - b2);
            d / ((1.0 + a1 * a1 + a2 * a2).sqrt() * (1.0 + b1 * b1 + b2 * b2).sqrt())
        }
        (ExtendedPoint::Finite(a1, a2), ExtendedPoint::Infinity)
        | (ExtendedPoint::Infinity, ExtendedPoint::Finite(a1, a2)) => {
            1.0 / (1.0 + a1 * a1 + a2 * a2).sqrt()
        }
        (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => 0.0,
    }
}

/// Absolute ratio |a, b, c, d| = q(a,c) q(b,d) / (q(a,b) q(c,d)).
///
/// For four finite points the chordal factors cancel and this equals the
/// Euclidean form |a-c||b-d| / (|a-b||c-d|).
pub fn absolute_ratio(
    a: ExtendedPoint,
    b: ExtendedPoint,
    c: ExtendedPoint,
    d: ExtendedPoint,
) -> Result<f64, Error> {
    let pts = [a, b, c, d];
    // exact coincidence only; near-coincident quadruples are the
    // caller's responsibility
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i] == pts[j] {
                return Err(Error::DegenerateQuadruple);
            }
        }
    }
    Ok(chordal_distance(a, c) * chordal_distance(b, d)
        / (chordal_distance(a, b) * chordal_distance(c, d)))
}

/// Half-plane distance arcosh(1 + |x - y|^2 / (2 x2 y2)).
///
/// Evaluated as asinh(sqrt(t(2 + t))) with t = |x - y|^2 / (2 x2 y2),
/// which is the same number but stays accurate for nearby points.
pub fn halfplane_distance(x: HalfPlanePoint, y: HalfPlanePoint) -> f64 {
    let d1 = x.x1 - y.x1;
    let d2 = x.x2 - y.x2;
    let t = (d1 * d1 + d2 * d2) / (2.0 * x.x2 * y.x2);
    (t * (2.0 + t)).sqrt().asinh()
}

/// Disk distance 2 arsinh(|x - y| / sqrt((1 - |x|^2)(1 - |y|^2))).
pub fn disk_distance(x: DiskPoint, y: DiskPoint) -> f64 {
    let d = (x.x1 - y.x1).hypot(x.x2 - y.x2);
    2.0 * (d / (x.boundary_gap() * y.boundary_gap()).sqrt()).asinh()
}

/// Disk distance as the log of the cross ratio with the ideal endpoints
/// of the geodesic through x and y.
///
/// The endpoints are labelled so that the ratio is at least 1, which
/// makes the log nonnegative.
pub fn distance_by_endpoints(x: DiskPoint, y: DiskPoint) -> Result<f64, Error> {
    let carrier = geodesic::carrier_through(x, y)?;
    let (e1, e2) = geodesic::ideal_endpoints(&carrier);
    let ratio = absolute_ratio(
        ExtendedPoint::Finite(e1.0, e1.1),
        ExtendedPoint::Finite(x.x1, x.x2),
        ExtendedPoint::Finite(y.x1, y.x2),
        ExtendedPoint::Finite(e2.0, e2.1),
    )?;
    // swapping the endpoint labels inverts the ratio
    let ratio = if ratio < 1.0 { 1.0 / ratio } else { ratio };
    Ok(ratio.ln())
}

// metric density 2/(1 - |z|^2), boundary gap factored
fn density(z1: f64, z2: f64) -> f64 {
    let n = z1.hypot(z2);
    2.0 / ((1.0 - n) * (1.0 + n))
}

/// Disk distance by composite midpoint quadrature of the metric density
/// along the geodesic arc, with `n_steps` equal panels.
///
/// The rule is second order: doubling `n_steps` cuts the error by about
/// a factor of four.
pub fn distance_by_integration(x: DiskPoint, y: DiskPoint, n_steps: usize) -> Result<f64, Error> {
    if n_steps < 16 {
        return Err(Error::Domain("n_steps must be at least 16"));
    }
    let carrier = geodesic::carrier_through(x, y)?;
    let n = n_steps as f64;
    match carrier {
        GeodesicCarrier::Diameter { .. } => {
            // straight chord, equal parameter panels
            let dx = y.x1 - x.x1;
            let dy = y.x2 - x.x2;
            let len = dx.hypot(dy);
            let mut sum = 0.0;
            for k in 0..n_steps {
                let t = (k as f64 + 0.5) / n;
                sum += density(x.x1 + t * dx, x.x2 + t * dy);
            }
            Ok(sum * len / n)
        }
        GeodesicCarrier::Circle(c) => {
            // equal angle panels; the arc inside the disk subtends less
            // than pi, so the short way around is the geodesic arc
            let (a1, a2) = c.center();
            let r = c.radius();
            let phi_x = (x.x2 - a2).atan2(x.x1 - a1);
            let phi_y = (y.x2 - a2).atan2(y.x1 - a1);
            let mut dphi = phi_y - phi_x;
            if dphi > PI {
                dphi -= 2.0 * PI;
            } else if dphi < -PI {
                dphi += 2.0 * PI;
            }
            let mut sum = 0.0;
            for k in 0..n_steps {
                let phi = phi_x + dphi * (k as f64 + 0.5) / n;
                sum += density(a1 + r * phi.cos(), a2 + r * phi.sin());
            }
            Ok(sum * r * dphi.abs() / n)
        }
    }
}
