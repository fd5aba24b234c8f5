//! Geodesic carriers in the disk model: circles orthogonal to the unit
//! circle, or diameters when the two points are collinear with the
//! origin.

use crate::error::Error;
use crate::metric::DiskPoint;

// relative tolerance deciding when a pair is treated as collinear with
// the origin
const COLLINEAR_TOL: f64 = 1e-12;

/// Circle orthogonal to the unit circle, so |center|^2 = 1 + radius^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthoCircle {
    center: (f64, f64),
    radius: f64,
}

impl OrthoCircle {
    pub fn center(&self) -> (f64, f64) {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Residual of the orthogonality relation, |center|^2 - 1 - radius^2.
    pub fn orthogonality_residual(&self) -> f64 {
        let (a1, a2) = self.center;
        a1 * a1 + a2 * a2 - 1.0 - self.radius * self.radius
    }

    /// Signed distance of p from the circle line, |p - center| - radius.
    pub fn radial_residual(&self, p: (f64, f64)) -> f64 {
        (p.0 - self.center.0).hypot(p.1 - self.center.1) - self.radius
    }
}

/// Carrier of the geodesic through two distinct points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeodesicCarrier {
    Circle(OrthoCircle),
    /// Line through the origin with a unit direction vector.
    Diameter { direction: (f64, f64) },
}

/// Carrier of the geodesic through x and y.
///
/// For a noncollinear pair the center is i (y(1+|x|^2) - x(1+|y|^2)) /
/// (2 (x2 y1 - x1 y2)), where i acts as a quarter turn, and the radius
/// follows from orthogonality. Pairs collinear with the origin
/// (including pairs containing the origin) fall to the diameter branch.
pub fn carrier_through(x: DiskPoint, y: DiskPoint) -> Result<GeodesicCarrier, Error> {
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    let cross = x.x1() * y.x2() - x.x2() * y.x1();
    if cross.abs() <= COLLINEAR_TOL * x.norm().max(y.norm()) {
        let dx = y.x1() - x.x1();
        let dy = y.x2() - x.x2();
        let len = dx.hypot(dy);
        return Ok(GeodesicCarrier::Diameter {
            direction: (dx / len, dy / len),
        });
    }
    let px = 1.0 + x.norm_sq();
    let py = 1.0 + y.norm_sq();
    let den = 2.0 * (x.x2() * y.x1() - x.x1() * y.x2());
    let u1 = (y.x1() * px - x.x1() * py) / den;
    let u2 = (y.x2() * px - x.x2() * py) / den;
    let center = (-u2, u1);
    let radius = (center.0 * center.0 + center.1 * center.1 - 1.0).sqrt();
    Ok(GeodesicCarrier::Circle(OrthoCircle { center, radius }))
}

/// Carrier radius from the two-point formula
/// |x - y| |x |y|^2 - y| / (2 |y| |x1 y2 - x2 y1|).
///
/// Kept separate from the orthogonality route sqrt(|center|^2 - 1) so
/// the two can be compared.
pub fn radius_by_chord(x: DiskPoint, y: DiskPoint) -> Result<f64, Error> {
    if x == y {
        return Err(Error::CoincidentPoints);
    }
    let cross = x.x1() * y.x2() - x.x2() * y.x1();
    if cross.abs() <= COLLINEAR_TOL * x.norm().max(y.norm()) {
        return Err(Error::Domain(
            "pair collinear with the origin has no orthogonal circle",
        ));
    }
    let d = (x.x1() - y.x1()).hypot(x.x2() - y.x2());
    let ysq = y.norm_sq();
    let scaled = (x.x1() * ysq - y.x1()).hypot(x.x2() * ysq - y.x2());
    Ok(d * scaled / (2.0 * y.norm() * cross.abs()))
}

/// Ideal endpoints of a carrier: its two intersections with the unit
/// circle. Both returned points have norm 1 up to roundoff.
pub fn ideal_endpoints(carrier: &GeodesicCarrier) -> ((f64, f64), (f64, f64)) {
    match carrier {
        GeodesicCarrier::Diameter { direction } => ((-direction.0, -direction.1), *direction),
        GeodesicCarrier::Circle(c) => {
            // orthogonality pins the chord line exactly: points p with
            // |p| = 1 and |p - a|^2 = |a|^2 - 1 satisfy p.a = 1
            let (a1, a2) = c.center;
            let nsq = a1 * a1 + a2 * a2;
            let base = (a1 / nsq, a2 / nsq);
            let half_chord = (1.0 - 1.0 / nsq).max(0.0).sqrt();
            let n = nsq.sqrt();
            let t = (-a2 / n * half_chord, a1 / n * half_chord);
            ((base.0 - t.0, base.1 - t.1), (base.0 + t.0, base.1 + t.1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{disk_distance, distance_by_endpoints};
    use proptest::prelude::*;

    fn disk(x1: f64, x2: f64) -> DiskPoint {
        DiskPoint::new(x1, x2).unwrap()
    }

    #[test]
    fn test_carrier_symmetric_pair() {
        let c = carrier_through(disk(0.5, 0.0), disk(0.0, 0.5)).unwrap();
        match c {
            GeodesicCarrier::Circle(oc) => {
                let (a1, a2) = oc.center();
                assert!((a1 - 1.25).abs() < 1e-12);
                assert!((a2 - 1.25).abs() < 1e-12);
                assert!((oc.radius() - 1.4577379737113251).abs() < 1e-12);
                assert!(oc.orthogonality_residual().abs() < 1e-10);
            }
            GeodesicCarrier::Diameter { .. } => panic!("expected circle"),
        }
    }

    #[test]
    fn test_carrier_collinear_pair_is_a_diameter() {
        let c = carrier_through(disk(0.3, 0.0), disk(0.7, 0.0)).unwrap();
        match c {
            GeodesicCarrier::Diameter { direction } => {
                assert!((direction.0 - 1.0).abs() < 1e-14);
                assert!(direction.1.abs() < 1e-14);
            }
            GeodesicCarrier::Circle(_) => panic!("expected diameter"),
        }
    }

    #[test]
    fn test_carrier_through_origin_is_a_diameter() {
        let c = carrier_through(DiskPoint::origin(), disk(0.5, 0.5)).unwrap();
        match c {
            GeodesicCarrier::Diameter { direction } => {
                let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
                assert!((direction.0 - inv_sqrt2).abs() < 1e-14);
                assert!((direction.1 - inv_sqrt2).abs() < 1e-14);
            }
            GeodesicCarrier::Circle(_) => panic!("expected diameter"),
        }
    }

    #[test]
    fn test_carrier_rejects_coincident_points() {
        let p = disk(0.1, 0.2);
        assert_eq!(carrier_through(p, p), Err(Error::CoincidentPoints));
    }

    #[test]
    fn test_ideal_endpoints_of_the_symmetric_carrier() {
        let c = carrier_through(disk(0.5, 0.0), disk(0.0, 0.5)).unwrap();
        let (e1, e2) = ideal_endpoints(&c);
        // symmetric about the line x2 = x1
        let expect_lo = -0.18309518948453005;
        let expect_hi = 0.98309518948453;
        assert!((e1.0 - expect_hi).abs() < 1e-12);
        assert!((e1.1 - expect_lo).abs() < 1e-12);
        assert!((e2.0 - expect_lo).abs() < 1e-12);
        assert!((e2.1 - expect_hi).abs() < 1e-12);
        assert!((e1.0.hypot(e1.1) - 1.0).abs() < 1e-12);
        assert!((e2.0.hypot(e2.1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn test_ideal_endpoints_of_a_diameter() {
        let c = carrier_through(disk(0.3, 0.0), disk(0.7, 0.0)).unwrap();
        let (e1, e2) = ideal_endpoints(&c);
        assert!((e1.0 + 1.0).abs() < 1e-14 && e1.1.abs() < 1e-14);
        assert!((e2.0 - 1.0).abs() < 1e-14 && e2.1.abs() < 1e-14);
    }

    #[test]
    fn test_radius_by_chord_matches_orthogonality_route() {
        let x = disk(0.5, 0.0);
        let y = disk(0.0, 0.5);
        let r = radius_by_chord(x, y).unwrap();
        assert!((r - 1.4577379737113251).abs() < 1e-12);
        assert!(matches!(
            radius_by_chord(disk(0.2, 0.2), disk(0.4, 0.4)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn test_distance_is_continuous_across_the_branch_switch() {
        // wiggle one endpoint through the collinearity threshold; the
        // distance must not jump. cross = 0.3 * x2, threshold near
        // 2.3e-12 on x2 here.
        let x = disk(0.3, 0.0);
        let below = disk(0.7, 1.0e-12);
        let above = disk(0.7, 5.0e-12);
        assert!(matches!(
            carrier_through(x, below).unwrap(),
            GeodesicCarrier::Diameter { .. }
        ));
        assert!(matches!(
            carrier_through(x, above).unwrap(),
            GeodesicCarrier::Circle(_)
        ));
        let d_below = distance_by_endpoints(x, below).unwrap();
        let d_above = distance_by_endpoints(x, above).unwrap();
        assert!((d_below - d_above).abs() < 1e-9);
        assert!((d_below - disk_distance(x, below)).abs() < 1e-9);
        assert!((d_above - disk_distance(x, above)).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn prop_carriers_are_orthogonal_and_contain_their_points(
            x1 in -0.65f64..0.65, x2 in -0.65f64..0.65,
            y1 in -0.65f64..0.65, y2 in -0.65f64..0.65,
        ) {
            let x = disk(x1, x2);
            let y = disk(y1, y2);
            // keep the pair well inside the circle branch; the
            // tolerances below are absolute and the center norm grows
            // like 1/cross
            prop_assume!((x1 * y2 - x2 * y1).abs() > 1e-2);
            match carrier_through(x, y).unwrap() {
                GeodesicCarrier::Circle(oc) => {
                    prop_assert!(oc.orthogonality_residual().abs() <= 1e-10);
                    prop_assert!(oc.radial_residual((x.x1(), x.x2())).abs() <= 1e-10);
                    prop_assert!(oc.radial_residual((y.x1(), y.x2())).abs() <= 1e-10);
                    let chord = radius_by_chord(x, y).unwrap();
                    prop_assert!((chord - oc.radius()).abs() <= 1e-9);
                    let (e1, e2) = ideal_endpoints(&GeodesicCarrier::Circle(oc));
                    prop_assert!((e1.0.hypot(e1.1) - 1.0).abs() <= 1e-12);
                    prop_assert!((e2.0.hypot(e2.1) - 1.0).abs() <= 1e-12);
                }
                GeodesicCarrier::Diameter { .. } => prop_assert!(false, "expected circle"),
            }
        }
    }
}
