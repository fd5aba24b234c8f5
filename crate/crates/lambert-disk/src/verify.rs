//! Seeded self-checks across the whole crate, one report line per
//! property. The CLI exposes these as `verify`; the suite is fully
//! deterministic in the seed so two runs can be compared byte for byte.

use crate::geodesic::{carrier_through, radius_by_chord, GeodesicCarrier};
use crate::holder::{
    check_monotone, classify_asinh_convexity, critical_curve, critical_exponent,
    empirical_convexity_test, golden_section_max, holder_mean, ConvexityClass, Direction,
};
use crate::lambert::{
    build_quad, product_bound, product_bound_log_form, side_lengths_direct, sum_bounds,
    sum_upper_log_form, verify_sharp_bounds, QuadParams,
};
use crate::metric::{
    absolute_ratio, chordal_distance, disk_distance, distance_by_endpoints,
    distance_by_integration, DiskPoint, ExtendedPoint,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// Outcome of one named property check.
#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

// independent generator per check so adding samples to one check never
// shifts another
fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn sample_disk(rng: &mut ChaCha8Rng) -> DiskPoint {
    let radius = 0.95 * rng.gen::<f64>().sqrt();
    let angle = TAU * rng.gen::<f64>();
    DiskPoint::new(radius * angle.cos(), radius * angle.sin()).expect("sampled inside the disk")
}

fn sample_separated_pair(rng: &mut ChaCha8Rng) -> (DiskPoint, DiskPoint) {
    loop {
        let x = sample_disk(rng);
        let y = sample_disk(rng);
        if (x.x1() - y.x1()).hypot(x.x2() - y.x2()) > 1e-3 {
            return (x, y);
        }
    }
}

fn sample_noncollinear_pair(rng: &mut ChaCha8Rng) -> (DiskPoint, DiskPoint) {
    loop {
        let x = sample_disk(rng);
        let y = sample_disk(rng);
        if (x.x1() * y.x2() - x.x2() * y.x1()).abs() > 1e-2 {
            return (x, y);
        }
    }
}

fn check_metric_axioms(seed: u64, n: usize) -> PropertyCheck {
    let mut rng = rng_for(seed, 0);
    let mut max_sym = 0.0f64;
    let mut max_tri = f64::NEG_INFINITY;
    let mut ok = true;
    for _ in 0..n {
        let x = sample_disk(&mut rng);
        let y = sample_disk(&mut rng);
        let z = sample_disk(&mut rng);
        let dxy = disk_distance(x, y);
        let dyx = disk_distance(y, x);
        let dxz = disk_distance(x, z);
        let dyz = disk_distance(y, z);
        max_sym = max_sym.max((dxy - dyx).abs());
        max_tri = max_tri.max(dxz - dxy - dyz);
        ok &= dxy.is_finite() && dxy >= 0.0;
    }
    PropertyCheck {
        name: "metric_axioms",
        passed: ok && max_sym <= 1e-15 && max_tri <= 1e-12,
        detail: format!(
            "symmetry residual {:.3e}, worst triangle slack {:.3e} over {} triples",
            max_sym, max_tri, n
        ),
    }
}

fn check_cross_ratio_forms(seed: u64, n: usize) -> PropertyCheck {
    let mut rng = rng_for(seed, 1);
    let mut max_gap = 0.0f64;
    let mut drawn = 0usize;
    while drawn < n {
        let pts: Vec<DiskPoint> = (0..4).map(|_| sample_disk(&mut rng)).collect();
        let mut separated = true;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let d = (pts[i].x1() - pts[j].x1()).hypot(pts[i].x2() - pts[j].x2());
                separated &= d > 1e-2;
            }
        }
        if !separated {
            continue;
        }
        drawn += 1;
        let ext: Vec<ExtendedPoint> = pts
            .iter()
            .map(|p| ExtendedPoint::Finite(p.x1(), p.x2()))
            .collect();
        let via_chordal =
            absolute_ratio(ext[0], ext[1], ext[2], ext[3]).expect("distinct points");
        let e = |i: usize, j: usize| {
            (pts[i].x1() - pts[j].x1()).hypot(pts[i].x2() - pts[j].x2())
        };
        let via_euclid = (e(0, 2) * e(1, 3)) / (e(0, 1) * e(2, 3));
        let gap = (via_chordal - via_euclid).abs() / via_euclid.max(1.0);
        max_gap = max_gap.max(gap);
    }
    PropertyCheck {
        name: "cross_ratio_forms",
        passed: max_gap <= 1e-12,
        detail: format!(
            "chordal and euclidean forms agree to {:.3e} over {} quadruples",
            max_gap, n
        ),
    }
}

fn check_distance_oracles(seed: u64, n: usize) -> PropertyCheck {
    let mut rng = rng_for(seed, 2);
    let mut max_endpoint = 0.0f64;
    let mut max_quad = 0.0f64;
    for _ in 0..n {
        let (x, y) = sample_separated_pair(&mut rng);
        let closed = disk_distance(x, y);
        let by_endpoints = distance_by_endpoints(x, y).expect("distinct points");
        let by_quadrature = distance_by_integration(x, y, 4096).expect("valid step count");
        max_endpoint = max_endpoint.max((closed - by_endpoints).abs());
        max_quad = max_quad.max((closed - by_quadrature).abs());
    }
    // the second-order rule at 4096 panels is bounded by h^2/12 times the
    // density slope at norm 0.95, about 7.2e-6 for diametral pairs; 1e-5
    // covers that with margin while still catching order regressions
    PropertyCheck {
        name: "distance_oracles",
        passed: max_endpoint <= 1e-10 && max_quad <= 1e-5,
        detail: format!(
            "endpoint route off by {:.3e}, 4096-panel quadrature by {:.3e} over {} pairs",
            max_endpoint, max_quad, n
        ),
    }
}

fn check_orthocircle_geometry(seed: u64, n: usize) -> PropertyCheck {
    let mut rng = rng_for(seed, 3);
    let mut max_orth = 0.0f64;
    let mut max_member = 0.0f64;
    let mut max_radius_gap = 0.0f64;
    let mut all_circles = true;
    for _ in 0..n {
        let (x, y) = sample_noncollinear_pair(&mut rng);
        match carrier_through(x, y).expect("distinct points") {
            GeodesicCarrier::Circle(oc) => {
                max_orth = max_orth.max(oc.orthogonality_residual().abs());
                max_member = max_member
                    .max(oc.radial_residual((x.x1(), x.x2())).abs())
                    .max(oc.radial_residual((y.x1(), y.x2())).abs());
                let chord_form = radius_by_chord(x, y).expect("noncollinear");
                max_radius_gap = max_radius_gap.max((chord_form - oc.radius()).abs());
            }
            GeodesicCarrier::Diameter { .. } => all_circles = false,
        }
    }
    PropertyCheck {
        name: "orthocircle_geometry",
        passed: all_circles && max_orth <= 1e-10 && max_member <= 1e-10 && max_radius_gap <= 1e-9,
        detail: format!(
            "orthogonality {:.3e}, membership {:.3e}, radius forms {:.3e} over {} pairs",
            max_orth, max_member, max_radius_gap, n
        ),
    }
}

fn check_quad_identities(seed: u64, n: usize) -> PropertyCheck {
    let mut rng = rng_for(seed, 4);
    let mut max_tangent = 0.0f64;
    let mut max_sine = 0.0f64;
    let mut max_leg = 0.0f64;
    let mut sides_ok = true;
    for _ in 0..n {
        let t = 0.05 + 0.90 * rng.gen::<f64>();
        let theta = (0.05 + 0.90 * rng.gen::<f64>()) * std::f64::consts::FRAC_PI_2;
        let params = QuadParams::new(t, theta).expect("sampled in range");
        let quad = build_quad(params);
        let s = params.s();
        let m = params.m();
        max_tangent = max_tangent
            .max((quad.d1.tanh() - s * params.r()).abs())
            .max((quad.d2.tanh() - s * params.r_perp()).abs());
        let sine_scale = 1.0 + m;
        max_sine = max_sine
            .max((quad.d3.sinh() - m * params.r_perp()).abs() / sine_scale)
            .max((quad.d4.sinh() - m * params.r()).abs() / sine_scale);
        max_leg = max_leg
            .max((disk_distance(quad.v_b, quad.v_c) - quad.d3).abs())
            .max((disk_distance(quad.v_c, quad.v_d) - quad.d4).abs());
        sides_ok &= side_lengths_direct(params).is_ok();
    }
    PropertyCheck {
        name: "quad_identities",
        passed: sides_ok && max_tangent <= 1e-12 && max_sine <= 1e-12 && max_leg <= 1e-10,
        detail: format!(
            "tangent {:.3e}, scaled sine {:.3e}, metric legs {:.3e} over {} quads",
            max_tangent, max_sine, max_leg, n
        ),
    }
}

fn check_sharp_bounds() -> PropertyCheck {
    let mut worst = f64::NEG_INFINITY;
    let mut max_form_gap = 0.0f64;
    let mut ok = true;
    for s in [0.3, 0.7, 0.95] {
        match verify_sharp_bounds(s, 501) {
            Ok(report) => worst = worst.max(report.max_violation),
            Err(_) => ok = false,
        }
        let pb = product_bound(s).expect("s in range");
        let pb_log = product_bound_log_form(s).expect("s in range");
        let (_, hi) = sum_bounds(s).expect("s in range");
        let hi_log = sum_upper_log_form(s).expect("s in range");
        max_form_gap = max_form_gap
            .max((pb - pb_log).abs())
            .max((hi - hi_log).abs());
    }
    PropertyCheck {
        name: "sharp_bounds",
        passed: ok && worst < 0.0 && max_form_gap <= 1e-12,
        detail: format!(
            "largest signed bound excess {:.3e}, bound form gap {:.3e}",
            worst, max_form_gap
        ),
    }
}

fn check_side_ratio_monotone() -> PropertyCheck {
    let s: f64 = 0.7;
    let m = s / ((1.0 - s) * (1.0 + s)).sqrt();
    let sup = 1.0 / ((1.0 - s) * (1.0 + s)).sqrt();
    let pts: Vec<(f64, f64)> = (1..200)
        .map(|k| {
            let x = k as f64 / 200.0;
            (x, (m * x).asinh() / (s * x).atanh())
        })
        .collect();
    let monotone = check_monotone(&pts, Direction::Decreasing).unwrap_or(false);
    let in_range = pts.iter().all(|&(_, v)| v > 1.0 && v < sup);
    PropertyCheck {
        name: "side_ratio_monotone",
        passed: monotone && in_range,
        detail: format!(
            "ratio decreasing over {} points, range ({:.3e}, {:.3e})",
            pts.len(),
            pts.last().map(|p| p.1).unwrap_or(f64::NAN),
            pts.first().map(|p| p.1).unwrap_or(f64::NAN),
        ),
    }
}

fn check_holder_means(seed: u64, n: usize) -> PropertyCheck {
    let mut rng = rng_for(seed, 5);
    let mut max_sandwich = 0.0f64;
    let mut max_order = 0.0f64;
    for _ in 0..n {
        let r = (rng.gen::<f64>() * 4.0 - 2.0).exp2();
        let s = (rng.gen::<f64>() * 4.0 - 2.0).exp2();
        let p1 = rng.gen::<f64>() * 10.0 - 5.0;
        let p2 = rng.gen::<f64>() * 10.0 - 5.0;
        let (lo_p, hi_p) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let m_lo = holder_mean(lo_p, r, s).expect("positive arguments");
        let m_hi = holder_mean(hi_p, r, s).expect("positive arguments");
        let hi_val = r.max(s);
        max_sandwich = max_sandwich
            .max(r.min(s) - m_lo)
            .max(m_hi - hi_val);
        max_order = max_order.max((m_lo - m_hi) / hi_val.max(1.0));
    }
    PropertyCheck {
        name: "holder_means",
        passed: max_sandwich <= 1e-12 && max_order <= 1e-12,
        detail: format!(
            "sandwich excess {:.3e}, order violation {:.3e} over {} draws",
            max_sandwich, max_order, n
        ),
    }
}

fn check_critical_curve() -> PropertyCheck {
    let mut max_anchor = 0.0f64;
    let mut max_dual = 0.0f64;
    let mut ok = true;
    match critical_curve(-2.0 + 1e-6) {
        Ok(c) => max_anchor = max_anchor.max((c + 2.0).abs() - 1e-6),
        Err(_) => ok = false,
    }
    match critical_curve(-1e-6) {
        Ok(c) => max_anchor = max_anchor.max((c - 1.0).abs() - 1e-5),
        Err(_) => ok = false,
    }
    match critical_curve(-1.0) {
        Ok(c) => max_anchor = max_anchor.max((c + 0.8644671467199163).abs()),
        Err(_) => ok = false,
    }
    for k in 1..=10 {
        let p = -2.0 + 2.0 * k as f64 / 11.0;
        let bisected = critical_curve(p);
        let maximized = golden_section_max(
            |u| critical_exponent(p, u.exp()),
            1e-6f64.ln(),
            1e6f64.ln(),
            1e-10,
        );
        match (bisected, maximized) {
            (Ok(c), Ok((_, peak))) => max_dual = max_dual.max((c - peak).abs()),
            _ => ok = false,
        }
    }
    PropertyCheck {
        name: "critical_curve",
        passed: ok && max_anchor <= 1e-9 && max_dual <= 1e-9,
        detail: format!(
            "anchor slack {:.3e}, dual-route gap {:.3e} over 10 interior points",
            max_anchor, max_dual
        ),
    }
}

fn check_convexity_regions(seed: u64, n: usize) -> PropertyCheck {
    let pairs_per_cell = n.clamp(100, 2000);
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut ok = true;
    for i in 0..9 {
        for j in 0..9 {
            let p = -4.0 + i as f64;
            let q = -4.0 + j as f64;
            let class = match classify_asinh_convexity(p, q) {
                Ok(c) => c,
                Err(_) => {
                    ok = false;
                    continue;
                }
            };
            if class == ConvexityClass::Boundary {
                skipped += 1;
                continue;
            }
            let cell_seed = seed.wrapping_add(((i * 9 + j) as u64).wrapping_mul(0x9e3779b97f4a7c15));
            let counts = match empirical_convexity_test(p, q, pairs_per_cell, 1e3, cell_seed) {
                Ok(c) => c,
                Err(_) => {
                    ok = false;
                    continue;
                }
            };
            checked += 1;
            // sampling may never contradict the classification
            match class {
                ConvexityClass::StrictlyConvex => ok &= counts.positive == 0,
                ConvexityClass::StrictlyConcave => ok &= counts.negative == 0,
                ConvexityClass::Neither | ConvexityClass::Boundary => {}
            }
        }
    }
    PropertyCheck {
        name: "convexity_regions",
        passed: ok,
        detail: format!(
            "{} cells sampled with {} pairs each, {} boundary cells skipped",
            checked, pairs_per_cell, skipped
        ),
    }
}

fn check_chordal_infinity() -> PropertyCheck {
    let f = chordal_distance(
        ExtendedPoint::Finite(1.0, 0.0),
        ExtendedPoint::Finite(0.0, 1.0),
    );
    let g = chordal_distance(ExtendedPoint::Finite(1.0, 0.0), ExtendedPoint::Infinity);
    let both = chordal_distance(ExtendedPoint::Infinity, ExtendedPoint::Infinity);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let res = (f - inv_sqrt2).abs().max((g - inv_sqrt2).abs()).max(both);
    PropertyCheck {
        name: "chordal_infinity",
        passed: res <= 1e-15,
        detail: format!("closed-form values match to {:.3e}", res),
    }
}

/// Run every property check with the given seed and sample count.
pub fn run_suite(seed: u64, n: usize) -> Vec<PropertyCheck> {
    vec![
        check_metric_axioms(seed, n),
        check_cross_ratio_forms(seed, n),
        check_distance_oracles(seed, n),
        check_orthocircle_geometry(seed, n),
        check_quad_identities(seed, n),
        check_sharp_bounds(),
        check_side_ratio_monotone(),
        check_holder_means(seed, n),
        check_critical_curve(),
        check_convexity_regions(seed, n),
        check_chordal_infinity(),
    ]
}
