//! Lambert quadrilaterals anchored at the origin of the disk.
//!
//! The quadrilateral keyed by (t, theta) has vertices
//!
//! * v_a at the origin,
//! * v_b on the positive first axis,
//! * v_d on the positive second axis,
//! * v_c = t (cos theta, sin theta),
//!
//! with right angles at v_a, v_b, v_d and an acute angle phi at v_c.
//! Writing s = 2t/(1+t^2), m = 2t/(1-t^2), r = cos theta and
//! r' = sin theta, the four sides have lengths
//!
//! * d1 = atanh(s r)   from v_a to v_b,
//! * d2 = atanh(s r')  from v_a to v_d,
//! * d3 = asinh(m r')  from v_b to v_c,
//! * d4 = asinh(m r)   from v_c to v_d,
//!
//! and cos phi = sinh(d1) sinh(d2). Over theta at fixed s the opposite
//! sides satisfy sharp product and sum bounds attained at r = sqrt(2)/2;
//! `verify_sharp_bounds` sweeps a grid and checks all of them.

use crate::error::Error;
use crate::metric::{disk_distance, DiskPoint};

// slack for non-strict bound comparisons in the sweep
const BOUND_SLACK: f64 = 1e-13;
// three-way agreement requirement between independent side-length routes
const SIDE_AGREE_TOL: f64 = 1e-10;
// residual allowance in the half-angle identity, scaled by (1 + m)
const HALF_SINH_IDENTITY_TOL: f64 = 1e-12;

/// Shape parameters of a quadrilateral: corner norm t in (0,1) and
/// corner direction theta in (0, pi/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadParams {
    t: f64,
    theta: f64,
}

impl QuadParams {
    pub fn new(t: f64, theta: f64) -> Result<Self, Error> {
        if !t.is_finite() || !theta.is_finite() {
            return Err(Error::NonFinite);
        }
        if t <= 0.0 || t >= 1.0 {
            return Err(Error::Domain("corner norm t must lie in (0, 1)"));
        }
        if theta <= 0.0 || theta >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::Domain("corner angle must lie in (0, pi/2)"));
        }
        Ok(QuadParams { t, theta })
    }

    /// Same quadrilateral addressed by s = 2t/(1+t^2) and r = cos theta.
    pub fn from_s_r(s: f64, r: f64) -> Result<Self, Error> {
        if !s.is_finite() || !r.is_finite() {
            return Err(Error::NonFinite);
        }
        if s <= 0.0 || s >= 1.0 {
            return Err(Error::Domain("diagonal parameter s must lie in (0, 1)"));
        }
        if r <= 0.0 || r >= 1.0 {
            return Err(Error::Domain("direction cosine r must lie in (0, 1)"));
        }
        // t solves s = 2t/(1+t^2) with t < 1
        let t = s / (1.0 + ((1.0 - s) * (1.0 + s)).sqrt());
        QuadParams::new(t, r.acos())
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn s(&self) -> f64 {
        2.0 * self.t / (1.0 + self.t * self.t)
    }

    pub fn m(&self) -> f64 {
        2.0 * self.t / ((1.0 - self.t) * (1.0 + self.t))
    }

    pub fn r(&self) -> f64 {
        self.theta.cos()
    }

    pub fn r_perp(&self) -> f64 {
        self.theta.sin()
    }
}

/// A realized quadrilateral: vertices, side lengths, acute angle.
#[derive(Debug, Clone, Copy)]
pub struct LambertQuad {
    pub v_a: DiskPoint,
    pub v_b: DiskPoint,
    pub v_c: DiskPoint,
    pub v_d: DiskPoint,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    pub phi: f64,
    pub params: QuadParams,
}

/// Euclidean norm of the foot vertex on a ray with direction cosine x,
/// s x / (1 + sqrt((1 - s x)(1 + s x))). Equals tanh of half the
/// corresponding side through the origin; at x = 1 it recovers t.
pub fn vertex_norm(s: f64, x: f64) -> f64 {
    let sx = s * x;
    sx / (1.0 + ((1.0 - sx) * (1.0 + sx)).sqrt())
}

/// sinh of half the side from v_b to v_c, from the chordal form of the
/// metric. Independent of the asinh(m r') route.
pub fn side_half_sinh(s: f64, r: f64) -> f64 {
    let g = vertex_norm(s, r);
    let t = vertex_norm(s, 1.0);
    // g^2 + t^2 - 2 r g t, grouped so nothing cancels as r -> 1
    let chord_sq = (g - t) * (g - t) + 2.0 * g * t * (1.0 - r);
    let denom = (1.0 - g * g) * (1.0 - t * t);
    (chord_sq / denom).sqrt()
}

/// Realize the quadrilateral with the given parameters.
pub fn build_quad(params: QuadParams) -> LambertQuad {
    let s = params.s();
    let m = params.m();
    let r = params.r();
    let rp = params.r_perp();
    let d1 = (s * r).atanh();
    let d2 = (s * rp).atanh();
    let d3 = (m * rp).asinh();
    let d4 = (m * r).asinh();
    let v_a = DiskPoint::origin();
    let v_b = DiskPoint::new(vertex_norm(s, r), 0.0).expect("vertex inside the unit disk");
    let v_d = DiskPoint::new(0.0, vertex_norm(s, rp)).expect("vertex inside the unit disk");
    let v_c =
        DiskPoint::new(params.t() * r, params.t() * rp).expect("vertex inside the unit disk");
    let phi = (d1.sinh() * d2.sinh()).clamp(-1.0, 1.0).acos();
    LambertQuad {
        v_a,
        v_b,
        v_c,
        v_d,
        d1,
        d2,
        d3,
        d4,
        phi,
        params,
    }
}

/// Side lengths (d3, d4) computed three independent ways: the asinh
/// closed forms, the half-angle chordal route, and the disk metric
/// between realized vertices. All three must agree or the call fails
/// with the offending residual.
pub fn side_lengths_direct(params: QuadParams) -> Result<(f64, f64), Error> {
    let quad = build_quad(params);
    let s = params.s();
    let m = params.m();
    let r = params.r();
    let rp = params.r_perp();

    let half3 = side_half_sinh(s, r);
    let half4 = side_half_sinh(s, rp);
    let d3_half = 2.0 * half3.asinh();
    let d4_half = 2.0 * half4.asinh();
    let d3_metric = disk_distance(quad.v_b, quad.v_c);
    let d4_metric = disk_distance(quad.v_c, quad.v_d);

    let checks: [(&'static str, f64, f64); 4] = [
        ("d3 half-angle route", quad.d3 - d3_half, rp),
        ("d3 metric route", quad.d3 - d3_metric, rp),
        ("d4 half-angle route", quad.d4 - d4_half, r),
        ("d4 metric route", quad.d4 - d4_metric, r),
    ];
    for (check, residual, at) in checks {
        if residual.abs() > SIDE_AGREE_TOL {
            return Err(Error::VerificationFailure {
                check,
                at,
                residual,
            });
        }
    }

    // sinh(d/2) cosh(d/2) = sinh(d)/2 ties the chordal route to m
    let identity_tol = HALF_SINH_IDENTITY_TOL * (1.0 + m);
    let res3 = half3 * (1.0 + half3 * half3).sqrt() - 0.5 * m * rp;
    let res4 = half4 * (1.0 + half4 * half4).sqrt() - 0.5 * m * r;
    if res3.abs() > identity_tol {
        return Err(Error::VerificationFailure {
            check: "d3 half-angle identity",
            at: rp,
            residual: res3,
        });
    }
    if res4.abs() > identity_tol {
        return Err(Error::VerificationFailure {
            check: "d4 half-angle identity",
            at: r,
            residual: res4,
        });
    }
    Ok((quad.d3, quad.d4))
}

fn require_unit_interval(s: f64) -> Result<(), Error> {
    if !s.is_finite() {
        return Err(Error::NonFinite);
    }
    if s <= 0.0 || s >= 1.0 {
        return Err(Error::Domain("diagonal parameter s must lie in (0, 1)"));
    }
    Ok(())
}

fn slope_of(s: f64) -> f64 {
    s / ((1.0 - s) * (1.0 + s)).sqrt()
}

/// Largest value of d3 * d4 over all quadrilaterals with diagonal
/// parameter s, asinh(m / sqrt(2))^2 with m = s / sqrt(1 - s^2).
pub fn product_bound(s: f64) -> Result<f64, Error> {
    require_unit_interval(s)?;
    let v = (slope_of(s) * std::f64::consts::FRAC_1_SQRT_2).asinh();
    Ok(v * v)
}

/// The same product bound written as a squared logarithm,
/// (log sqrt((1 + s sqrt(2 - s^2)) / (1 - s^2)))^2. Kept as an
/// independent route for cross-checking.
pub fn product_bound_log_form(s: f64) -> Result<f64, Error> {
    require_unit_interval(s)?;
    let x = (1.0 + s * (2.0 - s * s).sqrt()) / ((1.0 - s) * (1.0 + s));
    let half_log = 0.5 * x.ln();
    Ok(half_log * half_log)
}

/// Range of d3 + d4 at fixed s: strictly above atanh(s), at most
/// 2 asinh(m / sqrt(2)), the upper value attained only at
/// r = sqrt(2)/2. Returned as (lower, upper).
pub fn sum_bounds(s: f64) -> Result<(f64, f64), Error> {
    require_unit_interval(s)?;
    let lower = s.atanh();
    let upper = 2.0 * (slope_of(s) * std::f64::consts::FRAC_1_SQRT_2).asinh();
    Ok((lower, upper))
}

/// The sum upper bound as a plain logarithm,
/// log((1 + s sqrt(2 - s^2)) / (1 - s^2)).
pub fn sum_upper_log_form(s: f64) -> Result<f64, Error> {
    require_unit_interval(s)?;
    Ok(((1.0 + s * (2.0 - s * s).sqrt()) / ((1.0 - s) * (1.0 + s))).ln())
}

/// One grid point of a bound sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub r: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    pub product: f64,
    pub sum: f64,
}

/// Result of sweeping the bounds over a direction grid at fixed s.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub s: f64,
    pub product_bound: f64,
    pub sum_lower: f64,
    pub sum_upper: f64,
    pub rows: Vec<SweepRow>,
    /// Largest signed excess over any bound seen on the grid; negative
    /// means every bound held with room to spare.
    pub max_violation: f64,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,d1,d2,d3,d4,product,sum,product_bound,sum_lower,sum_upper\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e}\n",
                row.r,
                row.d1,
                row.d2,
                row.d3,
                row.d4,
                row.product,
                row.sum,
                self.product_bound,
                self.sum_lower,
                self.sum_upper,
            ));
        }
        out
    }
}

/// Sweep r over the grid k/(n+1), k = 1..=n, at fixed s, and verify:
///
/// * d3 * d4 stays at or below the product bound,
/// * d3 + d4 stays in (atanh(s), sum upper],
/// * the strict side comparisons d2 < d3 < d2 / sqrt(1-s^2) and
///   d1 < d4 < d1 / sqrt(1-s^2) hold pointwise,
/// * product and sum increase strictly up to r = sqrt(2)/2 and
///   decrease strictly after it, peaking within one grid step of it,
/// * at r = sqrt(2)/2 exactly both bounds are attained to 1e-13.
///
/// Any failure reports which check broke, where, and by how much.
pub fn verify_sharp_bounds(s: f64, n: usize) -> Result<SweepReport, Error> {
    require_unit_interval(s)?;
    if n < 10 {
        return Err(Error::Domain("bound sweep needs a grid of at least 10"));
    }
    let pb = product_bound(s)?;
    let (lo, hi) = sum_bounds(s)?;
    let inv_gap = 1.0 / ((1.0 - s) * (1.0 + s)).sqrt();
    let r_peak = std::f64::consts::FRAC_1_SQRT_2;
    let step = 1.0 / (n as f64 + 1.0);

    let mut rows = Vec::with_capacity(n);
    let mut max_violation = f64::NEG_INFINITY;
    for k in 1..=n {
        let r = k as f64 * step;
        let quad = build_quad(QuadParams::from_s_r(s, r)?);
        let product = quad.d3 * quad.d4;
        let sum = quad.d3 + quad.d4;

        let excesses = [product - pb, sum - hi, lo - sum];
        for e in excesses {
            if e > max_violation {
                max_violation = e;
            }
        }
        if product - pb > BOUND_SLACK {
            return Err(Error::VerificationFailure {
                check: "product bound",
                at: r,
                residual: product - pb,
            });
        }
        if sum - hi > BOUND_SLACK {
            return Err(Error::VerificationFailure {
                check: "sum upper bound",
                at: r,
                residual: sum - hi,
            });
        }
        if sum <= lo {
            return Err(Error::VerificationFailure {
                check: "sum lower bound",
                at: r,
                residual: lo - sum,
            });
        }
        let strict: [(&'static str, f64); 4] = [
            ("side bound d2 < d3", quad.d3 - quad.d2),
            ("side bound d3 < d2/sqrt(1-s^2)", quad.d2 * inv_gap - quad.d3),
            ("side bound d1 < d4", quad.d4 - quad.d1),
            ("side bound d4 < d1/sqrt(1-s^2)", quad.d1 * inv_gap - quad.d4),
        ];
        for (check, margin) in strict {
            if margin <= 0.0 {
                return Err(Error::VerificationFailure {
                    check,
                    at: r,
                    residual: -margin,
                });
            }
        }
        rows.push(SweepRow {
            r,
            d1: quad.d1,
            d2: quad.d2,
            d3: quad.d3,
            d4: quad.d4,
            product,
            sum,
        });
    }

    // unimodal shape: strictly up before the peak, strictly down after
    for w in rows.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.r <= r_peak {
            if b.product <= a.product {
                return Err(Error::VerificationFailure {
                    check: "product increasing below sqrt(2)/2",
                    at: b.r,
                    residual: a.product - b.product,
                });
            }
            if b.sum <= a.sum {
                return Err(Error::VerificationFailure {
                    check: "sum increasing below sqrt(2)/2",
                    at: b.r,
                    residual: a.sum - b.sum,
                });
            }
        } else if a.r >= r_peak {
            if b.product >= a.product {
                return Err(Error::VerificationFailure {
                    check: "product decreasing above sqrt(2)/2",
                    at: b.r,
                    residual: b.product - a.product,
                });
            }
            if b.sum >= a.sum {
                return Err(Error::VerificationFailure {
                    check: "sum decreasing above sqrt(2)/2",
                    at: b.r,
                    residual: b.sum - a.sum,
                });
            }
        }
    }

    let argmax_product = rows
        .iter()
        .max_by(|a, b| a.product.total_cmp(&b.product))
        .expect("grid is nonempty")
        .r;
    let argmax_sum = rows
        .iter()
        .max_by(|a, b| a.sum.total_cmp(&b.sum))
        .expect("grid is nonempty")
        .r;
    if (argmax_product - r_peak).abs() > step + 1e-9 {
        return Err(Error::VerificationFailure {
            check: "product peak near sqrt(2)/2",
            at: argmax_product,
            residual: (argmax_product - r_peak).abs(),
        });
    }
    if (argmax_sum - r_peak).abs() > step + 1e-9 {
        return Err(Error::VerificationFailure {
            check: "sum peak near sqrt(2)/2",
            at: argmax_sum,
            residual: (argmax_sum - r_peak).abs(),
        });
    }

    // equality case, evaluated at the peak itself rather than on the grid
    let peak = build_quad(QuadParams::from_s_r(s, r_peak)?);
    let eq_product = peak.d3 * peak.d4 - pb;
    let eq_sum = peak.d3 + peak.d4 - hi;
    if eq_product.abs() > BOUND_SLACK || eq_sum.abs() > BOUND_SLACK {
        return Err(Error::VerificationFailure {
            check: "equality at r = sqrt(2)/2",
            at: r_peak,
            residual: if eq_product.abs() > eq_sum.abs() {
                eq_product
            } else {
                eq_sum
            },
        });
    }

    Ok(SweepReport {
        s,
        product_bound: pb,
        sum_lower: lo,
        sum_upper: hi,
        rows,
        max_violation,
    })
}
