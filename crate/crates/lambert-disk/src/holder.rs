//! Power means and the convexity classification of asinh against them.
//!
//! The central question: for which exponent pairs (p, q) does applying
//! asinh to a p-mean of positive numbers land below (convex case) or
//! above (concave case) the q-mean of the asinh images. The dividing
//! line through the square -2 <= p <= 0 is a curve p -> C(p) computed
//! here by locating the stationary point of an auxiliary exponent
//! function; everything else reduces to comparisons against p itself.

use crate::error::Error;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::f64::consts::LN_2;

// |p| below this is treated as the geometric limit of the power mean
const GEOMETRIC_CUTOFF: f64 = 1e-8;
// |defect| below this counts as zero in empirical sign counts
const SIGN_ZERO_TOL: f64 = 1e-13;
// half-width of the band around C(p) reported as Boundary
const BOUNDARY_BAND: f64 = 1e-9;
// slack allowed by check_monotone before calling a sequence non-monotone
const MONOTONE_SLACK: f64 = 1e-13;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Power mean ((r^p + s^p)/2)^(1/p) of two positive numbers, with the
/// geometric mean at p = 0. Normalized by the larger argument so large
/// |p| cannot overflow.
pub fn holder_mean(p: f64, r: f64, s: f64) -> Result<f64, Error> {
    if !p.is_finite() || !r.is_finite() || !s.is_finite() {
        return Err(Error::NonFinite);
    }
    if r <= 0.0 || s <= 0.0 {
        return Err(Error::Domain("power means take positive arguments"));
    }
    if p.abs() < GEOMETRIC_CUTOFF {
        return Ok((r * s).sqrt());
    }
    let (lo, hi) = if r <= s { (r, s) } else { (s, r) };
    Ok(hi * (0.5 * (1.0 + (lo / hi).powf(p))).powf(1.0 / p))
}

/// asinh(r)/r, extended by its limit 1 at r = 0. Even in r.
pub fn asinh_over_r(r: f64) -> f64 {
    let a = r.abs();
    if a < 1e-4 {
        return 1.0 - a * a / 6.0;
    }
    if a > 1e8 {
        // asinh(a) = log(2a) up to O(1/a^2), and a*a may overflow
        return (a.ln() + LN_2) / a;
    }
    a.asinh() / a
}

/// (r (1 + r^2) - sqrt(1 + r^2) asinh(r)) / r^3, the normalized gap
/// between asinh and its first-order behavior. Rises from 2/3 at r = 0
/// toward 1. Even in r. Series below 1e-2, a reciprocal form above
/// 1e4; in between the raw quotient is already stable.
pub fn asinh_defect_ratio(r: f64) -> f64 {
    let a = r.abs();
    if a < 1e-2 {
        let a2 = a * a;
        return 2.0 / 3.0 + (2.0 / 15.0) * a2 - (8.0 / 105.0) * a2 * a2;
    }
    if a > 1e4 {
        let inv2 = 1.0 / (a * a);
        let ash = if a > 1e8 { a.ln() + LN_2 } else { a.asinh() };
        return 1.0 + inv2 - (1.0 + inv2).sqrt() * ash * inv2;
    }
    let c = (1.0 + a * a).sqrt();
    (a * (1.0 + a * a) - c * a.asinh()) / (a * a * a)
}

/// The exponent h_p(r) = 1 + (asinh(r)/r)(p sqrt(1+r^2) - 1/sqrt(1+r^2))
/// comparing q-mean growth against a p-mean through asinh. Tends to p
/// as r -> 0. Even in r.
pub fn critical_exponent(p: f64, r: f64) -> f64 {
    let a = r.abs();
    if a > 1e8 {
        // sqrt(1 + a^2) collapses to a at this scale and a*a may overflow
        let ash = a.ln() + LN_2;
        return 1.0 + p * ash - ash / (a * a);
    }
    let c = (1.0 + a * a).sqrt();
    1.0 + asinh_over_r(a) * (p * c - 1.0 / c)
}

// strictly increasing reparametrization of the stationary-point
// condition for h_p: the unique root of f(r) = p locates the interior
// extremum. Ranges over (-2, 0).
fn stationary_order(r: f64) -> f64 {
    2.0 - 1.0 / (1.0 + r * r) - 2.0 / asinh_defect_ratio(r)
}

/// C(p), the largest q for which the convex comparison can still fail:
/// the interior maximum of r -> h_p(r). Defined for p in (-2, 0);
/// C(-2+) = -2 and C(0-) = 1.
pub fn critical_curve(p: f64) -> Result<f64, Error> {
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    if p <= -2.0 || p >= 0.0 {
        return Err(Error::Domain("critical curve is defined for p in (-2, 0)"));
    }
    // bracket the root of stationary_order(r) = p, then bisect
    let mut lo = 1.0f64;
    let mut hi = 1.0f64;
    if stationary_order(1.0) < p {
        while stationary_order(hi) < p {
            hi *= 2.0;
        }
    } else {
        while stationary_order(lo) >= p {
            lo *= 0.5;
        }
    }
    while hi - lo > 1e-14 * hi {
        let mid = 0.5 * (lo + hi);
        if stationary_order(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // h_p is stationary at the root, so the bisection width enters the
    // value only quadratically
    Ok(critical_exponent(p, 0.5 * (lo + hi)))
}

/// Integrand kernel asinh(r)^(q-1) / (r^(p-1) sqrt(1+r^2)) whose
/// log-derivative has the sign of q - h_p(r). Only meaningful for r > 0.
pub fn convexity_kernel(p: f64, q: f64, r: f64) -> f64 {
    r.asinh().powf(q - 1.0) / (r.powf(p - 1.0) * (1.0 + r * r).sqrt())
}

/// Where a pair (p, q) falls relative to the comparison theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexityClass {
    /// asinh(p-mean) < q-mean(asinh) for all distinct positive pairs
    StrictlyConvex,
    /// asinh(p-mean) > q-mean(asinh) for all distinct positive pairs
    StrictlyConcave,
    /// neither inequality holds everywhere
    Neither,
    /// within 1e-9 of the dividing curve, too close to classify
    Boundary,
}

/// Classify the comparison between asinh of a p-mean and the q-mean of
/// asinh values:
///
/// * p < -2: convex exactly when q >= p,
/// * -2 <= p <= 0: convex exactly when q >= C(p), with C(-2) = -2 and
///   C(0) = 1; for p = 0 additionally concave when q <= 0,
/// * p > 0: concave exactly when q <= p,
/// * everything else mixes signs.
pub fn classify_asinh_convexity(p: f64, q: f64) -> Result<ConvexityClass, Error> {
    if !p.is_finite() || !q.is_finite() {
        return Err(Error::NonFinite);
    }
    if p < -2.0 {
        return Ok(if q >= p {
            ConvexityClass::StrictlyConvex
        } else {
            ConvexityClass::Neither
        });
    }
    if p <= 0.0 {
        let c = if p == -2.0 {
            -2.0
        } else if p == 0.0 {
            1.0
        } else {
            critical_curve(p)?
        };
        if p > -2.0 && p < 0.0 && (q - c).abs() < BOUNDARY_BAND {
            return Ok(ConvexityClass::Boundary);
        }
        if q >= c {
            return Ok(ConvexityClass::StrictlyConvex);
        }
        if p == 0.0 && q <= 0.0 {
            return Ok(ConvexityClass::StrictlyConcave);
        }
        return Ok(ConvexityClass::Neither);
    }
    Ok(if q <= p {
        ConvexityClass::StrictlyConcave
    } else {
        ConvexityClass::Neither
    })
}

/// Signed gap asinh(H_p(x, y)) - H_q(asinh x, asinh y). Nonpositive
/// everywhere in the convex regime, nonnegative in the concave one.
pub fn convexity_defect(p: f64, q: f64, x: f64, y: f64) -> Result<f64, Error> {
    let inner = holder_mean(p, x, y)?;
    let outer = holder_mean(q, x.asinh(), y.asinh())?;
    Ok(inner.asinh() - outer)
}

/// Sign tallies of sampled convexity defects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCounts {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

/// Sample n_pairs log-uniform pairs from (1e-3, range_hi) and count the
/// sign of the convexity defect at each. Deterministic in the seed.
pub fn empirical_convexity_test(
    p: f64,
    q: f64,
    n_pairs: usize,
    range_hi: f64,
    seed: u64,
) -> Result<SignCounts, Error> {
    if !p.is_finite() || !q.is_finite() || !range_hi.is_finite() {
        return Err(Error::NonFinite);
    }
    if n_pairs < 100 {
        return Err(Error::InsufficientSamples);
    }
    if range_hi <= 1.0 {
        return Err(Error::Domain("sampling range must extend past 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_lo = 1e-3f64.ln();
    let log_span = range_hi.ln() - log_lo;
    let mut counts = SignCounts {
        negative: 0,
        zero: 0,
        positive: 0,
    };
    for _ in 0..n_pairs {
        let x = (log_lo + rng.gen::<f64>() * log_span).exp();
        let y = (log_lo + rng.gen::<f64>() * log_span).exp();
        let defect = convexity_defect(p, q, x, y)?;
        if defect > SIGN_ZERO_TOL {
            counts.positive += 1;
        } else if defect < -SIGN_ZERO_TOL {
            counts.negative += 1;
        } else {
            counts.zero += 1;
        }
    }
    Ok(counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Whether consecutive ordinates move in the given direction, allowing
/// 1e-13 of roundoff slack. Abscissae must be strictly increasing.
pub fn check_monotone(pts: &[(f64, f64)], direction: Direction) -> Result<bool, Error> {
    if pts.len() < 2 {
        return Err(Error::InsufficientSamples);
    }
    for w in pts.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::Domain("abscissae must be strictly increasing"));
        }
        let step = w[1].1 - w[0].1;
        let ok = match direction {
            Direction::Increasing => step > -MONOTONE_SLACK,
            Direction::Decreasing => step < MONOTONE_SLACK,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Golden-section search for the maximum of a unimodal function on
/// [lo, hi]. Returns (argmax, max) once the bracket narrows below tol.
pub fn golden_section_max<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<(f64, f64), Error> {
    if !lo.is_finite() || !hi.is_finite() || !tol.is_finite() {
        return Err(Error::NonFinite);
    }
    if lo >= hi || tol <= 0.0 {
        return Err(Error::Domain(
            "search needs lo < hi and a positive tolerance",
        ));
    }
    let mut a = lo;
    let mut b = hi;
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn test_holder_mean_classical_values() {
        assert!((holder_mean(0.0, 4.0, 9.0).unwrap() - 6.0).abs() < 1e-14);
        assert!((holder_mean(1e-12, 4.0, 9.0).unwrap() - 6.0).abs() < 1e-14);
        assert!((holder_mean(1.0, 2.0, 4.0).unwrap() - 3.0).abs() < 1e-14);
        assert!((holder_mean(-1.0, 2.0, 6.0).unwrap() - 3.0).abs() < 1e-14);
        assert!((holder_mean(2.0, 1.0, 7.0).unwrap() - 5.0).abs() < 1e-14);
        assert!((holder_mean(-7.5, 3.0, 3.0).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn test_holder_mean_rejects_bad_arguments() {
        assert!(matches!(
            holder_mean(1.0, -1.0, 2.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(holder_mean(1.0, 0.0, 2.0), Err(Error::Domain(_))));
        assert_eq!(holder_mean(f64::NAN, 1.0, 2.0), Err(Error::NonFinite));
    }

    #[test]
    fn test_asinh_over_r_values_and_seam() {
        assert_eq!(asinh_over_r(0.0), 1.0);
        assert!((asinh_over_r(1.0) - 0.881373587019543).abs() < 1e-15);
        assert!((asinh_over_r(-1.0) - 0.881373587019543).abs() < 1e-15);
        // series-to-quotient seam at 1e-4
        assert!((asinh_over_r(0.99999e-4) - asinh_over_r(1.00001e-4)).abs() < 1e-12);
        let far = asinh_over_r(1e9);
        assert!(far > 0.0 && far < 1e-7);
    }

    #[test]
    fn test_asinh_defect_ratio_values_and_seams() {
        assert!((asinh_defect_ratio(1e-8) - 2.0 / 3.0).abs() < 1e-15);
        assert!((asinh_defect_ratio(1.0) - 0.753549519719539).abs() < 1e-15);
        // the function itself moves by ~5e-10 across this bracket; only
        // a branch mismatch would push the gap past that
        assert!((asinh_defect_ratio(0.0099999) - asinh_defect_ratio(0.0100001)).abs() < 1e-9);
        assert!((asinh_defect_ratio(9999.9) - asinh_defect_ratio(10000.1)).abs() < 1e-10);
        assert!((asinh_defect_ratio(1e9) - 1.0).abs() < 1e-12);
        let grid: Vec<(f64, f64)> = (1..200)
            .map(|k| {
                let r = k as f64 * 0.05;
                (r, asinh_defect_ratio(r))
            })
            .collect();
        assert!(check_monotone(&grid, Direction::Increasing).unwrap());
    }

    #[test]
    fn test_critical_exponent_values() {
        assert!((critical_exponent(1.0, 1.0) - 1.6232252401402305).abs() < 1e-14);
        for p in [-1.5, 0.3, 2.0] {
            assert!((critical_exponent(p, 1e-12) - p).abs() < 1e-9);
            // large-r branch against the collapsed closed form
            for r in [9.9e7f64, 1.1e8] {
                let ash = (2.0 * r).ln();
                let expect = 1.0 + p * ash - ash / (r * r);
                assert!((critical_exponent(p, r) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn test_critical_curve_frozen_and_limits() {
        assert!((critical_curve(-1.0).unwrap() + 0.8644671467199163).abs() < 1e-10);
        let near_left = critical_curve(-2.0 + 1e-6).unwrap();
        assert!((near_left + 2.0 - 1.0000001e-6).abs() < 1e-12);
        let near_right = critical_curve(-1e-6).unwrap();
        assert!((near_right - 1.0 + 9.548e-6).abs() < 1e-9);
        for bad in [-2.0, 0.0, 0.5, -3.0] {
            assert!(matches!(critical_curve(bad), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn test_critical_curve_matches_direct_maximization() {
        for p in [-1.5, -1.0, -0.5, -0.1] {
            let c = critical_curve(p).unwrap();
            let (_, max) = golden_section_max(
                |u| critical_exponent(p, u.exp()),
                1e-6f64.ln(),
                1e6f64.ln(),
                1e-10,
            )
            .unwrap();
            assert!(
                (c - max).abs() < 1e-9,
                "curve and maximization disagree at p = {p}: {c} vs {max}"
            );
        }
    }

    #[test]
    fn test_kernel_monotonicity_tracks_the_classification() {
        let grid: Vec<f64> = (1..100).map(|k| k as f64 * 0.1).collect();
        let sample = |p: f64, q: f64| -> Vec<(f64, f64)> {
            grid.iter().map(|&r| (r, convexity_kernel(p, q, r))).collect()
        };
        assert!(check_monotone(&sample(1.0, 1.0), Direction::Decreasing).unwrap());
        assert!(check_monotone(&sample(-3.0, 0.0), Direction::Increasing).unwrap());
        let mixed = sample(0.0, 0.5);
        assert!(!check_monotone(&mixed, Direction::Increasing).unwrap());
        assert!(!check_monotone(&mixed, Direction::Decreasing).unwrap());
    }

    #[test]
    fn test_classification_anchors() {
        use ConvexityClass::*;
        assert_eq!(classify_asinh_convexity(1.0, 1.0).unwrap(), StrictlyConcave);
        assert_eq!(classify_asinh_convexity(-3.0, -3.0).unwrap(), StrictlyConvex);
        assert_eq!(classify_asinh_convexity(-3.0, -3.5).unwrap(), Neither);
        assert_eq!(classify_asinh_convexity(0.0, 1.0).unwrap(), StrictlyConvex);
        assert_eq!(classify_asinh_convexity(0.0, 0.5).unwrap(), Neither);
        assert_eq!(classify_asinh_convexity(0.0, 0.0).unwrap(), StrictlyConcave);
        assert_eq!(classify_asinh_convexity(-2.0, -2.0).unwrap(), StrictlyConvex);
        assert_eq!(classify_asinh_convexity(3.0, 4.0).unwrap(), Neither);
        assert_eq!(classify_asinh_convexity(0.5, 0.4).unwrap(), StrictlyConcave);
    }

    #[test]
    fn test_classification_boundary_band() {
        use ConvexityClass::*;
        let c = critical_curve(-1.0).unwrap();
        assert_eq!(classify_asinh_convexity(-1.0, c + 1e-12).unwrap(), Boundary);
        assert_eq!(
            classify_asinh_convexity(-1.0, c + 1e-3).unwrap(),
            StrictlyConvex
        );
        assert_eq!(classify_asinh_convexity(-1.0, c - 1e-3).unwrap(), Neither);
    }

    #[test]
    fn test_empirical_signs_match_the_classification() {
        let convex = empirical_convexity_test(-1.0, 0.5, 2000, 1e3, 7).unwrap();
        assert_eq!(convex.positive, 0);
        assert!(convex.negative > 0);
        let concave = empirical_convexity_test(1.0, 1.0, 2000, 1e3, 7).unwrap();
        assert_eq!(concave.negative, 0);
        assert!(concave.positive > 0);
        let mixed = empirical_convexity_test(0.0, 0.5, 2000, 1e3, 7).unwrap();
        assert!(mixed.positive > 0 && mixed.negative > 0);
    }

    #[test]
    fn test_empirical_test_argument_checks() {
        assert_eq!(
            empirical_convexity_test(1.0, 1.0, 50, 1e3, 7),
            Err(Error::InsufficientSamples)
        );
        assert!(matches!(
            empirical_convexity_test(1.0, 1.0, 200, 0.5, 7),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn test_empirical_test_is_deterministic() {
        let a = empirical_convexity_test(0.3, -0.2, 500, 1e2, 12345).unwrap();
        let b = empirical_convexity_test(0.3, -0.2, 500, 1e2, 12345).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn test_check_monotone_edge_cases() {
        assert!(check_monotone(&[(0.0, 1.0), (1.0, 2.0)], Direction::Increasing).unwrap());
        assert!(!check_monotone(&[(0.0, 2.0), (1.0, 1.0)], Direction::Increasing).unwrap());
        assert_eq!(
            check_monotone(&[(0.0, 1.0)], Direction::Increasing),
            Err(Error::InsufficientSamples)
        );
        assert!(matches!(
            check_monotone(&[(1.0, 0.0), (0.5, 1.0)], Direction::Increasing),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn test_golden_section_finds_a_parabola_peak() {
        let (x, v) = golden_section_max(|x| -(x - 2.0) * (x - 2.0), 0.0, 5.0, 1e-8).unwrap();
        assert!((x - 2.0).abs() < 1e-6);
        assert!(v.abs() < 1e-12);
        assert!(matches!(
            golden_section_max(|x| x, 1.0, 0.0, 1e-8),
            Err(Error::Domain(_))
        ));
    }

    proptest! {
        #[test]
        fn prop_mean_is_sandwiched_and_monotone_in_p(
            r in 0.01f64..100.0,
            s in 0.01f64..100.0,
            p1 in -5.0f64..5.0,
            p2 in -5.0f64..5.0,
        ) {
            let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
            let m_lo = holder_mean(lo, r, s).unwrap();
            let m_hi = holder_mean(hi, r, s).unwrap();
            prop_assert!(m_lo <= m_hi + 1e-12 * m_hi.max(1.0));
            let min = r.min(s);
            let max = r.max(s);
            prop_assert!(m_lo >= min - 1e-12 * max);
            prop_assert!(m_hi <= max + 1e-12 * max);
        }

        #[test]
        fn prop_defect_sign_in_the_concave_wedge(
            x in 0.01f64..50.0,
            y in 0.01f64..50.0,
        ) {
            // p = q = 1 sits strictly inside the concave region
            let d = convexity_defect(1.0, 1.0, x, y).unwrap();
            prop_assert!(d >= -1e-13);
        }
    }
}
