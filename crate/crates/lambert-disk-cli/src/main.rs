use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lambert_disk::holder::{classify_asinh_convexity, critical_curve, ConvexityClass};
use lambert_disk::lambert::{
    build_quad, product_bound, side_half_sinh, side_lengths_direct, sum_bounds,
    verify_sharp_bounds, QuadParams,
};
use lambert_disk::verify::run_suite;
use lambert_disk::Error;

/// Tables for right-angled quadrilaterals in the unit disk: side lengths,
/// sharp product and sum bounds, the critical exponent curve, and a
/// convexity region map for two-point asinh means.
#[derive(Parser)]
#[command(name = "lambert-disk", version, about, max_term_width = 100)]
struct Cli {
    /// Also write the output to this file (same bytes as stdout)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One quadrilateral: parameters, side lengths, and identity residuals
    Quad {
        /// Corner vertex norm, in (0, 1)
        #[arg(long)]
        t: f64,
        /// Corner direction angle in radians, in (0, pi/2)
        #[arg(long)]
        theta: f64,
    },
    /// Side lengths and bounds over a direction sweep at fixed s
    Sweep {
        /// Diagonal parameter s = 2t/(1+t^2), in (0, 1)
        #[arg(long)]
        s: f64,
        /// Number of interior grid points
        #[arg(long, default_value_t = 1001)]
        n: usize,
    },
    /// Sharp bound values over a grid of diagonal parameters
    Bounds {
        #[arg(long)]
        s_lo: f64,
        #[arg(long)]
        s_hi: f64,
        /// Number of grid points
        #[arg(long, default_value_t = 101)]
        n: usize,
    },
    /// Convexity classification over a rectangle of (p, q) exponent pairs
    #[command(allow_negative_numbers = true)]
    Region {
        #[arg(long)]
        p_lo: f64,
        #[arg(long)]
        p_hi: f64,
        #[arg(long)]
        q_lo: f64,
        #[arg(long)]
        q_hi: f64,
        /// Grid points per axis
        #[arg(long, default_value_t = 21)]
        n: usize,
    },
    /// The critical exponent curve q = C(p) sampled over (-2, 0)
    Critcurve {
        /// Number of grid points
        #[arg(long, default_value_t = 99)]
        n: usize,
    },
    /// Run the full invariant suite and report one line per property
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Sample count per randomized property
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + step * i as f64 })
}

fn class_label(class: ConvexityClass) -> &'static str {
    match class {
        ConvexityClass::StrictlyConvex => "convex",
        ConvexityClass::StrictlyConcave => "concave",
        ConvexityClass::Neither => "neither",
        ConvexityClass::Boundary => "boundary",
    }
}

fn quad_csv(t: f64, theta: f64) -> Result<String, Error> {
    let params = QuadParams::new(t, theta)?;
    let quad = build_quad(params);
    // cross-checks the metric route against the closed forms; a mismatch
    // surfaces as a verification failure, not a silently bad row
    side_lengths_direct(params)?;

    let s = params.s();
    let m = params.m();
    let (r, rp) = (params.r(), params.r_perp());
    let tangent_residual = (quad.d1.tanh() - s * r)
        .abs()
        .max((quad.d2.tanh() - s * rp).abs());
    let sine_residual = (quad.d3.sinh() - m * rp)
        .abs()
        .max((quad.d4.sinh() - m * r).abs());
    let half_sinh_residual = {
        let f_b = side_half_sinh(s, r);
        let f_d = side_half_sinh(s, rp);
        let res_b = (f_b * (1.0 + f_b * f_b).sqrt() - m * rp / 2.0).abs();
        let res_d = (f_d * (1.0 + f_d * f_d).sqrt() - m * r / 2.0).abs();
        res_b.max(res_d)
    };
    let diagonal = s.atanh();

    let mut out = String::new();
    out.push_str(
        "t,theta,s,m,d1,d2,d3,d4,phi,diagonal,\
         tangent_residual,sine_residual,half_sinh_residual\n",
    );
    writeln!(
        out,
        "{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.3e},{:.3e},{:.3e}",
        t, theta, s, m, quad.d1, quad.d2, quad.d3, quad.d4, quad.phi, diagonal,
        tangent_residual, sine_residual, half_sinh_residual,
    )
    .unwrap();
    Ok(out)
}

fn sweep_csv(s: f64, n: usize) -> Result<String, Error> {
    let report = verify_sharp_bounds(s, n)?;
    Ok(report.to_csv())
}

fn bounds_csv(s_lo: f64, s_hi: f64, n: usize) -> Result<String, Error> {
    if n < 2 {
        return Err(Error::Domain("bounds needs n >= 2"));
    }
    if !(s_lo > 0.0 && s_lo < s_hi && s_hi < 1.0) {
        return Err(Error::Domain("bounds needs 0 < s_lo < s_hi < 1"));
    }
    let mut out = String::from("s,product_bound,sum_lower,sum_upper\n");
    for s in linspace(s_lo, s_hi, n) {
        let pb = product_bound(s)?;
        let (lo, hi) = sum_bounds(s)?;
        writeln!(out, "{:.15e},{:.15e},{:.15e},{:.15e}", s, pb, lo, hi).unwrap();
    }
    Ok(out)
}

fn region_csv(p_lo: f64, p_hi: f64, q_lo: f64, q_hi: f64, n: usize) -> Result<String, Error> {
    if n < 2 {
        return Err(Error::Domain("region needs n >= 2"));
    }
    if !(p_lo.is_finite() && p_hi.is_finite() && q_lo.is_finite() && q_hi.is_finite()) {
        return Err(Error::NonFinite);
    }
    if !(p_lo < p_hi && q_lo < q_hi) {
        return Err(Error::Domain("region needs p_lo < p_hi and q_lo < q_hi"));
    }
    let mut out = String::from("p,q,class,c_of_p\n");
    for p in linspace(p_lo, p_hi, n) {
        let c_of_p = if p > -2.0 && p < 0.0 {
            Some(critical_curve(p)?)
        } else {
            None
        };
        for q in linspace(q_lo, q_hi, n) {
            let class = classify_asinh_convexity(p, q)?;
            match c_of_p {
                Some(c) => writeln!(
                    out,
                    "{:.15e},{:.15e},{},{:.15e}",
                    p,
                    q,
                    class_label(class),
                    c
                )
                .unwrap(),
                None => writeln!(out, "{:.15e},{:.15e},{},", p, q, class_label(class)).unwrap(),
            }
        }
    }
    Ok(out)
}

fn critcurve_csv(n: usize) -> Result<String, Error> {
    if n < 2 {
        return Err(Error::Domain("critcurve needs n >= 2"));
    }
    // stay strictly inside (-2, 0); the curve has finite limits at both ends
    let p_lo = -2.0 + 1.0e-6;
    let p_hi = -1.0e-6;
    let mut out = String::from("p,c_of_p\n");
    for p in linspace(p_lo, p_hi, n) {
        let c = critical_curve(p)?;
        writeln!(out, "{:.15e},{:.15e}", p, c).unwrap();
    }
    Ok(out)
}

fn verify_csv(seed: u64, n: usize) -> Result<(String, bool), Error> {
    if n < 2 {
        return Err(Error::Domain("verify needs n >= 2"));
    }
    let checks = run_suite(seed, n);
    let mut out = String::from("property,status,detail\n");
    let mut all_passed = true;
    for check in &checks {
        all_passed &= check.passed;
        let status = if check.passed { "pass" } else { "fail" };
        // detail strings contain commas, so the field is quoted
        writeln!(out, "{},{},\"{}\"", check.name, status, check.detail).unwrap();
    }
    Ok((out, all_passed))
}

fn execute(command: &Command) -> Result<(String, bool), Error> {
    match command {
        Command::Quad { t, theta } => quad_csv(*t, *theta).map(|text| (text, true)),
        Command::Sweep { s, n } => sweep_csv(*s, *n).map(|text| (text, true)),
        Command::Bounds { s_lo, s_hi, n } => {
            bounds_csv(*s_lo, *s_hi, *n).map(|text| (text, true))
        }
        Command::Region {
            p_lo,
            p_hi,
            q_lo,
            q_hi,
            n,
        } => region_csv(*p_lo, *p_hi, *q_lo, *q_hi, *n).map(|text| (text, true)),
        Command::Critcurve { n } => critcurve_csv(*n).map(|text| (text, true)),
        Command::Verify { seed, n } => verify_csv(*seed, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok((text, all_passed)) => {
            print!("{text}");
            if let Some(path) = &cli.out {
                if let Err(err) = std::fs::write(path, &text) {
                    eprintln!("cannot write {}: {err}", path.display());
                    return ExitCode::from(2);
                }
            }
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("{err}");
            match err {
                Error::VerificationFailure { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
