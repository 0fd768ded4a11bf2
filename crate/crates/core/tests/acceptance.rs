//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use theta_zeros::analysis::{density_tail_check, equidistribution, height_law, total_mass, valence_check};
use theta_zeros::eisenstein::eisenstein_series;
use theta_zeros::lattice::{lattice_count, DEFAULT_BUDGET};
use theta_zeros::numeric::{
    lambda_transformation_residuals, modularity_residual, theta_transformation_residuals, ComplexPoint, Precision,
};
use theta_zeros::reference::{REFERENCE_HEIGHTS_K60, REFERENCE_ROOTS_K10, REFERENCE_ROOTS_K25, REFERENCE_ROOTS_K50};
use theta_zeros::series::{jacobi_identity_defect, lambda_series, theta_gamma_series};
use theta_zeros::verify::{reference_root_distance, sample_points};
use theta_zeros::zeros::{theta_zeros, theta_zeros_with, ZeroOptions};
use theta_zeros::{ell, Error, Result};

fn fail(msg: String) -> Error {
    Error::CheckFailed(msg)
}

fn within(elapsed: Duration, limit: Duration) -> Result<()> {
    if elapsed > limit {
        return Err(fail(format!("took {:.2?}, limit {limit:?}", elapsed)));
    }
    Ok(())
}

fn c1_heights_k60() -> Result<String> {
    let start = Instant::now();
    let z = theta_zeros(60, 1e-12)?;
    let elapsed = start.elapsed();
    if z.len() != 20 {
        return Err(fail(format!("{} zeros", z.len())));
    }
    let mut worst = 0f64;
    for (r, want) in z.iter().zip(REFERENCE_HEIGHTS_K60) {
        worst = worst.max((r.y - want).abs());
    }
    if worst > 1e-4 {
        return Err(fail(format!("max height deviation {worst:.3e}")));
    }
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("20 zeros, max deviation {worst:.1e}, {elapsed:.2?}"))
}

fn c2_published_roots() -> Result<String> {
    let start = Instant::now();
    let mut worst = 0f64;
    for (k, pts) in [(10u32, &REFERENCE_ROOTS_K10[..]), (25, &REFERENCE_ROOTS_K25[..]), (50, &REFERENCE_ROOTS_K50[..])] {
        worst = worst.max(reference_root_distance(k, pts)?);
    }
    let elapsed = start.elapsed();
    if worst > 1e-4 {
        return Err(fail(format!("max distance {worst:.3e}")));
    }
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("max distance {worst:.1e}, {elapsed:.2?}"))
}

fn c3_lambda() -> Result<String> {
    let s = lambda_series(8)?;
    let got: Vec<&BigInt> = (1..=4).map(|n| s.coeff(n)).collect();
    let want: Vec<BigInt> = [16, -128, 704, -3072].into_iter().map(BigInt::from).collect();
    if got.iter().zip(&want).any(|(a, b)| *a != b) {
        return Err(fail(format!("a(1..4) = {got:?}")));
    }
    Ok("a(1..4) = 16, -128, 704, -3072".into())
}

fn c4_eisenstein() -> Result<String> {
    for (k, w) in [(1u32, 4u32), (2, 8)] {
        let g = theta_gamma_series(k, 32)?;
        let e = eisenstein_series(w, 32)?.to_integer_series().ok_or_else(|| fail(format!("E{w} not integral")))?;
        if g != e {
            return Err(fail(format!("k={k} differs from E{w}")));
        }
    }
    Ok("k=1 vs E4, k=2 vs E8 to order 32".into())
}

fn c5_lattice() -> Result<String> {
    for (k, n) in [(1u32, 5usize), (2, 2)] {
        let counts = lattice_count(k, n, DEFAULT_BUDGET)?;
        let s = theta_gamma_series(k, n)?;
        for (i, c) in counts.iter().enumerate() {
            if s.coeff(i) != &BigInt::from(*c) {
                return Err(fail(format!("k={k} n={i}: {c} vs {}", s.coeff(i))));
            }
        }
    }
    Ok("k=1 (n ≤ 5), k=2 (n ≤ 2) exact".into())
}

fn c6_census() -> Result<String> {
    let start = Instant::now();
    let opts = ZeroOptions::default();
    let (mut worst_poly, mut worst_q, mut total) = (0f64, 0f64, 0usize);
    for k in 1..=300u32 {
        let z = theta_zeros_with(k, opts)?;
        if z.len() != ell(k) as usize {
            return Err(fail(format!("k={k}: {} zeros", z.len())));
        }
        for r in &z {
            worst_poly = worst_poly.max(r.residual_poly);
            worst_q = worst_q.max(r.residual_qseries);
        }
        valence_check(k)?;
        total += z.len();
    }
    let elapsed = start.elapsed();
    if worst_poly > 1e-8 || worst_q > 1e-8 {
        return Err(fail(format!("residuals poly {worst_poly:.2e}, q-series {worst_q:.2e}")));
    }
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!("{total} zeros, residuals ≤ {:.1e}, {elapsed:.1?}", worst_poly.max(worst_q)))
}

fn c7_height_law() -> Result<String> {
    let r = height_law(2000, 20)?;
    let (mut worst_refined, mut worst_simple) = (0f64, 0f64);
    for row in &r.rows {
        let simple_bound = row.simple_offset + 0.01;
        if row.dev_refined > row.refined_bound || row.dev_simple > simple_bound {
            return Err(fail(format!(
                "m={}: refined {:.3e} (bound {:.3e}), simple {:.3e} (bound {:.3e})",
                row.m, row.dev_refined, row.refined_bound, row.dev_simple, simple_bound
            )));
        }
        worst_refined = worst_refined.max(row.dev_refined / row.refined_bound);
        worst_simple = worst_simple.max(row.dev_simple / simple_bound);
    }
    Ok(format!("worst use of bound: refined {worst_refined:.2}, simple {worst_simple:.2}"))
}

fn c8_density() -> Result<String> {
    let grid = [2.0, 3.0, 4.0, 5.0];
    let (_, devs) = density_tail_check(&grid)?;
    for (y, d) in grid.iter().zip(&devs) {
        if *d > 10.0 * (-std::f64::consts::PI * y).exp() {
            return Err(fail(format!("y={y}: {d:.3e}")));
        }
    }
    let mass = total_mass()?;
    if (mass - 1.0).abs() > 1e-6 {
        return Err(fail(format!("total mass {mass}")));
    }
    let max_dev = devs.iter().cloned().fold(0.0, f64::max);
    Ok(format!("max tail deviation {max_dev:.2e}, mass {mass:.9}"))
}

fn c9_equidistribution() -> Result<String> {
    let big = equidistribution(3000, 10)?;
    let small = equidistribution(300, 10)?;
    if big.arc_sup_distance > 3e-3 {
        return Err(fail(format!("k=3000 distance {:.3e}", big.arc_sup_distance)));
    }
    let ratio = small.arc_sup_distance / big.arc_sup_distance;
    if ratio < 5.0 {
        return Err(fail(format!("shrink factor {ratio:.2}")));
    }
    Ok(format!("k=3000 distance {:.2e}, shrink factor {ratio:.2}", big.arc_sup_distance))
}

fn c10_identities() -> Result<String> {
    if !jacobi_identity_defect(256)?.is_zero() {
        return Err(fail("Jacobi defect nonzero".into()));
    }
    let pts = sample_points(10);
    let (mut theta, mut lambda) = (0f64, 0f64);
    for &p in &pts {
        for (name, r) in theta_transformation_residuals(p)? {
            if r > 1e-9 {
                return Err(fail(format!("theta {name} at {p:?}: {r:.2e}")));
            }
            theta = theta.max(r);
        }
        for (name, r) in lambda_transformation_residuals(p)? {
            if r > 1e-9 {
                return Err(fail(format!("lambda {name} at {p:?}: {r:.2e}")));
            }
            lambda = lambda.max(r);
        }
    }
    let tau = ComplexPoint { re: 0.1, im: 0.9 };
    let mut modular = 0f64;
    for k in [1u32, 3, 10, 60] {
        let r = modularity_residual(k, tau, Precision::Extended)?.relative;
        if r > 1e-6 {
            return Err(fail(format!("modularity k={k}: {r:.2e}")));
        }
        modular = modular.max(r);
    }
    Ok(format!("theta {theta:.1e}, lambda {lambda:.1e}, modularity {modular:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<String>); 10] = [
        ("heights k=60", c1_heights_k60),
        ("published roots k=10,25,50", c2_published_roots),
        ("lambda coefficients", c3_lambda),
        ("Eisenstein uniqueness", c4_eisenstein),
        ("lattice oracle", c5_lattice),
        ("zero census k ≤ 300", c6_census),
        ("height law k=2000", c7_height_law),
        ("density law", c8_density),
        ("equidistribution", c9_equidistribution),
        ("identity suite", c10_identities),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
