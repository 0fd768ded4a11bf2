//! The invariant suite behind `theta-zeros verify`.
//!
//! Each check is a named closure returning a short detail string on
//! success. Checks never panic; failures carry the reason in `detail`.

use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::analysis::{density_tail_check, equidistribution, total_mass, valence_check};
use crate::cache::gamma_series;
use crate::eisenstein::eisenstein_series;
use crate::error::{Error, Result};
use crate::lattice::{lattice_count, DEFAULT_BUDGET};
use crate::numeric::{
    lambda_transformation_residuals, modularity_residual, theta_gamma_eval, theta_transformation_residuals,
    ComplexPoint, GammaMethod, Precision,
};
use crate::reference::{REFERENCE_HEIGHTS_K60, REFERENCE_ROOTS_K10, REFERENCE_ROOTS_K25, REFERENCE_ROOTS_K50};
use crate::series::{jacobi_defect_of, lambda_series, theta_base, ExactSeries, ThetaIndex};
use crate::zeros::{classify_roots, theta_zeros_with, ZeroOptions};
use crate::{ell, Complex64};

/// Deliberate corruption used to test that the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Adds one to the `w⁴` coefficient of `θ₃` before the Jacobi check.
    Theta3Coefficient,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Smaller grids, and no q-series residuals at `k = 60`.
    pub quick: bool,
    pub inject_fault: Option<Fault>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub passed: bool,
    pub failed: Vec<String>,
    pub checks: Vec<CheckOutcome>,
}

/// `k` values exercised by the default run.
pub const VERIFY_KS: [u32; 5] = [1, 2, 3, 10, 60];

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(what()))
    }
}

/// Deterministic sample points with `Re τ ∈ [−1/2, 1/2]`, `Im τ ∈ [0.8, 2]`.
pub fn sample_points(n: usize) -> Vec<ComplexPoint> {
    (0..n)
        .map(|i| {
            // golden-ratio sequences keep the points spread without an RNG
            let a = (i as f64 * 0.618_033_988_749_895 + 0.1).fract();
            let b = (i as f64 * 0.754_877_666_246_693 + 0.3).fract();
            ComplexPoint { re: a - 0.5, im: 0.8 + 1.2 * b }
        })
        .collect()
}

fn jacobi_identity(cfg: &VerifyConfig) -> Result<String> {
    let order = 256;
    let t2 = theta_base(ThetaIndex::Two, order);
    let mut t3 = theta_base(ThetaIndex::Three, order);
    let t4 = theta_base(ThetaIndex::Four, order);
    if cfg.inject_fault == Some(Fault::Theta3Coefficient) {
        let mut c = t3.coeffs().to_vec();
        c[4] += BigInt::from(1);
        t3 = ExactSeries::new(t3.unit(), c)?;
    }
    let d = jacobi_defect_of(&t2, &t3, &t4)?;
    ensure(d.is_zero(), || format!("defect nonzero at w^{}", d.valuation().unwrap_or(0)))?;
    Ok(format!("θ₃⁴ − θ₂⁴ − θ₄⁴ ≡ 0 through w^{order}"))
}

fn lambda_coefficients(_: &VerifyConfig) -> Result<String> {
    let s = lambda_series(64)?;
    let want = [0i64, 16, -128, 704, -3072];
    for (n, w) in want.iter().enumerate() {
        ensure(s.coeff(n) == &BigInt::from(*w), || format!("a({n}) = {}", s.coeff(n)))?;
    }
    for n in 1..=64 {
        let positive = s.coeff(n) > &BigInt::from(0);
        ensure(positive == (n % 2 == 1), || format!("sign of a({n})"))?;
    }
    Ok("a(1..4) = 16, −128, 704, −3072; signs alternate to 64".into())
}

fn eisenstein_uniqueness(_: &VerifyConfig) -> Result<String> {
    let order = 32;
    for (k, weight) in [(1u32, 4u32), (2, 8)] {
        let g = gamma_series(k, order)?.truncated(order);
        let e = eisenstein_series(weight, order)?
            .to_integer_series()
            .ok_or_else(|| Error::CheckFailed(format!("E{weight} is not integral")))?;
        ensure(g == e, || format!("Θ_Γ{} differs from E{weight}", 8 * k))?;
    }
    Ok(format!("Θ_Γ8 = E4, Θ_Γ16 = E8 through q^{order}"))
}

fn lattice_oracle(cfg: &VerifyConfig) -> Result<String> {
    let n1 = if cfg.quick { 3 } else { 5 };
    for (k, n) in [(1u32, n1), (2, 2)] {
        let counts = lattice_count(k, n, DEFAULT_BUDGET)?;
        let s = gamma_series(k, n)?;
        for (i, c) in counts.iter().enumerate() {
            ensure(s.coeff(i) == &BigInt::from(*c), || format!("k={k}: r({i}) = {c} vs {}", s.coeff(i)))?;
        }
    }
    Ok(format!("enumeration matches for k=1 (n ≤ {n1}) and k=2 (n ≤ 2)"))
}

fn theta_transformations(_: &VerifyConfig) -> Result<String> {
    let mut worst = 0f64;
    for p in sample_points(10) {
        for (name, r) in theta_transformation_residuals(p)? {
            ensure(r <= 1e-9, || format!("{name} at {p:?}: {r:.3e}"))?;
            worst = worst.max(r);
        }
    }
    Ok(format!("max residual {worst:.2e} over 10 points"))
}

fn lambda_transformations(_: &VerifyConfig) -> Result<String> {
    let mut worst = 0f64;
    for p in sample_points(10) {
        for (name, r) in lambda_transformation_residuals(p)? {
            ensure(r <= 1e-9, || format!("{name} at {p:?}: {r:.3e}"))?;
            worst = worst.max(r);
        }
    }
    Ok(format!("max residual {worst:.2e} over 10 points"))
}

fn modularity(_: &VerifyConfig) -> Result<String> {
    let tau = ComplexPoint { re: 0.1, im: 0.9 };
    let mut worst = 0f64;
    for k in [1u32, 3, 10, 60] {
        let r = modularity_residual(k, tau, Precision::Extended)?;
        ensure(r.relative <= 1e-6, || format!("k={k}: relative {:.3e}", r.relative))?;
        worst = worst.max(r.relative);
    }
    Ok(format!("max relative residual {worst:.2e} for k ∈ {{1,3,10,60}}"))
}

fn triple_path(cfg: &VerifyConfig) -> Result<String> {
    let n = if cfg.quick { 6 } else { 20 };
    for k in [1u32, 2, 3, 10] {
        for p in sample_points(n) {
            let r: Vec<_> = GammaMethod::ALL
                .iter()
                .map(|&m| theta_gamma_eval(k, p, 1e-13, m))
                .collect::<Result<_>>()?;
            let scale = r[0].value.norm().max(1.0);
            for a in &r {
                for b in &r {
                    let tol = a.tail_bound + b.tail_bound + 1e-11 * scale;
                    ensure((a.value - b.value).norm() <= tol, || format!("k={k} at {p:?}"))?;
                }
            }
        }
    }
    Ok(format!("three evaluation routes agree for k ∈ {{1,2,3,10}} on {n} points"))
}

fn valence(_: &VerifyConfig) -> Result<String> {
    for k in VERIFY_KS {
        valence_check(k)?;
    }
    Ok("ℓ + k′/12 = k/3, r(0) = 1, Θ(i) ≠ 0".into())
}

fn zero_census(cfg: &VerifyConfig) -> Result<String> {
    let mut total = 0;
    for k in VERIFY_KS {
        let opts = ZeroOptions { qseries: !(cfg.quick && k == 60), ..ZeroOptions::default() };
        let z = theta_zeros_with(k, opts)?;
        ensure(z.len() == ell(k) as usize, || format!("k={k}: {} zeros, expected {}", z.len(), ell(k)))?;
        ensure(z.windows(2).all(|w| w[0].y > w[1].y), || format!("k={k}: heights not decreasing"))?;
        total += z.len();
    }
    Ok(format!("{total} zeros, counts ⌊k/3⌋, residuals within tolerance"))
}

fn heights_k60(_: &VerifyConfig) -> Result<String> {
    let opts = ZeroOptions { qseries: false, ..ZeroOptions::default() };
    let z = theta_zeros_with(60, opts)?;
    ensure(z.len() == 20, || format!("{} zeros", z.len()))?;
    let mut worst = 0f64;
    for (r, want) in z.iter().zip(REFERENCE_HEIGHTS_K60) {
        let d = (r.y - want).abs();
        ensure(d <= 1e-4, || format!("m={}: {} vs {want}", r.m, r.y))?;
        worst = worst.max(d);
    }
    Ok(format!("20 heights within {worst:.1e} of the published values"))
}

/// Largest distance from a published point to the nearest computed root.
pub fn reference_root_distance(k: u32, published: &[(f64, f64)]) -> Result<f64> {
    let roots = classify_roots(k, 1e-14)?.all_roots();
    Ok(published
        .iter()
        .map(|&(x, y)| {
            let p = Complex64::new(x, y);
            roots.iter().map(|z| (z.re - p.re).abs().max((z.im - p.im).abs())).fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max))
}

fn roots_reference(_: &VerifyConfig) -> Result<String> {
    for (k, pts) in [(10u32, &REFERENCE_ROOTS_K10[..]), (25, &REFERENCE_ROOTS_K25[..]), (50, &REFERENCE_ROOTS_K50[..])] {
        let d = reference_root_distance(k, pts)?;
        ensure(d <= 1e-4, || format!("k={k}: a published root is {d:.2e} from every computed root"))?;
    }
    Ok("published roots for k = 10, 25, 50 matched within 1e-4".into())
}

fn density_law(_: &VerifyConfig) -> Result<String> {
    let grid = [2.0, 3.0, 4.0, 5.0];
    let (_, devs) = density_tail_check(&grid)?;
    for (y, d) in grid.iter().zip(&devs) {
        ensure(*d <= 10.0 * (-PI * y).exp(), || format!("y={y}: deviation {d:.3e}"))?;
    }
    let mass = total_mass()?;
    ensure((mass - 1.0).abs() <= 1e-6, || format!("∫ϱ = {mass}"))?;
    Ok(format!("∫ϱ = {mass:.9}, tail deviations within 10e^(−πy)"))
}

fn equidistribution_check(cfg: &VerifyConfig) -> Result<String> {
    let k = if cfg.quick { 300 } else { 3000 };
    let r = equidistribution(k, 10)?;
    ensure(r.arc_sup_distance <= r.bound, || format!("sup-distance {:.3e} > {:.3e}", r.arc_sup_distance, r.bound))?;
    Ok(format!("k={k}: sup-distance {:.2e} ≤ 3/ℓ", r.arc_sup_distance))
}

type Check = fn(&VerifyConfig) -> Result<String>;

/// Names and bodies of all checks, in run order.
pub const CHECKS: [(&str, Check); 14] = [
    ("jacobi_identity", jacobi_identity),
    ("lambda_coefficients", lambda_coefficients),
    ("eisenstein_uniqueness", eisenstein_uniqueness),
    ("lattice_oracle", lattice_oracle),
    ("theta_transformations", theta_transformations),
    ("lambda_transformations", lambda_transformations),
    ("modularity", modularity),
    ("triple_path", triple_path),
    ("valence", valence),
    ("zero_census", zero_census),
    ("heights_k60", heights_k60),
    ("roots_reference", roots_reference),
    ("density_law", density_law),
    ("equidistribution", equidistribution_check),
];

pub fn run_verify(cfg: &VerifyConfig) -> VerifySummary {
    let checks: Vec<CheckOutcome> = CHECKS
        .iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let (passed, detail) = match f(cfg) {
                Ok(d) => (true, d),
                Err(e) => (false, e.to_string()),
            };
            CheckOutcome { name: name.to_string(), passed, detail, seconds: start.elapsed().as_secs_f64() }
        })
        .collect();
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    VerifySummary { passed: failed.is_empty(), failed, checks }
}
