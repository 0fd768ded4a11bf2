use std::f64::consts::PI;

use num_complex::Complex64;

use super::theta::theta_triple;
use super::{check_eps, ComplexPoint, EvalResult};
use crate::cache::lambda_coefficients;
use crate::error::{Error, Result};

/// `λ(τ) = θ₂⁴/θ₃⁴`.
///
/// The tail bound is the first-order propagation
/// `|λ|·(4δ₂/|θ₂| + 4δ₃/|θ₃|)` of the theta truncation bounds; the theta
/// tolerance is tightened until it drops below `ε`.
pub fn lambda_eval(tau: ComplexPoint, eps: f64) -> Result<EvalResult> {
    check_eps(eps)?;
    let mut inner = eps;
    for _ in 0..8 {
        let t = theta_triple(tau, inner)?;
        let ratio = t.t2 / t.t3;
        let value = ratio.powu(4);
        let bound = value.norm() * (4.0 * t.tails[0] / t.t2.norm() + 4.0 * t.tails[1] / t.t3.norm());
        if !value.is_finite() {
            return Err(Error::NonFinite("lambda"));
        }
        if bound <= eps {
            return Ok(EvalResult { value, tail_bound: bound });
        }
        inner = (inner * eps / bound * 0.5).max(f64::MIN_POSITIVE);
    }
    Err(Error::Internal("lambda tail bound did not converge".into()))
}

/// `ln M(r)` for `r = e^{ln_r}`, where
/// `M(r) = 16 r ∏_{n≥1} ((1 + r^{2n}) / (1 − r^{2n−1}))⁸`
/// bounds `|λ|` on the circle `|u| = r` (`u = e^{πiτ}`). By Cauchy's
/// estimate `|a(n)| ≤ M(r) r^{−n}` for every coefficient.
pub fn lambda_majorant_ln(ln_r: f64) -> f64 {
    assert!(ln_r < 0.0, "majorant radius must be below 1");
    let mut acc = 16f64.ln() + ln_r;
    let mut n = 1u32;
    loop {
        let even = (2.0 * n as f64 * ln_r).exp();
        let odd = ((2.0 * n as f64 - 1.0) * ln_r).exp();
        let term = 8.0 * (even.ln_1p() - (-odd).ln_1p());
        acc += term;
        if term < 1e-18 {
            return acc;
        }
        n += 1;
    }
}

/// Smallest `N` with `M(r)·scale·Σ_{n>N} w(n) ρⁿ < ε` where `ρ = |u|/r` and
/// `w(n) = n` when `weighted`, `1` otherwise.
fn coefficient_cutoff(ln_m: f64, ln_rho: f64, weighted: bool, ln_scale: f64, eps: f64) -> (usize, f64) {
    let rho = ln_rho.exp();
    let one_minus = -ln_rho.exp_m1();
    let mut n = 1usize;
    loop {
        let ln_tail = if weighted {
            // Σ_{m>N} m ρ^m = ρ^{N+1} ((N+1) − Nρ) / (1−ρ)²
            (n as f64 + 1.0) * ln_rho + ((n as f64 + 1.0) - n as f64 * rho).ln() - 2.0 * one_minus.ln()
        } else {
            (n as f64 + 1.0) * ln_rho - one_minus.ln()
        };
        let total = ln_m + ln_scale + ln_tail;
        if total < eps.ln() {
            return (n, total.exp());
        }
        n += 1;
    }
}

/// `λ'(τ) = dλ/dτ = πi Σ_{n≥1} n a(n) uⁿ`, `u = e^{πiτ}`, from the exact
/// `λ` coefficients. The truncation bound uses the Cauchy majorant on the
/// circle `|u|^{1/2}`.
pub fn lambda_prime_eval(tau: ComplexPoint, eps: f64) -> Result<EvalResult> {
    check_eps(eps)?;
    tau.check_floor()?;
    let ln_u = -PI * tau.im;
    let ln_r = 0.5 * ln_u;
    let ln_m = lambda_majorant_ln(ln_r);
    let (n, tail) = coefficient_cutoff(ln_m, ln_u - ln_r, true, PI.ln(), eps);
    let coeffs = lambda_coefficients(n)?;
    let u = (Complex64::i() * PI * tau.to_c64()).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    for m in (1..=n).rev() {
        acc = acc * u + m as f64 * coeffs.values[m];
    }
    let value = Complex64::i() * PI * acc * u;
    if !value.is_finite() {
        return Err(Error::NonFinite("lambda'"));
    }
    Ok(EvalResult { value, tail_bound: tail })
}

/// `Σ_{n≥0} (−1)ⁿ a(2n+1) e^{−π(2n+1)y}`, which equals `Im λ(1/2 + iy)`.
pub fn lambda_sin_series(y: f64, eps: f64) -> Result<EvalResult> {
    check_eps(eps)?;
    ComplexPoint::on_line(y)?.check_floor()?;
    let ln_s = -PI * y;
    let ln_r = 0.5 * ln_s;
    let ln_m = lambda_majorant_ln(ln_r);
    let (n, tail) = coefficient_cutoff(ln_m, ln_s - ln_r, false, 0.0, eps);
    let coeffs = lambda_coefficients(n)?;
    let s = ln_s.exp();
    let mut total = 0.0;
    let mut m = 1;
    while m <= n {
        let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * coeffs.values[m] * s.powi(m as i32);
        m += 2;
    }
    Ok(EvalResult { value: Complex64::new(total, 0.0), tail_bound: tail })
}
