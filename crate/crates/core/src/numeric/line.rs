use std::f64::consts::PI;

use super::lambda::{lambda_eval, lambda_prime_eval};
use super::ComplexPoint;
use crate::error::{Error, Result};
use crate::SQRT3_OVER_2;

const EVAL_EPS: f64 = 1e-16;

fn check_line(y: f64) -> Result<ComplexPoint> {
    if !(y >= SQRT3_OVER_2 - 1e-12) || !y.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "y = {y} is below the fundamental domain (√3/2)"
        )));
    }
    ComplexPoint::on_line(y)
}

/// `φ(y) = arg(λ(1/2 + iy) − 1)` on the branch `(−π/2, 3π/2)`.
///
/// Increases from `2π/3` at `y = √3/2` towards `π` as `y → ∞`.
pub fn phi_of_y(y: f64) -> Result<f64> {
    let p = check_line(y)?;
    let l = lambda_eval(p, EVAL_EPS)?.value;
    let mut phi = (l - 1.0).arg();
    if phi < -PI / 2.0 {
        phi += 2.0 * PI;
    }
    Ok(phi)
}

/// `φ'(y) = Re(λ'/(λ − 1))` at `τ = 1/2 + iy`.
pub fn phi_prime_of_y(y: f64) -> Result<f64> {
    let p = check_line(y)?;
    let l = lambda_eval(p, EVAL_EPS)?.value;
    let d = lambda_prime_eval(p, EVAL_EPS)?.value;
    Ok((d / (l - 1.0)).re)
}
