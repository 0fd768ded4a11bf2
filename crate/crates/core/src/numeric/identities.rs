use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::{gamma_point_in, ln_add, GammaMethod};
use super::lambda::lambda_eval;
use super::theta::theta_triple;
use super::{CField, ComplexPoint, Precision};
use crate::error::Result;
use crate::mp::MpComplex;

const EPS: f64 = 1e-15;

/// Absolute residuals of the `T: τ ↦ τ+1` and `S: τ ↦ −1/τ` rules for
/// `θ₂, θ₃, θ₄`, labelled by identity.
pub fn theta_transformation_residuals(tau: ComplexPoint) -> Result<Vec<(&'static str, f64)>> {
    let z = tau.to_c64();
    let here = theta_triple(tau, EPS)?;
    let shifted = theta_triple(ComplexPoint::from_c64(z + 1.0)?, EPS)?;
    let inverted = theta_triple(ComplexPoint::from_c64(-1.0 / z)?, EPS)?;
    let s = (-Complex64::i() * z).sqrt();
    let e8 = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    Ok(vec![
        ("theta2(tau+1) = e^(i pi/4) theta2(tau)", (shifted.t2 - e8 * here.t2).norm()),
        ("theta3(tau+1) = theta4(tau)", (shifted.t3 - here.t4).norm()),
        ("theta4(tau+1) = theta3(tau)", (shifted.t4 - here.t3).norm()),
        ("theta2(-1/tau) = sqrt(-i tau) theta4(tau)", (inverted.t2 - s * here.t4).norm()),
        ("theta3(-1/tau) = sqrt(-i tau) theta3(tau)", (inverted.t3 - s * here.t3).norm()),
        ("theta4(-1/tau) = sqrt(-i tau) theta2(tau)", (inverted.t4 - s * here.t2).norm()),
    ])
}

/// Absolute residuals of the `λ` rules under `τ+1`, `−1/τ`, `1/(1−τ)` and
/// `(τ−1)/τ`.
pub fn lambda_transformation_residuals(tau: ComplexPoint) -> Result<Vec<(&'static str, f64)>> {
    let z = tau.to_c64();
    let lam = |w: Complex64| -> Result<Complex64> { Ok(lambda_eval(ComplexPoint::from_c64(w)?, EPS)?.value) };
    let l = lam(z)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(vec![
        ("lambda(tau+1) = lambda/(lambda-1)", (lam(z + 1.0)? - l / (l - 1.0)).norm()),
        ("lambda(-1/tau) = 1 - lambda", (lam(-1.0 / z)? - (one - l)).norm()),
        ("lambda(1/(1-tau)) = 1/(1-lambda)", (lam(one / (one - z))? - one / (one - l)).norm()),
        ("lambda((tau-1)/tau) = 1 - 1/lambda", (lam((z - 1.0) / z)? - (one - one / l)).norm()),
    ])
}

/// Invariance defect of `Θ_{Γ_{8k}}` under `T` and `S`.
///
/// `absolute` is `max(|Θ(τ+1) − Θ(τ)|, |τ^{−4k}Θ(−1/τ) − Θ(τ)|)`;
/// `relative` divides it by `(|θ₂|^{8k} + |θ₃|^{8k} + |θ₄|^{8k})/2` at `τ`,
/// the size of the terms that cancel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularityResidual {
    pub absolute: f64,
    pub relative: f64,
}

pub fn modularity_residual(k: u32, tau: ComplexPoint, precision: Precision) -> Result<ModularityResidual> {
    let z = tau.to_c64();
    let shifted = ComplexPoint::from_c64(z + 1.0)?;
    let inverted = ComplexPoint::from_c64(-1.0 / z)?;
    inverted.check_floor()?;
    match precision.bits() {
        None => residual_in(k, &z, &(z + 1.0), &(-1.0 / z), tau, shifted, inverted),
        Some(bits) => {
            let t = MpComplex::from_c64(z, bits);
            let one = MpComplex::from_c64(Complex64::new(1.0, 0.0), bits);
            let t1 = t.add(&one);
            let ti = one.neg().div(&t);
            residual_in(k, &t, &t1, &ti, tau, shifted, inverted)
        }
    }
}

fn residual_in<F: CField>(
    k: u32,
    t: &F,
    t_shift: &F,
    t_inv: &F,
    tau: ComplexPoint,
    shifted: ComplexPoint,
    inverted: ComplexPoint,
) -> Result<ModularityResidual> {
    // truncation well below the cancelling terms
    let scale_ln = {
        let th = theta_triple(tau, EPS)?;
        let n = 8.0 * k as f64;
        ln_add(ln_add(n * th.t2.norm().ln(), n * th.t3.norm().ln()), n * th.t4.norm().ln()) - std::f64::consts::LN_2
    };
    let ln_eps = scale_ln - 120.0;
    let (v, _) = gamma_point_in(t, k, tau.im, ln_eps, GammaMethod::ThetaPow)?;
    let (v1, _) = gamma_point_in(t_shift, k, shifted.im, ln_eps, GammaMethod::ThetaPow)?;
    let (vi, _) = gamma_point_in(t_inv, k, inverted.im, ln_eps + 4.0 * k as f64 * tau.to_c64().norm().ln(), GammaMethod::ThetaPow)?;
    let d_t = v1.sub(&v).ln_abs();
    let d_s = vi.div(&t.powu(4 * k as u64)).sub(&v).ln_abs();
    let ln_abs = d_t.max(d_s);
    Ok(ModularityResidual { absolute: ln_abs.exp(), relative: (ln_abs - scale_ln).exp() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_rules_hold() {
        for (re, im) in [(0.0, 1.0), (0.3, 1.1), (-0.2, 0.9), (0.45, 1.7)] {
            for (name, r) in theta_transformation_residuals(ComplexPoint::new(re, im).unwrap()).unwrap() {
                assert!(r <= 1e-12, "{name} at {re}+{im}i: {r}");
            }
        }
    }

    #[test]
    fn lambda_rules_hold() {
        for (re, im) in [(0.1, 1.0), (0.3, 1.4), (-0.4, 0.85), (0.25, 2.0)] {
            for (name, r) in lambda_transformation_residuals(ComplexPoint::new(re, im).unwrap()).unwrap() {
                assert!(r <= 1e-11, "{name} at {re}+{im}i: {r}");
            }
        }
    }

    #[test]
    fn modularity_examples() {
        let r = modularity_residual(1, ComplexPoint::new(0.2, 1.3).unwrap(), Precision::Double).unwrap();
        assert!(r.absolute <= 1e-9);
        let r = modularity_residual(3, ComplexPoint::i(), Precision::Double).unwrap();
        assert!(r.absolute <= 1e-9);
        let r = modularity_residual(60, ComplexPoint::new(0.1, 0.9).unwrap(), Precision::Extended).unwrap();
        assert!(r.relative <= 1e-6, "{r:?}");
    }

    #[test]
    fn weight_mismatch_is_detected() {
        // Θ_{Γ8} does not transform with weight 4k+2: a sanity check that the
        // residual is not trivially small.
        let tau = ComplexPoint::new(0.1, 0.95).unwrap();
        let z = tau.to_c64();
        let (v, _) = gamma_point_in(&z, 1, tau.im, -40.0, GammaMethod::ThetaPow).unwrap();
        let (vi, _) = gamma_point_in(&(-1.0 / z), 1, 0.95 / z.norm_sqr(), -40.0, GammaMethod::ThetaPow).unwrap();
        assert!((vi / z.powu(6) - v).norm() > 1e-3);
    }
}
