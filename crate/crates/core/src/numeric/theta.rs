use num_complex::Complex64;

use super::{check_eps, CField, ComplexPoint, EvalResult};
use crate::error::Result;
use crate::series::ThetaIndex;

/// `θ₂(τ), θ₃(τ), θ₄(τ)` with their truncation bounds (same order).
#[derive(Clone, Debug)]
pub struct ThetaTriple<F> {
    pub t2: F,
    pub t3: F,
    pub t4: F,
    pub tails: [f64; 3],
}

/// Smallest `N` with `2 r^{(N+1)²} / (1 − r^{2N+3}) < ε` (θ₃, θ₄), where
/// `ln r = −π Im τ`. Returns `N` and the bound.
pub(crate) fn cutoff_theta34(ln_r: f64, ln_eps: f64) -> (usize, f64) {
    let mut n = 0usize;
    loop {
        let a = (n + 1) as f64;
        let ln_tail = std::f64::consts::LN_2 + a * a * ln_r - (-(((2 * n + 3) as f64) * ln_r).exp()).ln_1p();
        if ln_tail < ln_eps {
            return (n, ln_tail.exp());
        }
        n += 1;
    }
}

/// Same for `θ₂`: `2 r^{(N+3/2)²} / (1 − r^{2N+4})`.
pub(crate) fn cutoff_theta2(ln_r: f64, ln_eps: f64) -> (usize, f64) {
    let mut n = 0usize;
    loop {
        let a = n as f64 + 1.5;
        let ln_tail = std::f64::consts::LN_2 + a * a * ln_r - (-(((2 * n + 4) as f64) * ln_r).exp()).ln_1p();
        if ln_tail < ln_eps {
            return (n, ln_tail.exp());
        }
        n += 1;
    }
}

/// All three theta constants at `τ` in the field `F`.
///
/// `im` is `Im τ` as an `f64`; it only drives the cutoff choice.
pub fn theta_triple_in<F: CField>(tau: &F, im: f64, eps: f64) -> ThetaTriple<F> {
    theta_triple_ln_eps(tau, im, eps.ln())
}

/// [`theta_triple_in`] with the tolerance given as `ln ε`, for tolerances
/// below the `f64` range.
pub(crate) fn theta_triple_ln_eps<F: CField>(tau: &F, im: f64, ln_eps: f64) -> ThetaTriple<F> {
    let ln_r = -std::f64::consts::PI * im;
    let (n34, tail34) = cutoff_theta34(ln_r, ln_eps);
    let (n2, tail2) = cutoff_theta2(ln_r, ln_eps);

    let one = F::lift(Complex64::new(1.0, 0.0), tau);
    let u = tau.exp_pi_i();
    let u2 = u.mul(&u);

    // Σ_{n=1}^{N} u^{n²} split by parity of n
    let mut even = F::lift(Complex64::new(0.0, 0.0), tau);
    let mut odd = even.clone();
    let mut power = u.clone(); // u^{n²}
    let mut step = u.clone(); // u^{2n−1}
    for n in 1..=n34 {
        if n % 2 == 0 {
            even = even.add(&power);
        } else {
            odd = odd.add(&power);
        }
        step = step.mul(&u2);
        power = power.mul(&step);
    }
    let t3 = one.add(&even.add(&odd).scale(2.0));
    let t4 = one.add(&even.sub(&odd).scale(2.0));

    // θ₂ = 2 e^{πiτ/4} Σ_{n≥0} u^{n(n+1)}
    let mut sum = one.clone();
    let mut power = one.clone(); // u^{n(n+1)}
    let mut step = one; // u^{2n}
    for _ in 1..=n2 {
        step = step.mul(&u2);
        power = power.mul(&step);
        sum = sum.add(&power);
    }
    let quarter = tau.scale(0.25).exp_pi_i();
    let t2 = quarter.mul(&sum).scale(2.0);

    ThetaTriple { t2, t3, t4, tails: [tail2, tail34, tail34] }
}

/// `θ₂, θ₃, θ₄` at `τ` in binary64.
pub fn theta_triple(tau: ComplexPoint, eps: f64) -> Result<ThetaTriple<Complex64>> {
    check_eps(eps)?;
    tau.check_floor()?;
    Ok(theta_triple_in(&tau.to_c64(), tau.im, eps))
}

/// One theta constant at `τ` with tail bound `≤ ε`.
pub fn theta_eval(index: ThetaIndex, tau: ComplexPoint, eps: f64) -> Result<EvalResult> {
    let t = theta_triple(tau, eps)?;
    let (value, tail_bound) = match index {
        ThetaIndex::Two => (t.t2, t.tails[0]),
        ThetaIndex::Three => (t.t3, t.tails[1]),
        ThetaIndex::Four => (t.t4, t.tails[2]),
    };
    Ok(EvalResult { value, tail_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::mp::MpComplex;
    use std::f64::consts::PI;

    const EPS: f64 = 1e-13;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn th(idx: ThetaIndex, z: Complex64) -> Complex64 {
        theta_eval(idx, ComplexPoint::from_c64(z).unwrap(), EPS).unwrap().value
    }

    /// Plain summation over |n| ≤ 60, independent of the cutoff logic.
    fn brute(idx: ThetaIndex, z: Complex64) -> Complex64 {
        let mut s = c(0.0, 0.0);
        for n in -60i64..=60 {
            let term = match idx {
                ThetaIndex::Two => {
                    let e = (n as f64 + 0.5).powi(2);
                    (Complex64::i() * PI * z * e).exp()
                }
                ThetaIndex::Three => (Complex64::i() * PI * z * (n * n) as f64).exp(),
                ThetaIndex::Four => {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    (Complex64::i() * PI * z * (n * n) as f64).exp() * sign
                }
            };
            s += term;
        }
        s
    }

    #[test]
    fn agrees_with_brute_force_sum() {
        for z in [c(0.0, 1.0), c(0.3, 1.1), c(-0.45, 0.6), c(0.5, 0.2), c(0.1, 3.0)] {
            for idx in [ThetaIndex::Two, ThetaIndex::Three, ThetaIndex::Four] {
                let d = (th(idx, z) - brute(idx, z)).norm();
                assert!(d < 1e-12, "{idx:?} at {z}: {d}");
            }
        }
    }

    #[test]
    fn tail_bound_respects_eps() {
        for eps in [1e-3, 1e-8, 1e-15, 1e-30] {
            for im in [0.05, 0.3, 1.0, 4.0] {
                let p = ComplexPoint::new(0.2, im).unwrap();
                for idx in [ThetaIndex::Two, ThetaIndex::Three, ThetaIndex::Four] {
                    let r = theta_eval(idx, p, eps).unwrap();
                    assert!(r.tail_bound >= 0.0 && r.tail_bound < eps);
                }
            }
        }
    }

    #[test]
    fn modular_s_and_t_transformations() {
        let tau = c(0.0, 2.0);
        let s = (-Complex64::i() * tau).sqrt();
        let lhs = th(ThetaIndex::Three, -1.0 / tau);
        assert!((lhs - s * th(ThetaIndex::Three, tau)).norm() <= 2.0 * EPS);

        let tau = c(0.3, 1.1);
        let d = th(ThetaIndex::Four, tau + 1.0) - th(ThetaIndex::Three, tau);
        assert!(d.norm() <= 2.0 * EPS);
    }

    #[test]
    fn jacobi_identity_at_i() {
        let i = c(0.0, 1.0);
        let (a, b, d) = (th(ThetaIndex::Two, i), th(ThetaIndex::Three, i), th(ThetaIndex::Four, i));
        let defect = a.powu(4) + d.powu(4) - b.powu(4);
        assert!(defect.norm() <= 4.0 * EPS * b.norm().powi(3) * 4.0);
    }

    #[test]
    fn floor_is_enforced() {
        let p = ComplexPoint::new(0.0, 0.04).unwrap();
        assert!(matches!(
            theta_eval(ThetaIndex::Three, p, 1e-10),
            Err(Error::BelowImaginaryFloor { .. })
        ));
        assert!(theta_eval(ThetaIndex::Three, ComplexPoint::i(), 0.0).is_err());
        assert!(ComplexPoint::new(0.0, -1.0).is_err());
    }

    #[test]
    fn extended_precision_matches_double() {
        let z = c(0.3, 0.9);
        let mp = MpComplex::from_c64(z, 192);
        let t = theta_triple_in(&mp, 0.9, 2f64.powi(-190));
        let d = theta_triple(ComplexPoint::from_c64(z).unwrap(), 1e-16).unwrap();
        assert!((t.t2.to_c64() - d.t2).norm() < 1e-14);
        assert!((t.t3.to_c64() - d.t3).norm() < 1e-14);
        assert!((t.t4.to_c64() - d.t4).norm() < 1e-14);
        // Jacobi identity to ~50 digits
        let j = t.t3.powu(4).sub(&t.t2.powu(4)).sub(&t.t4.powu(4));
        assert!(j.ln_abs() < -100.0);
    }
}
