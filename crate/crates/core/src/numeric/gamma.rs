use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::theta::{theta_triple, theta_triple_ln_eps};
use super::{check_eps, CField, ComplexPoint, EvalResult, Precision, IM_FLOOR};
use crate::cache::gamma_series;
use crate::error::{Error, Result};
use crate::mp::{MpComplex, MpReal};
use crate::series::{ExactSeries, NomeUnit};

/// Largest q-order the q-series path will request from the cache.
pub const MAX_QSERIES_ORDER: usize = 8192;

/// Evaluation route for `Θ_{Γ_{8k}}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaMethod {
    /// `(θ₂^{8k} + θ₃^{8k} + θ₄^{8k}) / 2`
    ThetaPow,
    /// `θ₃^{8k} (1 + λ^{2k} + (1 − λ)^{2k}) / 2`
    LambdaPoly,
    /// Exact q-expansion summed in multiprecision.
    QSeries,
}

impl GammaMethod {
    pub const ALL: [GammaMethod; 3] = [GammaMethod::ThetaPow, GammaMethod::LambdaPoly, GammaMethod::QSeries];
}

/// `ln(eᵃ + eᵇ)`
pub(crate) fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln((1 + x)ⁿ − 1)` for `x = e^{ln_x} ≥ 0`.
fn ln_pow_excess(n: f64, ln_x: f64) -> f64 {
    let t = n * ln_x.exp().ln_1p();
    if t < 30.0 {
        t.exp_m1().ln()
    } else {
        t + (-(-t).exp()).ln_1p()
    }
}

fn ln_tail(tail: f64, ln_eps: f64) -> f64 {
    if tail > 0.0 {
        tail.ln()
    } else {
        ln_eps
    }
}

/// `ln Θ_{Γ_{8k}}(it)`; the value is real and at least 1.
pub fn gamma_mass_ln(k: u32, t: f64) -> Result<f64> {
    let p = ComplexPoint::new(0.0, t)?;
    let th = theta_triple(p, 1e-17)?;
    let n = 8 * k as i32;
    let r2 = (th.t2.re / th.t3.re).powi(n);
    let r4 = (th.t4.re / th.t3.re).powi(n);
    Ok(8.0 * k as f64 * th.t3.re.ln() + (r2 + r4).ln_1p() - LN_2)
}

/// Smallest q-order `N` whose tail `Σ_{n>N} r(n)|q|ⁿ` is provably below
/// `e^{ln_eps}` at height `im`, together with `ln` of that bound.
///
/// Since `r(n) ≥ 0`, `r(n) e^{−2πnt} ≤ Θ(it)` for every `t > 0`, so the tail
/// is at most `Θ(it) ρ^{N+1}/(1 − ρ)` with `ρ = e^{−2π(im − t)}`; `t` is
/// chosen from a scan to minimise `N`.
pub fn qseries_required_order(k: u32, im: f64, ln_eps: f64) -> Result<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for j in 1..40 {
        let t = im * j as f64 / 40.0;
        if t < IM_FLOOR {
            continue;
        }
        let ln_mass = gamma_mass_ln(k, t)?;
        let ln_rho = -2.0 * PI * (im - t);
        let ln_one_minus = (-ln_rho.exp_m1()).ln();
        let steps = ((ln_eps - ln_mass + ln_one_minus) / ln_rho).ceil().max(1.0);
        if steps > 1e9 {
            continue;
        }
        let n = steps as usize - 1;
        let bound = ln_mass + (n as f64 + 1.0) * ln_rho - ln_one_minus;
        if best.map_or(true, |(b, _)| n < b) {
            best = Some((n, bound));
        }
    }
    best.ok_or_else(|| Error::InvalidArgument(format!("Im τ = {im} is too small for the q-series path")))
}

/// Working bits so that summing terms of total mass `e^{ln_mass}` leaves a
/// rounding error well under `e^{ln_eps}`.
fn auto_bits(ln_mass: f64, ln_eps: f64, terms: usize) -> usize {
    let raw = (ln_mass - ln_eps).max(0.0) / LN_2 + (terms.max(2) as f64).log2() + 16.0;
    (raw.ceil() as usize).max(64)
}

/// `Σ_{n≤N} r(n) qⁿ` in multiprecision; returns the sum and `ln` of its
/// tail bound. `ln_eps` is an absolute tolerance.
pub(crate) fn qseries_sum(series: &ExactSeries, k: u32, tau: ComplexPoint, ln_eps: f64) -> Result<(MpComplex, f64)> {
    if series.unit() != NomeUnit::Whole {
        return Err(Error::UnitMismatch { left: series.unit().label(), right: NomeUnit::Whole.label() });
    }
    tau.check_floor()?;
    let (n, ln_bound) = qseries_required_order(k, tau.im, ln_eps)?;
    if series.order() < n {
        return Err(Error::InsufficientOrder { available: series.order(), required: n });
    }
    let ln_mass = gamma_mass_ln(k, tau.im)?;
    let bits = auto_bits(ln_mass, ln_eps, n);
    let t = MpComplex::from_c64(tau.to_c64(), bits);
    let two_tau = MpComplex::new(&t.re + &t.re, &t.im + &t.im);
    let q = two_tau.exp_pi_i();
    let coeffs = &series.coeffs()[..=n];
    let sum = if tau.re == 0.5 || tau.re == 0.0 {
        // q is real here; a real Horner pass is half the work.
        let qr = q.re.clone();
        let mut acc = MpReal::zero(bits);
        for c in coeffs.iter().rev() {
            acc = &(&acc * &qr) + &MpReal::from_bigint(c, bits);
        }
        MpComplex::real(acc)
    } else {
        let mut acc = MpComplex::real(MpReal::zero(bits));
        for c in coeffs.iter().rev() {
            acc = &(&acc * &q) + &MpComplex::real(MpReal::from_bigint(c, bits));
        }
        acc
    };
    Ok((sum, ln_bound))
}

/// Sum a supplied q-expansion of `Θ_{Γ_{8k}}` at `τ`.
///
/// Fails with [`Error::InsufficientOrder`] when the series is too short for
/// the requested tolerance.
pub fn theta_gamma_qseries(series: &ExactSeries, k: u32, tau: ComplexPoint, eps: f64) -> Result<EvalResult> {
    check_eps(eps)?;
    let (sum, ln_bound) = qseries_sum(series, k, tau, eps.ln())?;
    let value = sum.to_c64();
    if !value.is_finite() {
        return Err(Error::NonFinite("theta_gamma q-series"));
    }
    Ok(EvalResult { value, tail_bound: ln_bound.exp() })
}

/// `Θ_{Γ_{8k}}(τ)` in binary64.
pub fn theta_gamma_eval(k: u32, tau: ComplexPoint, eps: f64, method: GammaMethod) -> Result<EvalResult> {
    theta_gamma_eval_with(k, tau, eps, method, Precision::Double)
}

/// `Θ_{Γ_{8k}}(τ)` at the given working precision.
pub fn theta_gamma_eval_with(
    k: u32,
    tau: ComplexPoint,
    eps: f64,
    method: GammaMethod,
    precision: Precision,
) -> Result<EvalResult> {
    check_eps(eps)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    tau.check_floor()?;
    let (value, ln_bound) = match method {
        GammaMethod::QSeries => {
            let (n, _) = qseries_required_order(k, tau.im, eps.ln())?;
            if n > MAX_QSERIES_ORDER {
                return Err(Error::InsufficientOrder { available: MAX_QSERIES_ORDER, required: n });
            }
            let series = gamma_series(k, n)?;
            return theta_gamma_qseries(&series, k, tau, eps);
        }
        _ => match precision.bits() {
            None => {
                let (v, b) = gamma_point_in(&tau.to_c64(), k, tau.im, eps.ln(), method)?;
                (v, b)
            }
            Some(bits) => {
                let t = MpComplex::from_c64(tau.to_c64(), bits);
                let (v, b) = gamma_point_in(&t, k, tau.im, eps.ln(), method)?;
                (v.to_c64(), b)
            }
        },
    };
    if !value.is_finite() {
        return Err(Error::NonFinite("theta_gamma"));
    }
    Ok(EvalResult { value, tail_bound: ln_bound.exp() })
}

/// Point-value routes in any field. Returns the value and `ln` of the
/// truncation bound, tightening the theta tolerance until the bound is
/// below `e^{ln_eps}`.
pub(crate) fn gamma_point_in<F: CField>(
    tau: &F,
    k: u32,
    im: f64,
    ln_eps: f64,
    method: GammaMethod,
) -> Result<(F, f64)> {
    let n = 8.0 * k as f64;
    let mut ln_inner = ln_eps;
    for _ in 0..12 {
        let th = theta_triple_ln_eps(tau, im, ln_inner);
        let d = [
            ln_tail(th.tails[0], ln_inner),
            ln_tail(th.tails[1], ln_inner),
            ln_tail(th.tails[2], ln_inner),
        ];
        let l = [th.t2.ln_abs(), th.t3.ln_abs(), th.t4.ln_abs()];
        let (value, ln_bound) = match method {
            GammaMethod::ThetaPow => {
                let p = 8 * k as u64;
                let sum = th.t2.powu(p).add(&th.t3.powu(p)).add(&th.t4.powu(p)).scale(0.5);
                let mut b = f64::NEG_INFINITY;
                for i in 0..3 {
                    b = ln_add(b, n * l[i] + ln_pow_excess(n, d[i] - l[i]));
                }
                (sum, b - LN_2)
            }
            GammaMethod::LambdaPoly => {
                let one = F::lift(Complex64::new(1.0, 0.0), tau);
                let lam = th.t2.div(&th.t3).powu(4);
                let e = 2 * k as u64;
                let poly = one.add(&lam.powu(e)).add(&one.sub(&lam).powu(e));
                let value = th.t3.powu(8 * k as u64).mul(&poly).scale(0.5);
                // perturbation of λ from the θ₂, θ₃ tails
                if d[1] >= l[1] {
                    ln_inner -= 10.0;
                    continue;
                }
                let up = 4.0 * (d[0] - l[0]).exp().ln_1p() - 4.0 * (-(d[1] - l[1]).exp()).ln_1p();
                let ln_lam = lam.ln_abs();
                let ln_dlam = ln_lam + up.exp_m1().ln();
                let ln_one_minus = one.sub(&lam).ln_abs();
                let ln_dpoly = ln_add(
                    2.0 * k as f64 * ln_lam + ln_pow_excess(2.0 * k as f64, ln_dlam - ln_lam),
                    2.0 * k as f64 * ln_one_minus + ln_pow_excess(2.0 * k as f64, ln_dlam - ln_one_minus),
                );
                let ln_t3n = n * l[1];
                let ln_e3 = ln_pow_excess(n, d[1] - l[1]);
                let ln_poly_hi = ln_add(poly.ln_abs(), ln_dpoly);
                let b = ln_add(ln_t3n + ln_e3 + ln_poly_hi, ln_t3n + ln_dpoly) - LN_2;
                (value, b)
            }
            GammaMethod::QSeries => unreachable!("q-series is not a point-value route"),
        };
        if ln_bound <= ln_eps {
            return Ok((value, ln_bound));
        }
        ln_inner -= (ln_bound - ln_eps) + 1.0;
    }
    Err(Error::Internal("theta_gamma tail bound did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(k: u32, re: f64, im: f64, m: GammaMethod) -> EvalResult {
        theta_gamma_eval(k, ComplexPoint::new(re, im).unwrap(), 1e-14, m).unwrap()
    }

    #[test]
    fn three_methods_agree_at_i() {
        let vals: Vec<_> = GammaMethod::ALL.iter().map(|&m| eval(1, 0.0, 1.0, m).value).collect();
        for a in &vals {
            for b in &vals {
                assert!((a - b).norm() <= 1e-10 * a.norm());
            }
        }
    }

    #[test]
    fn three_methods_agree_on_a_grid() {
        for k in [1u32, 2, 3, 10] {
            for i in 0..20 {
                let re = -0.5 + i as f64 / 19.0;
                let im = 0.8 + 0.07 * i as f64;
                let r: Vec<_> = GammaMethod::ALL.iter().map(|&m| eval(k, re, im, m)).collect();
                let scale = r[0].value.norm().max(1.0);
                for a in &r {
                    for b in &r {
                        let tol = a.tail_bound + b.tail_bound + 1e-12 * scale;
                        assert!((a.value - b.value).norm() <= tol, "k={k} τ={re}+{im}i");
                    }
                }
            }
        }
    }

    #[test]
    fn tends_to_one_high_in_the_plane() {
        for k in [1, 7, 40] {
            for m in GammaMethod::ALL {
                let v = eval(k, 0.3, 6.0, m).value;
                assert!((v - 1.0).norm() < 1e-12 * k as f64, "k={k} {m:?}: {v}");
            }
        }
    }

    #[test]
    fn small_at_a_known_zero_height() {
        let tau = ComplexPoint::on_line(2.04207).unwrap();
        let v = eval(60, 0.5, 2.04207, GammaMethod::ThetaPow).value;
        let t3 = theta_triple(tau, 1e-16).unwrap().t3;
        assert!(v.norm() <= 1e-3 * t3.norm().powi(480));
    }

    #[test]
    fn q_series_order_error() {
        let s = crate::series::theta_gamma_series(1, 3).unwrap();
        let r = theta_gamma_qseries(&s, 1, ComplexPoint::new(0.0, 0.5).unwrap(), 1e-12);
        assert!(matches!(r, Err(Error::InsufficientOrder { .. })));
        let r = theta_gamma_eval(5, ComplexPoint::new(0.0, 0.06).unwrap(), 1e-300, GammaMethod::QSeries);
        assert!(matches!(r, Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn mass_matches_q_series_at_imaginary_points() {
        for (k, t) in [(1u32, 1.0), (3, 0.7), (10, 1.5)] {
            let v = eval(k, 0.0, t, GammaMethod::QSeries).value.re;
            assert!((gamma_mass_ln(k, t).unwrap() - v.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn extended_precision_matches_double() {
        let tau = ComplexPoint::new(0.1, 0.9).unwrap();
        for m in [GammaMethod::ThetaPow, GammaMethod::LambdaPoly] {
            let d = theta_gamma_eval(3, tau, 1e-14, m).unwrap();
            let e = theta_gamma_eval_with(3, tau, 1e-14, m, Precision::Extended).unwrap();
            assert!((d.value - e.value).norm() < 1e-12 * e.value.norm().max(1.0));
        }
    }

    #[test]
    fn required_order_grows_as_tolerance_shrinks() {
        let a = qseries_required_order(5, 1.0, -20.0).unwrap().0;
        let b = qseries_required_order(5, 1.0, -60.0).unwrap().0;
        assert!(b > a);
        let c = qseries_required_order(5, 2.0, -60.0).unwrap().0;
        assert!(c < b);
    }
}
