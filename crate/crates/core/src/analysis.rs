//! Density of zero heights, height law, equidistribution and valence checks.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::gamma_series;
use crate::error::{Error, Result};
use crate::numeric::{gamma_mass_ln, phi_of_y, phi_prime_of_y};
use crate::zeros::{arc_roots, zero_height, zero_heights};
use crate::{ell, k_prime, SQRT3_OVER_2};

/// Upper end of the quadrature range; beyond it `ϱ ≈ 48e^{−πy}` is used.
pub const QUADRATURE_CUTOFF: f64 = 8.0;
/// Absolute tolerance of the adaptive quadrature.
pub const QUADRATURE_TOL: f64 = 1e-9;

/// `ϱ(y) = (3/π) φ'(y)`, the limiting density of zero heights.
pub fn density(y: f64) -> Result<f64> {
    Ok(3.0 / PI * phi_prime_of_y(y)?)
}

fn simpson(f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
        + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?)
}

/// `∫_a^b ϱ(y) dy` by adaptive Simpson.
pub fn density_integral(a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a >= SQRT3_OVER_2 - 1e-12 && b >= a) {
        return Err(Error::InvalidArgument(format!("bad integration range [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    let f = |y: f64| density(y);
    let fa = f(a)?;
    let fb = f(b)?;
    let fm = f(0.5 * (a + b))?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, tol, 40)
}

/// `∫_{√3/2}^∞ ϱ`: quadrature up to [`QUADRATURE_CUTOFF`] plus the tail
/// `48e^{−πY}/π`.
pub fn total_mass() -> Result<f64> {
    let body = density_integral(SQRT3_OVER_2, QUADRATURE_CUTOFF, QUADRATURE_TOL)?;
    Ok(body + 48.0 * (-PI * QUADRATURE_CUTOFF).exp() / PI)
}

/// `max |ϱ(y)/(48e^{−πy}) − 1|` over a grid of `y ≥ 2`, with the per-point
/// deviations.
pub fn density_tail_check(grid: &[f64]) -> Result<(f64, Vec<f64>)> {
    let mut devs = Vec::with_capacity(grid.len());
    for &y in grid {
        if !(y >= 2.0) {
            return Err(Error::InvalidArgument(format!("tail check needs y ≥ 2, got {y}")));
        }
        devs.push((density(y)? / (48.0 * (-PI * y).exp()) - 1.0).abs());
    }
    let max = devs.iter().cloned().fold(0.0, f64::max);
    Ok((max, devs))
}

/// Kolmogorov distance between the empirical CDF of `xs` and `cdf`.
pub fn sup_distance(xs: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let c = cdf(x);
            ((i + 1) as f64 / n - c).max(c - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// One equal-width bin of arc angles in `[2π/3, π]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub expected: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquidistReport {
    pub k: u32,
    pub ell: u32,
    /// Arc angles against the uniform law on `[2π/3, π]`.
    pub arc_sup_distance: f64,
    /// Heights against `(3/π)(φ(y) − 2π/3)`, the integral of `ϱ`.
    pub height_sup_distance: f64,
    /// The counting bound `3/ℓ`.
    pub bound: f64,
    pub bins: Vec<Bin>,
}

/// Uniform CDF on `[2π/3, π]`.
fn arc_cdf(phi: f64) -> f64 {
    ((phi - 2.0 * PI / 3.0) / (PI / 3.0)).clamp(0.0, 1.0)
}

pub fn equidistribution(k: u32, bins: usize) -> Result<EquidistReport> {
    let l = ell(k);
    if l < 10 {
        return Err(Error::InvalidArgument(format!("k = {k} gives ℓ = {l} < 10 zeros; too few for a statistic")));
    }
    if bins == 0 {
        return Err(Error::InvalidArgument("bins must be positive".into()));
    }
    let phis: Vec<f64> = arc_roots(k, 1e-14)?.iter().map(|r| r.phi).collect();
    let heights = zero_heights(k, 1e-13)?;
    let arc = sup_distance(&phis, arc_cdf);
    // ∫_{√3/2}^{y} ϱ = (3/π)(φ(y) − 2π/3), so mapping each height through
    // that CDF leaves a sample to compare with the uniform law on [0, 1]
    let mapped: Vec<f64> = heights
        .par_iter()
        .map(|&y| phi_of_y(y).map(arc_cdf))
        .collect::<Result<_>>()?;
    let height = sup_distance(&mapped, |u| u);
    let width = (PI / 3.0) / bins as f64;
    let mut table: Vec<Bin> = (0..bins)
        .map(|b| Bin {
            lo: 2.0 * PI / 3.0 + b as f64 * width,
            hi: 2.0 * PI / 3.0 + (b + 1) as f64 * width,
            count: 0,
            expected: l as f64 / bins as f64,
        })
        .collect();
    for &p in &phis {
        let b = (((p - 2.0 * PI / 3.0) / width) as usize).min(bins - 1);
        table[b].count += 1;
    }
    Ok(EquidistReport {
        k,
        ell: l,
        arc_sup_distance: arc,
        height_sup_distance: height,
        bound: 3.0 / l as f64,
        bins: table,
    })
}

/// `(1/π) ln(16k/(πm))`
pub fn height_simple(k: u32, m: u32) -> f64 {
    (16.0 * k as f64 / (PI * m as f64)).ln() / PI
}

/// `(1/π) ln(16/sin(π(m − 1/2)/k))`
pub fn height_refined(k: u32, m: u32) -> f64 {
    (16.0 / (PI * (m as f64 - 0.5) / k as f64).sin()).ln() / PI
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeightRow {
    pub m: u32,
    pub y_measured: f64,
    pub y_simple: f64,
    pub y_refined: f64,
    /// `y_measured − y_refined`
    pub dev_refined: f64,
    /// `y_measured − y_simple`
    pub dev_simple: f64,
    /// `15e^{−2πy} + 10⁻⁶`, the allowance for `dev_refined`.
    pub refined_bound: f64,
    /// `ln(m/(m − 1/2))/π`, the fixed-`m` offset of the simple predictor.
    pub simple_offset: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeightLawReport {
    pub k: u32,
    pub rows: Vec<HeightRow>,
}

pub fn height_law(k: u32, m_max: u32) -> Result<HeightLawReport> {
    let l = ell(k);
    if m_max == 0 || m_max > l {
        return Err(Error::InvalidArgument(format!("m_max = {m_max} outside 1..={l}")));
    }
    let rows = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let y = zero_height(k, m, 1e-14)?;
            let y_simple = height_simple(k, m);
            let y_refined = height_refined(k, m);
            Ok(HeightRow {
                m,
                y_measured: y,
                y_simple,
                y_refined,
                dev_refined: y - y_refined,
                dev_simple: y - y_simple,
                refined_bound: 15.0 * (-2.0 * PI * y).exp() + 1e-6,
                simple_offset: (m as f64 / (m as f64 - 0.5)).ln() / PI,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HeightLawReport { k, rows })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValenceReport {
    pub k: u32,
    pub ell: u32,
    pub k_prime: u32,
    /// `12ℓ + k′ = 4k`, i.e. `ℓ + k′/12 = k/3`.
    pub identity_holds: bool,
    /// `Θ(i∞) = r(0) = 1`.
    pub constant_term_is_one: bool,
    /// `ln |Θ(i)|`; finite means `Θ(i) ≠ 0`.
    pub ln_theta_at_i: f64,
    pub passed: bool,
}

/// Valence bookkeeping for weight `4k`: `ℓ` zeros on the line, `k′/4` at
/// `ρ` (weight `1/3`), none at `i` or `i∞`.
pub fn valence_check(k: u32) -> Result<ValenceReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let l = ell(k);
    let kp = k_prime(k);
    let identity_holds = 12 * l + kp == 4 * k && matches!(kp, 0 | 4 | 8);
    let series = gamma_series(k, 1)?;
    let constant_term_is_one = series.coeff(0) == &BigInt::one();
    let ln_theta_at_i = gamma_mass_ln(k, 1.0)?;
    let passed = identity_holds && constant_term_is_one && ln_theta_at_i.is_finite();
    let report = ValenceReport { k, ell: l, k_prime: kp, identity_holds, constant_term_is_one, ln_theta_at_i, passed };
    if !passed {
        return Err(Error::CheckFailed(format!("valence bookkeeping for k = {k}: {report:?}")));
    }
    Ok(report)
}
