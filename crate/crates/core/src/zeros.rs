//! Roots of `p_{2k}(z) = 1 + z^{2k} + (1 − z)^{2k}` and zeros of
//! `Θ_{Γ_{8k}} = θ₃^{8k} p_{2k}(λ) / 2` on the line `Re τ = 1/2`.
//!
//! Arc angles are handled through the gap `g = π − φ`, which stays exact in
//! relative terms as `φ → π`; every closed form below is written in `g`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::gamma_series;
use crate::error::{Error, Result};
use crate::numeric::{lambda_eval, lambda_prime_eval, theta_triple, ComplexPoint};
use crate::numeric::{ln_add, qseries_required_order, qseries_sum};
use crate::{ell, k_prime, SQRT3_OVER_2};

const EVAL_EPS: f64 = 1e-16;

/// Default `|fₖ|` tolerance at an arc root.
pub const F_RESIDUAL_TOL: f64 = 1e-12;
/// Default relative residual for `p_{2k}` at a line point.
pub const POLY_RESIDUAL_TOL: f64 = 1e-10;
/// Default `|Θ|/|θ₃|^{8k}` tolerance through the exact expansion.
pub const QSERIES_RESIDUAL_TOL: f64 = 1e-8;

/// Attainable `|fₖ|` at a binary64 root: `2cos(kφ)` carries an absolute
/// error of a few `k·π·ε`.
pub fn f_residual_tolerance(k: u32) -> f64 {
    F_RESIDUAL_TOL.max(8.0 * k as f64 * PI * f64::EPSILON)
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    Ok(())
}

/// `cos(k·x)` with the rounding error of the product `k·x` corrected to
/// first order.
fn cos_mul(k: u32, x: f64) -> f64 {
    let kf = k as f64;
    let p = kf * x;
    let e = kf.mul_add(x, -p);
    p.cos() - e * p.sin()
}

/// `(2cos(φ/2))^{2k}` in log space, flushed to zero on underflow.
fn power_term(k: u32, half_cos: f64) -> f64 {
    if half_cos <= 0.0 {
        return 0.0;
    }
    (2.0 * k as f64 * (2.0 * half_cos).ln()).exp()
}

/// `fₖ(φ) = 2cos(kφ) + (2cos(φ/2))^{2k}` for `φ ∈ [2π/3, π]`.
pub fn f_aux(k: u32, phi: f64) -> Result<f64> {
    check_k(k)?;
    if !(2.0 * PI / 3.0 - 1e-15..=PI + 1e-15).contains(&phi) {
        return Err(Error::InvalidArgument(format!("φ = {phi} outside [2π/3, π]")));
    }
    Ok(2.0 * cos_mul(k, phi) + power_term(k, (phi / 2.0).cos()))
}

/// `fₖ(π − g) = 2(−1)ᵏ cos(kg) + (2 sin(g/2))^{2k}`.
fn f_gap(k: u32, g: f64) -> f64 {
    let sign = if k % 2 == 0 { 2.0 } else { -2.0 };
    sign * cos_mul(k, g) + power_term(k, (g / 2.0).sin())
}

/// The `ℓ = ⌊k/3⌋` intervals `(π(k−ℓ+j−1)/k, π(k−ℓ+j)/k)`, `j = 1..ℓ`,
/// each holding one root of `fₖ`.
pub fn arc_brackets(k: u32) -> Vec<(f64, f64)> {
    let l = ell(k);
    (1..=l)
        .map(|j| {
            let lo = PI * (k - l + j - 1) as f64 / k as f64;
            let hi = PI * (k - l + j) as f64 / k as f64;
            (lo, hi)
        })
        .collect()
}

/// A root `φ_{k,j}` of `fₖ` on the arc `|z − 1| = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcRoot {
    pub k: u32,
    pub j: u32,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub phi: f64,
    /// `π − φ`, accurate to full relative precision.
    pub gap: f64,
    pub f_residual: f64,
}

impl ArcRoot {
    /// `1 + e^{iφ}`
    pub fn shifted_arc_point(&self) -> Complex64 {
        let h = (self.gap / 2.0).sin();
        Complex64::new(2.0 * h * h, self.gap.sin())
    }

    /// `e^{i(π − φ)}`
    pub fn unit_arc_point(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.gap)
    }

    /// `1/2 + (i/2) tan(φ/2)`
    pub fn line_point(&self) -> Complex64 {
        Complex64::new(0.5, 0.5 / (self.gap / 2.0).tan())
    }
}

fn bisect_gap(k: u32, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = f_gap(k, lo);
    let f_hi = f_gap(k, hi);
    if f_lo.abs() < 1.0 || f_hi.abs() < 1.0 || f_lo.signum() == f_hi.signum() {
        return Err(Error::Internal(format!(
            "bracket ({lo}, {hi}) for k = {k} has endpoint values {f_lo}, {f_hi}"
        )));
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f_gap(k, mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(if f_gap(k, lo).abs() <= f_gap(k, hi).abs() { lo } else { hi })
}

/// One root per bracket, bisected to full binary64 resolution (so the final
/// width is below any `tol` above one ulp). `tol` only has to be positive.
pub fn arc_roots(k: u32, tol: f64) -> Result<Vec<ArcRoot>> {
    check_k(k)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let l = ell(k);
    let f_tol = f_residual_tolerance(k);
    (1..=l)
        .into_par_iter()
        .map(|j| {
            let g_lo = PI * (l - j) as f64 / k as f64;
            let g_hi = PI * (l - j + 1) as f64 / k as f64;
            let gap = bisect_gap(k, g_lo, g_hi)?;
            let f_residual = f_gap(k, gap).abs();
            if f_residual > f_tol {
                return Err(Error::ResidualFailure { path: "f_aux", value: f_residual, tolerance: f_tol });
            }
            Ok(ArcRoot {
                k,
                j,
                bracket_lo: PI - g_hi,
                bracket_hi: PI - g_lo,
                phi: PI - gap,
                gap,
                f_residual,
            })
        })
        .collect()
}

/// Multiplicity `k′/4` of `ρ` (and `ρ̄`) as a root of `p_{2k}`.
pub fn rho_multiplicity(k: u32) -> u32 {
    k_prime(k) / 4
}

/// `|p_{2k}(z)| / max(1, |z|, |1 − z|)^{2k}`.
pub fn poly_relative_residual(k: u32, z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let m = 1f64.max(z.norm()).max((one - z).norm());
    let n = 2 * k;
    let a = (z / m).powu(n);
    let b = ((one - z) / m).powu(n);
    let c = (-(n as f64) * m.ln()).exp();
    (a + b + c).norm()
}

/// Complex lists serialised as `[{"re": .., "im": ..}, ..]`.
mod points {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Point {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|z| Point { re: z.re, im: z.im }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<Point>::deserialize(d)?.into_iter().map(|p| Complex64::new(p.re, p.im)).collect())
    }
}

/// All `2k` roots of `p_{2k}`, grouped by where they lie.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootInventory {
    pub k: u32,
    /// On `Re z = 1/2` with `Im z > √3/2`, by increasing height.
    #[serde(with = "points")]
    pub line_upper: Vec<Complex64>,
    #[serde(with = "points")]
    pub line_lower: Vec<Complex64>,
    /// On `|z| = 1`: upper half first, then conjugates.
    #[serde(with = "points")]
    pub unit_arc: Vec<Complex64>,
    /// On `|z − 1| = 1`: upper half first, then conjugates.
    #[serde(with = "points")]
    pub shifted_arc: Vec<Complex64>,
    /// `ρ, ρ̄` pairs, repeated `rho_multiplicity` times.
    #[serde(with = "points")]
    pub rho: Vec<Complex64>,
    pub rho_multiplicity: u32,
    pub k_prime: u32,
}

impl RootInventory {
    /// Root count with multiplicity; always `2k`.
    pub fn total_count(&self) -> usize {
        self.line_upper.len() + self.line_lower.len() + self.unit_arc.len() + self.shifted_arc.len() + self.rho.len()
    }

    /// Every root with multiplicity.
    pub fn all_roots(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total_count());
        out.extend(&self.line_upper);
        out.extend(&self.line_lower);
        out.extend(&self.unit_arc);
        out.extend(&self.shifted_arc);
        out.extend(&self.rho);
        out
    }
}

/// Residual allowance for a binary64 root of `p_{2k}`: the rounding of the
/// root alone moves `p` by about `2k·ε` relative.
fn poly_tolerance(k: u32, tol: f64) -> f64 {
    tol.max(POLY_RESIDUAL_TOL).max(64.0 * k as f64 * f64::EPSILON)
}

/// Builds the full root set of `p_{2k}` from the arc roots.
pub fn classify_roots(k: u32, tol: f64) -> Result<RootInventory> {
    let roots = arc_roots(k, tol)?;
    let line_upper: Vec<Complex64> = roots.iter().map(ArcRoot::line_point).collect();
    let line_lower = line_upper.iter().map(Complex64::conj).collect();
    let upper_unit: Vec<_> = roots.iter().map(ArcRoot::unit_arc_point).collect();
    let upper_shift: Vec<_> = roots.iter().map(ArcRoot::shifted_arc_point).collect();
    let with_conj = |v: Vec<Complex64>| {
        let mut out = v.clone();
        out.extend(v.iter().map(Complex64::conj));
        out
    };
    let rho = Complex64::new(0.5, SQRT3_OVER_2);
    let inv = RootInventory {
        k,
        rho: (0..rho_multiplicity(k)).flat_map(|_| [rho, rho.conj()]).collect(),
        line_upper,
        line_lower,
        unit_arc: with_conj(upper_unit),
        shifted_arc: with_conj(upper_shift),
        rho_multiplicity: rho_multiplicity(k),
        k_prime: k_prime(k),
    };
    if inv.total_count() != 2 * k as usize {
        return Err(Error::Internal(format!("found {} roots of p_{}", inv.total_count(), 2 * k)));
    }
    let limit = poly_tolerance(k, tol);
    for z in inv.all_roots() {
        if (z - Complex64::new(0.5, SQRT3_OVER_2)).norm() < 1e-12
            || (z - Complex64::new(0.5, -SQRT3_OVER_2)).norm() < 1e-12
        {
            continue;
        }
        let r = poly_relative_residual(k, z);
        if r > limit {
            return Err(Error::ResidualFailure { path: "poly", value: r, tolerance: limit });
        }
    }
    Ok(inv)
}

/// `g(y) = π − φ(y) = −arg(1 − λ(1/2 + iy))` and `g'(y)`.
fn gap_of_y(y: f64) -> Result<(f64, f64)> {
    let p = ComplexPoint::on_line(y)?;
    let l = lambda_eval(p, EVAL_EPS)?.value;
    let d = lambda_prime_eval(p, EVAL_EPS)?.value;
    let g = -(Complex64::new(1.0, 0.0) - l).arg();
    Ok((g, -(d / (l - 1.0)).re))
}

/// The `y ≥ √3/2` with `π − φ(y) = gap`.
///
/// Newton on `ln g(y)`, which is close to linear with slope `−π`, kept
/// inside a bracket that shrinks by bisection whenever a step leaves it.
pub fn invert_gap_on_line(gap: f64, tol: f64) -> Result<f64> {
    if !(gap > 0.0 && gap <= PI / 3.0 + 1e-15) {
        return Err(Error::InvalidArgument(format!("gap {gap} outside (0, π/3]")));
    }
    if gap >= PI / 3.0 {
        return Ok(SQRT3_OVER_2);
    }
    let target = gap.ln();
    let mut lo = SQRT3_OVER_2;
    let mut hi = ((16.0 / gap.sin()).ln() / PI).max(SQRT3_OVER_2) + 0.25;
    while gap_of_y(hi)?.0 > gap {
        hi += 0.5;
    }
    let mut y = ((16.0 / gap.sin()).ln() / PI).clamp(lo, hi);
    for _ in 0..200 {
        let (g, dg) = gap_of_y(y)?;
        let h = g.ln() - target;
        if h > 0.0 {
            lo = y;
        } else {
            hi = y;
        }
        let mut next = y - h / (dg / g);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - y).abs();
        y = next;
        if (g - gap).abs() <= tol && step <= 4.0 * f64::EPSILON * y {
            break;
        }
        if hi - lo <= 2.0 * f64::EPSILON * hi {
            break;
        }
    }
    let (g, _) = gap_of_y(y)?;
    if (g - gap).abs() > tol.max(8.0 * f64::EPSILON * gap.max(1e-3)) {
        return Err(Error::ResidualFailure { path: "lambda inversion", value: (g - gap).abs(), tolerance: tol });
    }
    Ok(y)
}

/// The `y ≥ √3/2` with `φ(y) = phi`.
pub fn invert_lambda_on_line(phi: f64, tol: f64) -> Result<f64> {
    if !(2.0 * PI / 3.0 - 1e-15..PI).contains(&phi) {
        return Err(Error::InvalidArgument(format!("φ = {phi} outside [2π/3, π)")));
    }
    invert_gap_on_line((PI - phi).min(PI / 3.0), tol)
}

/// A zero `τ = 1/2 + iy` of `Θ_{Γ_{8k}}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub k: u32,
    /// 1 is the highest zero.
    pub m: u32,
    pub y: f64,
    pub phi: f64,
    /// `|1 + λ^{2k} + (1 − λ)^{2k}|` at `τ`.
    pub residual_poly: f64,
    /// `|Θ(τ)| / |θ₃(τ)|^{8k}` from the exact q-expansion.
    pub residual_qseries: f64,
}

/// Thresholds used by [`theta_zeros_with`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroOptions {
    /// Root tolerance for bisection and for `|φ(y) − φ|`.
    pub tol: f64,
    pub poly_tol: f64,
    pub qseries_tol: f64,
    /// Skip the q-series residual (it needs exact expansions of order ~k).
    pub qseries: bool,
}

impl Default for ZeroOptions {
    fn default() -> Self {
        ZeroOptions { tol: 1e-12, poly_tol: POLY_RESIDUAL_TOL, qseries_tol: QSERIES_RESIDUAL_TOL, qseries: true }
    }
}

/// Heights `y_m`, `m = 1..ℓ`, highest first, without residual checks.
pub fn zero_heights(k: u32, tol: f64) -> Result<Vec<f64>> {
    let mut roots = arc_roots(k, tol)?;
    roots.reverse();
    roots.par_iter().map(|r| invert_gap_on_line(r.gap, tol)).collect()
}

/// The single height `y_m` (`m = 1` highest).
pub fn zero_height(k: u32, m: u32, tol: f64) -> Result<f64> {
    check_k(k)?;
    let l = ell(k);
    if m == 0 || m > l {
        return Err(Error::InvalidArgument(format!("m = {m} outside 1..={l}")));
    }
    let j = l - m + 1;
    let gap = bisect_gap(k, PI * (l - j) as f64 / k as f64, PI * (l - j + 1) as f64 / k as f64)?;
    invert_gap_on_line(gap, tol)
}

/// `ℓ` zeros of `Θ_{Γ_{8k}}` with default thresholds.
pub fn theta_zeros(k: u32, tol: f64) -> Result<Vec<ZeroRecord>> {
    theta_zeros_with(k, ZeroOptions { tol, ..ZeroOptions::default() })
}

pub fn theta_zeros_with(k: u32, opts: ZeroOptions) -> Result<Vec<ZeroRecord>> {
    let mut roots = arc_roots(k, opts.tol)?;
    roots.reverse();
    let heights: Vec<f64> = roots.par_iter().map(|r| invert_gap_on_line(r.gap, opts.tol)).collect::<Result<_>>()?;
    let poly_limit = opts.poly_tol.max(opts.tol);
    let q_limit = opts.qseries_tol.max(opts.tol);

    // one expansion long enough for the lowest zero serves them all
    let series = match (opts.qseries, heights.last()) {
        (true, Some(&y_min)) => {
            let (n, _) = qseries_required_order(k, y_min, zero_ln_eps(k, y_min, q_limit)?)?;
            Some(gamma_series(k, n)?)
        }
        _ => None,
    };

    roots
        .par_iter()
        .zip(heights.par_iter())
        .enumerate()
        .map(|(i, (root, &y))| {
            let p = ComplexPoint::on_line(y)?;
            let lam = lambda_eval(p, EVAL_EPS)?.value;
            let residual_poly = poly_relative_residual(k, lam);
            if residual_poly > poly_limit {
                return Err(Error::ResidualFailure { path: "poly", value: residual_poly, tolerance: poly_limit });
            }
            let residual_qseries = match &series {
                Some(s) => {
                    let ln_t3 = 8.0 * k as f64 * theta_triple(p, EVAL_EPS)?.t3.norm().ln();
                    let (sum, ln_tail) = qseries_sum(s, k, p, zero_ln_eps(k, y, q_limit)?)?;
                    (ln_add(sum.ln_abs(), ln_tail) - ln_t3).exp()
                }
                None => f64::NAN,
            };
            if residual_qseries > q_limit {
                return Err(Error::ResidualFailure { path: "qseries", value: residual_qseries, tolerance: q_limit });
            }
            Ok(ZeroRecord { k, m: i as u32 + 1, y, phi: root.phi, residual_poly, residual_qseries })
        })
        .collect()
}

/// Absolute q-series tolerance: a small fraction of the residual threshold,
/// in units of `|θ₃(τ)|^{8k}`.
fn zero_ln_eps(k: u32, y: f64, q_limit: f64) -> Result<f64> {
    let t3 = theta_triple(ComplexPoint::on_line(y)?, EVAL_EPS)?.t3.norm();
    Ok((q_limit * 1e-3).ln() + 8.0 * k as f64 * t3.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::phi_of_y;
    use proptest::prelude::*;

    #[test]
    fn f_aux_examples() {
        for k in [1u32, 2, 7, 10] {
            let s = if k % 2 == 0 { 2.0 } else { -2.0 };
            assert!((f_aux(k, PI).unwrap() - s).abs() < 1e-12);
            let v = f_aux(k, 2.0 * PI / 3.0).unwrap();
            assert!((v - (2.0 * (2.0 * PI * k as f64 / 3.0).cos() + 1.0)).abs() < 1e-12);
        }
        // the double nearest 0.95π is off by ~1e-16, which 2cos(10φ) turns
        // into a true value of −2.24e-15 there
        assert!((f_aux(10, 0.95 * PI).unwrap() + 2.2449e-15).abs() <= 1e-15);
        assert!(f_aux(10, 1.0).is_err());
        assert!(f_aux(10, 3.2).is_err());
    }

    #[test]
    fn f_gap_matches_f_aux() {
        for k in [3u32, 10, 41] {
            for i in 0..30 {
                let phi = 2.0 * PI / 3.0 + (PI / 3.0) * i as f64 / 29.0;
                assert!((f_gap(k, PI - phi) - f_aux(k, phi).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let b = arc_brackets(10);
        let want = [(0.7, 0.8), (0.8, 0.9), (0.9, 1.0)];
        assert_eq!(b.len(), 3);
        for ((lo, hi), (a, c)) in b.iter().zip(want) {
            assert!((lo - a * PI).abs() < 1e-15 && (hi - c * PI).abs() < 1e-15);
        }
        let b = arc_brackets(3);
        assert_eq!(b.len(), 1);
        assert!((b[0].0 - 2.0 * PI / 3.0).abs() < 1e-15 && (b[0].1 - PI).abs() < 1e-15);
        assert!(arc_brackets(1).is_empty() && arc_brackets(2).is_empty());
    }

    #[test]
    fn bracket_endpoints_alternate() {
        for k in 3..200u32 {
            for (lo, hi) in arc_brackets(k) {
                let (a, b) = (f_aux(k, lo).unwrap(), f_aux(k, hi).unwrap());
                assert!(a.abs() >= 1.0 - 1e-12 && b.abs() >= 1.0 - 1e-12);
                assert!(a * b < 0.0, "k = {k}");
            }
        }
    }

    #[test]
    fn arc_roots_k10_match_published_points() {
        let r = arc_roots(10, 1e-14).unwrap();
        let want = [(0.293062, 0.707276), (0.108993, 0.45399), (0.0123117, 0.156434)];
        for (root, (x, y)) in r.iter().zip(want) {
            let z = root.shifted_arc_point();
            assert!((z.re - x).abs() < 1e-6 && (z.im - y).abs() < 1e-6, "{z}");
            assert!(root.bracket_lo < root.phi && root.phi < root.bracket_hi);
            assert!(root.f_residual <= F_RESIDUAL_TOL);
        }
    }

    #[test]
    fn arc_roots_contain_published_points() {
        let has = |k: u32, x: f64, y: f64, tol: f64| {
            arc_roots(k, 1e-14).unwrap().iter().any(|r| {
                let z = r.shifted_arc_point();
                (z.re - x).abs() < tol && (z.im - y).abs() < tol
            })
        };
        assert!(has(25, 0.31545274857681005, 0.7289684907929533, 1e-12));
        assert!(has(50, 0.437906, 0.827073, 1e-6));
    }

    #[test]
    fn rho_multiplicity_examples() {
        assert_eq!(rho_multiplicity(1), 1);
        assert_eq!(rho_multiplicity(2), 2);
        assert_eq!(rho_multiplicity(3), 0);
        for k in 1..100 {
            assert!(matches!(k_prime(k), 0 | 4 | 8));
        }
    }

    #[test]
    fn inventory_k1_is_rho_pair() {
        let inv = classify_roots(1, 1e-14).unwrap();
        assert!(inv.line_upper.is_empty() && inv.unit_arc.is_empty() && inv.shifted_arc.is_empty());
        assert_eq!(inv.rho_multiplicity, 1);
        assert_eq!(inv.all_roots().len(), 2);
    }

    #[test]
    fn inventory_json_round_trip() {
        let inv = classify_roots(11, 1e-14).unwrap();
        let text = serde_json::to_string(&inv).unwrap();
        assert!(text.contains("\"re\":0.5"));
        let back: RootInventory = serde_json::from_str(&text).unwrap();
        assert_eq!(back, inv);
        let z = theta_zeros(9, 1e-12).unwrap();
        let back: Vec<ZeroRecord> = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn inventory_k10_line_heights() {
        let inv = classify_roots(10, 1e-14).unwrap();
        let ys: Vec<f64> = inv.line_upper.iter().map(|z| z.im).collect();
        assert_eq!(ys.len(), 3);
        assert!((ys[0] - 1.2067).abs() < 1e-4 && (ys[1] - 2.08265).abs() < 1e-4);
        assert!((ys[2] - 6.35).abs() < 0.01, "{}", ys[2]);
    }

    #[test]
    fn inventory_geometry_and_symmetry() {
        for k in [4u32, 17, 60, 301] {
            let inv = classify_roots(k, 1e-14).unwrap();
            assert_eq!(inv.total_count(), 2 * k as usize);
            let l = ell(k) as usize;
            assert_eq!(inv.line_upper.len(), l);
            for (u, d) in inv.line_upper.iter().zip(&inv.line_lower) {
                assert_eq!(*d, u.conj());
                assert!(u.re == 0.5 && u.im > SQRT3_OVER_2);
            }
            for z in &inv.unit_arc {
                assert!((z.norm() - 1.0).abs() < 1e-14 && z.arg().abs() <= PI / 3.0 + 1e-14);
            }
            for z in &inv.shifted_arc {
                assert!(((z - 1.0).norm() - 1.0).abs() < 1e-14);
            }
            assert_eq!(&inv.unit_arc[l..], &inv.unit_arc[..l].iter().map(|z| z.conj()).collect::<Vec<_>>()[..]);
        }
    }

    #[test]
    fn inversion_examples() {
        assert!((invert_lambda_on_line(2.0 * PI / 3.0, 1e-13).unwrap() - SQRT3_OVER_2).abs() < 1e-12);
        let phi = 0.95 * PI;
        let y = invert_lambda_on_line(phi, 1e-13).unwrap();
        let seed = (16.0 / phi.sin()).ln() / PI;
        assert!((seed - 1.473045).abs() < 1e-6);
        assert!((y - 1.4716938442152087).abs() < 1e-12);
        assert!((y - seed).abs() <= 15.0 * (-2.0 * PI * y).exp());
        assert!((phi_of_y(y).unwrap() - phi).abs() < 1e-13);
        // divergence near π
        let g = 1e-6;
        let y = invert_gap_on_line(g, 1e-20).unwrap();
        assert!((y - (16.0 / g).ln() / PI).abs() < 1e-9);
    }

    #[test]
    fn zeros_k60_match_published_heights() {
        let z = theta_zeros(60, 1e-12).unwrap();
        assert_eq!(z.len(), 20);
        for (r, want) in z.iter().zip(crate::reference::REFERENCE_HEIGHTS_K60) {
            assert!((r.y - want).abs() < 1e-4, "m = {}: {} vs {want}", r.m, r.y);
        }
        for w in z.windows(2) {
            assert!(w[0].y > w[1].y);
        }
    }

    #[test]
    fn zeros_small_k() {
        assert!(theta_zeros(1, 1e-12).unwrap().is_empty());
        assert!(theta_zeros(2, 1e-12).unwrap().is_empty());
        let z = theta_zeros(3, 1e-12).unwrap();
        assert_eq!(z.len(), 1);
        let phi = phi_of_y(z[0].y).unwrap();
        assert!(phi > 2.0 * PI / 3.0 && phi < PI);
        assert!(z[0].residual_qseries <= QSERIES_RESIDUAL_TOL);
    }

    #[test]
    fn zero_height_matches_full_list() {
        let all = zero_heights(40, 1e-13).unwrap();
        for m in [1u32, 5, 13] {
            assert_eq!(zero_height(40, m, 1e-13).unwrap(), all[m as usize - 1]);
        }
        assert!(zero_height(40, 0, 1e-13).is_err());
        assert!(zero_height(40, 14, 1e-13).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mobius_stability(k in 3u32..400) {
            // p((z−1)/z) z^{2k} = p(z) for z on the shifted arc
            for r in arc_roots(k, 1e-14).unwrap() {
                let z = r.shifted_arc_point();
                let w = (z - 1.0) / z;
                let lhs = poly_relative_residual(k, w);
                prop_assert!(lhs <= poly_tolerance(k, 0.0));
                prop_assert!((w - r.line_point()).norm() <= 1e-12 * r.line_point().norm());
            }
        }

        #[test]
        fn inversion_round_trip(phi in (2.0 * PI / 3.0 + 1e-6)..(PI - 1e-6)) {
            let y = invert_lambda_on_line(phi, 1e-13).unwrap();
            prop_assert!((phi_of_y(y).unwrap() - phi).abs() <= 1e-13);
        }
    }
}
