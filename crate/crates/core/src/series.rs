//! Truncated power series with arbitrary-precision integer coefficients.
//!
//! All theta constants live on the eighth-root nome `w = q^{1/8}`
//! (`q = e^{2πiτ}`), so products of `θ₂`, `θ₃`, `θ₄` only ever have integer
//! exponents. Results are re-gridded to `u = q^{1/2}` (for `λ`) or to `q`
//! (for `Θ_{Γ_{8k}}`) once every surviving exponent is a multiple of the
//! coarser step.
//!
//! A series of order `N` stores the coefficients of exponents `0..=N`; every
//! binary operation returns a series valid through the smaller operand
//! order and never pads.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of `q` represented by one index step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NomeUnit {
    /// `w = q^{1/8}`
    #[serde(rename = "1/8")]
    Eighth,
    /// `u = q^{1/2}`
    #[serde(rename = "1/2")]
    Half,
    /// `q`
    #[serde(rename = "1")]
    Whole,
}

impl NomeUnit {
    /// Number of `w`-steps in one index step.
    pub fn eighths(self) -> usize {
        match self {
            NomeUnit::Eighth => 1,
            NomeUnit::Half => 4,
            NomeUnit::Whole => 8,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            NomeUnit::Eighth => "1/8",
            NomeUnit::Half => "1/2",
            NomeUnit::Whole => "1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "1/8" => Some(NomeUnit::Eighth),
            "1/2" => Some(NomeUnit::Half),
            "1" => Some(NomeUnit::Whole),
            _ => None,
        }
    }
}

impl fmt::Display for NomeUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which Jacobi theta constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThetaIndex {
    Two,
    Three,
    Four,
}

impl TryFrom<u8> for ThetaIndex {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            2 => Ok(ThetaIndex::Two),
            3 => Ok(ThetaIndex::Three),
            4 => Ok(ThetaIndex::Four),
            _ => Err(Error::InvalidArgument(format!(
                "theta index must be 2, 3 or 4, got {v}"
            ))),
        }
    }
}

/// A power series `Σ_{n=0}^{N} c_n x^n` where `x = q^{unit}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSeries {
    unit: NomeUnit,
    coeffs: Vec<BigInt>,
}

impl ExactSeries {
    pub fn new(unit: NomeUnit, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(ExactSeries { unit, coeffs })
    }

    pub fn from_i64s(unit: NomeUnit, coeffs: &[i64]) -> Result<Self> {
        Self::new(unit, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(unit: NomeUnit, order: usize) -> Self {
        ExactSeries {
            unit,
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(unit: NomeUnit, order: usize) -> Self {
        let mut s = Self::zero(unit, order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn unit(&self) -> NomeUnit {
        self.unit
    }

    /// Highest retained exponent index (inclusive).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient at index `n`; panics past the truncation order.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Indices and values of the nonzero coefficients.
    pub fn support(&self) -> Vec<(usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// The same series cut down to `order` (a no-op when already shorter).
    pub fn truncated(&self, order: usize) -> Self {
        let n = order.min(self.order());
        ExactSeries {
            unit: self.unit,
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    fn check_unit(&self, other: &Self) -> Result<()> {
        if self.unit != other.unit {
            return Err(Error::UnitMismatch {
                left: self.unit.label(),
                right: other.unit.label(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_unit(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Ok(ExactSeries { unit: self.unit, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_unit(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Ok(ExactSeries { unit: self.unit, coeffs })
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        ExactSeries {
            unit: self.unit,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Truncated Cauchy product.
    ///
    /// Only the nonzero coefficients of the sparser operand are visited, which
    /// keeps products against lacunary theta series cheap. Output indices are
    /// computed independently and in parallel for long series.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_unit(other)?;
        let n = self.order().min(other.order());
        let (sparse, dense) = if self.support().len() <= other.support().len() {
            (self, other)
        } else {
            (other, self)
        };
        let nz: Vec<(usize, &BigInt)> =
            sparse.support().into_iter().filter(|(i, _)| *i <= n).collect();
        let term = |m: usize| -> BigInt {
            let mut acc = BigInt::zero();
            for &(i, a) in &nz {
                if i > m {
                    break;
                }
                let b = &dense.coeffs[m - i];
                if !b.is_zero() {
                    acc += a * b;
                }
            }
            acc
        };
        let coeffs: Vec<BigInt> = if n >= 256 {
            (0..=n).into_par_iter().map(term).collect()
        } else {
            (0..=n).map(term).collect()
        };
        Ok(ExactSeries { unit: self.unit, coeffs })
    }

    /// `self^e` by binary exponentiation, truncating after every product.
    /// `e = 0` gives the constant series `1`.
    pub fn pow(&self, e: u64) -> Self {
        let mut result = ExactSeries::one(self.unit, self.order());
        if e == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut e = e;
        loop {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same unit");
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base).expect("same unit");
        }
        result
    }

    /// `self^e` from the power recurrence `n f₀ g_n = Σ_{j≥1} ((e+1)j − n) f_j g_{n−j}`.
    ///
    /// Equal to [`pow`](Self::pow) coefficient for coefficient, but runs in
    /// `O(N·s)` big-integer operations for a series with `s` nonzero terms
    /// instead of `O(N² log e)`. The leading power of the variable is factored
    /// out first so the recurrence always divides by a nonzero constant.
    pub fn pow_recurrence(&self, e: u64) -> Result<Self> {
        let order = self.order();
        if e == 0 {
            return Ok(ExactSeries::one(self.unit, order));
        }
        let Some(v) = self.valuation() else {
            return Ok(ExactSeries::zero(self.unit, order));
        };
        let mut out = ExactSeries::zero(self.unit, order);
        let shift = match (v as u128).checked_mul(e as u128) {
            Some(s) if s <= order as u128 => s as usize,
            _ => return Ok(out),
        };
        let len = order - shift;
        let f0 = &self.coeffs[v];
        let nz: Vec<(usize, &BigInt)> = self.coeffs[v..]
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let e_plus_1 = BigInt::from(e) + 1u32;
        let mut g: Vec<BigInt> = Vec::with_capacity(len + 1);
        g.push(num_traits::pow::pow(f0.clone(), e as usize));
        for n in 1..=len {
            let mut acc = BigInt::zero();
            for &(j, fj) in &nz {
                if j > n {
                    break;
                }
                let gnj = &g[n - j];
                if gnj.is_zero() {
                    continue;
                }
                let weight = &e_plus_1 * j - n;
                acc += weight * fj * gnj;
            }
            let denom = f0 * n;
            let (q, r) = acc.div_rem(&denom);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "power recurrence produced a non-integral coefficient at index {n}"
                )));
            }
            g.push(q);
        }
        for (i, c) in g.into_iter().enumerate() {
            out.coeffs[shift + i] = c;
        }
        Ok(out)
    }

    /// Multiplicative inverse; requires a unit constant term (`±1`).
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return Err(Error::InvalidArgument(
                "series reciprocal needs constant term ±1".into(),
            ));
        }
        let n = self.order();
        let nz: Vec<(usize, &BigInt)> = self.support().into_iter().filter(|(i, _)| *i > 0).collect();
        let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
        g.push(c0.clone());
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for &(j, fj) in &nz {
                if j > m {
                    break;
                }
                acc += fj * &g[m - j];
            }
            // c0 = ±1, so dividing by it is multiplying by it.
            g.push(-(acc * c0));
        }
        Ok(ExactSeries { unit: self.unit, coeffs: g })
    }

    /// Re-index onto a coarser nome. Fails unless every nonzero exponent is
    /// a multiple of the new step.
    pub fn regrid(&self, target: NomeUnit) -> Result<Self> {
        let (from, to) = (self.unit.eighths(), target.eighths());
        if to < from || to % from != 0 {
            return Err(Error::InvalidArgument(format!(
                "cannot regrid from unit {} to finer unit {}",
                self.unit, target
            )));
        }
        let ratio = to / from;
        if let Some((i, _)) = self.support().into_iter().find(|(i, _)| i % ratio != 0) {
            return Err(Error::Internal(format!(
                "exponent index {i} is not a multiple of {ratio} when regridding to {target}"
            )));
        }
        let coeffs = self.coeffs.iter().step_by(ratio).cloned().collect();
        Ok(ExactSeries { unit: target, coeffs })
    }

    /// Coefficients converted to `f64` (infinite when out of range).
    pub fn to_f64s(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            unit: self.unit.label().to_string(),
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self> {
        let unit = NomeUnit::parse(&json.unit)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown nome unit {:?}", json.unit)))?;
        if json.coeffs.len() != json.order + 1 {
            return Err(Error::InvalidArgument(format!(
                "order {} does not match {} coefficients",
                json.order,
                json.coeffs.len()
            )));
        }
        let coeffs = json
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::InvalidArgument(format!("bad integer coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ExactSeries::new(unit, coeffs)
    }
}

/// Wire format for exported series. Coefficients are decimal strings so no
/// consumer loses integer width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub unit: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

/// `θ₂`, `θ₃` or `θ₄` as a `w`-series truncated at `order`.
///
/// `θ₂ = Σ_{n≥0} 2w^{(2n+1)²}`, `θ₃ = 1 + Σ_{n≥1} 2w^{4n²}`,
/// `θ₄ = 1 + Σ_{n≥1} (−1)ⁿ 2w^{4n²}`.
pub fn theta_base(index: ThetaIndex, order: usize) -> ExactSeries {
    let mut s = ExactSeries::zero(NomeUnit::Eighth, order);
    match index {
        ThetaIndex::Two => {
            for n in 0usize.. {
                let e = (2 * n + 1) * (2 * n + 1);
                if e > order {
                    break;
                }
                s.coeffs[e] = BigInt::from(2);
            }
        }
        ThetaIndex::Three | ThetaIndex::Four => {
            s.coeffs[0] = BigInt::one();
            for n in 1usize.. {
                let e = 4 * n * n;
                if e > order {
                    break;
                }
                let negative = index == ThetaIndex::Four && n % 2 == 1;
                s.coeffs[e] = BigInt::from(if negative { -2 } else { 2 });
            }
        }
    }
    s
}

/// `Θ_{Γ_{8k}} = (θ₂^{8k} + θ₃^{8k} + θ₄^{8k}) / 2` as a `q`-series through `q^{q_order}`.
///
/// The coefficient of `qⁿ` is the number of lattice vectors of squared norm `2n`.
pub fn theta_gamma_series(k: u32, q_order: usize) -> Result<ExactSeries> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let w_order = 8 * q_order;
    let e = 8 * u64::from(k);
    let t2 = theta_base(ThetaIndex::Two, w_order).pow_recurrence(e)?;
    let t3 = theta_base(ThetaIndex::Three, w_order).pow_recurrence(e)?;
    let t4 = theta_base(ThetaIndex::Four, w_order).pow_recurrence(e)?;
    let sum = t2.add(&t3)?.add(&t4)?;
    let two = BigInt::from(2);
    let mut halved = Vec::with_capacity(sum.coeffs.len());
    for (i, c) in sum.coeffs.into_iter().enumerate() {
        let (q, r) = c.div_rem(&two);
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "odd coefficient at w^{i} in θ₂^{e} + θ₃^{e} + θ₄^{e}"
            )));
        }
        halved.push(q);
    }
    ExactSeries::new(NomeUnit::Eighth, halved)?.regrid(NomeUnit::Whole)
}

/// `λ = θ₂⁴/θ₃⁴` as a series in `u = q^{1/2}` through `u^{u_order}`.
pub fn lambda_series(u_order: usize) -> Result<ExactSeries> {
    if u_order == 0 {
        return Err(Error::InvalidArgument("lambda series needs u_order ≥ 1".into()));
    }
    let w_order = 4 * u_order;
    // Both fourth powers live on multiples of w⁴, so work on the u grid.
    let t2_4 = theta_base(ThetaIndex::Two, w_order)
        .pow_recurrence(4)?
        .regrid(NomeUnit::Half)?;
    let t3_4 = theta_base(ThetaIndex::Three, w_order)
        .pow_recurrence(4)?
        .regrid(NomeUnit::Half)?;
    t2_4.mul(&t3_4.reciprocal()?)
}

/// `θ₃⁴ − θ₂⁴ − θ₄⁴` through `w^{w_order}`; identically zero.
pub fn jacobi_identity_defect(w_order: usize) -> Result<ExactSeries> {
    jacobi_defect_of(
        &theta_base(ThetaIndex::Two, w_order),
        &theta_base(ThetaIndex::Three, w_order),
        &theta_base(ThetaIndex::Four, w_order),
    )
}

/// The Jacobi defect for caller-supplied theta series.
pub fn jacobi_defect_of(t2: &ExactSeries, t3: &ExactSeries, t4: &ExactSeries) -> Result<ExactSeries> {
    let p = |s: &ExactSeries| s.pow_recurrence(4);
    p(t3)?.sub(&p(t2)?)?.sub(&p(t4)?)
}
