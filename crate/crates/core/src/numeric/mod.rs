//! Truncation-certified evaluation in the upper half-plane.
//!
//! Every evaluator returns an [`EvalResult`]: the computed value and a bound
//! on the error caused by truncating the defining series. Rounding error is
//! not part of the bound; it is controlled by the working [`Precision`].

mod field;
mod gamma;
mod identities;
mod lambda;
mod line;
mod theta;

pub use field::CField;
pub(crate) use gamma::{ln_add, qseries_sum};
pub use gamma::{
    gamma_mass_ln, qseries_required_order, theta_gamma_eval, theta_gamma_eval_with,
    theta_gamma_qseries, GammaMethod,
};
pub use identities::{
    lambda_transformation_residuals, modularity_residual, theta_transformation_residuals,
    ModularityResidual,
};
pub use lambda::{lambda_eval, lambda_majorant_ln, lambda_prime_eval, lambda_sin_series};
pub use line::{phi_of_y, phi_prime_of_y};
pub use theta::{theta_eval, theta_triple, theta_triple_in, ThetaTriple};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Evaluations below this imaginary part are refused.
pub const IM_FLOOR: f64 = 0.05;

/// Bits used by [`Precision::Extended`] (about 38 significant digits).
pub const EXTENDED_BITS: usize = 128;

/// A point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(im > 0.0) || !re.is_finite() || !im.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "({re}, {im}) is not in the upper half-plane"
            )));
        }
        Ok(ComplexPoint { re, im })
    }

    /// `i`
    pub fn i() -> Self {
        ComplexPoint { re: 0.0, im: 1.0 }
    }

    /// `ρ = e^{iπ/3}`
    pub fn rho() -> Self {
        ComplexPoint { re: 0.5, im: crate::SQRT3_OVER_2 }
    }

    /// `1/2 + iy`
    pub fn on_line(y: f64) -> Result<Self> {
        Self::new(0.5, y)
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_c64(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub(crate) fn check_floor(self) -> Result<()> {
        if self.im < IM_FLOOR {
            return Err(Error::BelowImaginaryFloor { im: self.im, floor: IM_FLOOR });
        }
        Ok(())
    }
}

/// A value together with a bound on its series-truncation error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Working precision for evaluations where cancellation matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Precision {
    /// IEEE binary64.
    #[default]
    Double,
    /// [`EXTENDED_BITS`]-bit binary floating point.
    Extended,
    /// Explicit mantissa size in bits.
    Bits(usize),
}

impl Precision {
    /// Mantissa bits, `None` for binary64.
    pub fn bits(self) -> Option<usize> {
        match self {
            Precision::Double => None,
            Precision::Extended => Some(EXTENDED_BITS),
            Precision::Bits(b) => Some(b.max(64)),
        }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {eps}")));
    }
    Ok(())
}
