use num_complex::Complex64;

use crate::mp::{MpComplex, MpReal};

/// Complex arithmetic shared by the binary64 and multiprecision evaluators.
pub trait CField: Clone + Send + Sync {
    /// Embed an `f64` complex at the precision of `like`.
    fn lift(z: Complex64, like: &Self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `e^{πi·self}`
    fn exp_pi_i(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// `ln |self|`, finite even when `|self|` is outside the `f64` range.
    fn ln_abs(&self) -> f64;

    fn scale(&self, x: f64) -> Self {
        self.mul(&Self::lift(Complex64::new(x, 0.0), self))
    }

    fn powu(&self, n: u64) -> Self {
        let mut result = Self::lift(Complex64::new(1.0, 0.0), self);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

impl CField for Complex64 {
    fn lift(z: Complex64, _like: &Self) -> Self {
        z
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exp_pi_i(&self) -> Self {
        let m = (-std::f64::consts::PI * self.im).exp();
        let (s, c) = (std::f64::consts::PI * self.re).sin_cos();
        Complex64::new(m * c, m * s)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn ln_abs(&self) -> f64 {
        self.norm().ln()
    }
    fn powu(&self, n: u64) -> Self {
        match u32::try_from(n) {
            Ok(n) => Complex64::powu(self, n),
            Err(_) => {
                let (r, t) = self.to_polar();
                Complex64::from_polar(r.powf(n as f64), t * n as f64)
            }
        }
    }
}

impl CField for MpComplex {
    fn lift(z: Complex64, like: &Self) -> Self {
        MpComplex::from_c64(z, like.prec())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exp_pi_i(&self) -> Self {
        MpComplex::exp_pi_i(self)
    }
    fn to_c64(&self) -> Complex64 {
        MpComplex::to_c64(self)
    }
    fn ln_abs(&self) -> f64 {
        MpComplex::ln_abs(self)
    }
    fn scale(&self, x: f64) -> Self {
        let f = MpReal::from_f64(x, self.prec());
        MpComplex::new(&self.re * &f, &self.im * &f)
    }
    fn powu(&self, n: u64) -> Self {
        MpComplex::powu(self, n)
    }
}
