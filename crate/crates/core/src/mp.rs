//! Thin multiprecision real/complex types on top of `astro-float`.
//!
//! Only what the evaluators need: field operations, `exp`, `sin`, `cos`,
//! `ln`, conversion from big integers and lossy conversion back to `f64`.
//! Every value carries its working precision in bits; binary operations run
//! at the larger of the two.

use std::cell::RefCell;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::BigInt;
use num_complex::Complex64;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Round a requested bit count up to whole 64-bit words.
pub fn word_precision(bits: usize) -> usize {
    bits.div_ceil(64).max(1) * 64
}

#[derive(Clone, Debug)]
pub struct MpReal {
    v: BigFloat,
    prec: usize,
}

impl MpReal {
    pub fn from_f64(x: f64, prec: usize) -> Self {
        let prec = word_precision(prec);
        MpReal { v: BigFloat::from_f64(x, prec), prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_f64(0.0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_f64(1.0, prec)
    }

    pub fn pi(prec: usize) -> Self {
        let prec = word_precision(prec);
        MpReal { v: with_consts(|cc| cc.pi(prec, RM)), prec }
    }

    /// Exact conversion when the integer fits in `prec` bits, rounded otherwise.
    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        let prec = word_precision(prec);
        let (sign, digits) = n.to_u64_digits();
        if digits.is_empty() {
            return Self::zero(prec);
        }
        let words: Vec<Word> = digits.iter().map(|&d| d as Word).collect();
        let s = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
        let bits = (64 * words.len()) as i32;
        let raw = BigFloat::from_words(&words, s, bits);
        // round to working precision
        let v = raw.add(&BigFloat::from_f64(0.0, prec), prec, RM);
        MpReal { v, prec }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        let prec = word_precision(prec);
        MpReal { v: self.v.add(&BigFloat::from_f64(0.0, prec), prec, RM), prec }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn abs(&self) -> Self {
        MpReal { v: self.v.abs(), prec: self.prec }
    }

    pub fn exp(&self) -> Self {
        let v = with_consts(|cc| self.v.exp(self.prec, RM, cc));
        MpReal { v, prec: self.prec }
    }

    pub fn ln(&self) -> Self {
        let v = with_consts(|cc| self.v.ln(self.prec, RM, cc));
        MpReal { v, prec: self.prec }
    }

    pub fn sin(&self) -> Self {
        let v = with_consts(|cc| self.v.sin(self.prec, RM, cc));
        MpReal { v, prec: self.prec }
    }

    pub fn cos(&self) -> Self {
        let v = with_consts(|cc| self.v.cos(self.prec, RM, cc));
        MpReal { v, prec: self.prec }
    }

    pub fn sqrt(&self) -> Self {
        MpReal { v: self.v.sqrt(self.prec, RM), prec: self.prec }
    }

    fn parts(&self) -> Option<(f64, i64, bool)> {
        let (m, _n, s, e, _) = self.v.as_raw_parts()?;
        let top = *m.last()? as u64;
        if top == 0 {
            return None;
        }
        let next = if m.len() > 1 { m[m.len() - 2] as u64 } else { 0 };
        // value = 0.m × 2^e, top word holds the leading 64 bits
        let frac = top as f64 / 2f64.powi(64) + next as f64 / 2f64.powi(128);
        Some((frac, e as i64, s == Sign::Neg))
    }

    /// Nearest `f64` (±∞ on overflow, 0 on underflow).
    pub fn to_f64(&self) -> f64 {
        match self.parts() {
            None => 0.0,
            Some((frac, e, neg)) => {
                let mag = ldexp(frac, e);
                if neg {
                    -mag
                } else {
                    mag
                }
            }
        }
    }

    /// `ln |x|` as an `f64`; `−∞` for zero. Works far outside the `f64` range.
    pub fn ln_abs(&self) -> f64 {
        match self.parts() {
            None => f64::NEG_INFINITY,
            Some((frac, e, _)) => frac.ln() + e as f64 * std::f64::consts::LN_2,
        }
    }

    pub fn powu(&self, n: u64) -> Self {
        let mut result = MpReal::one(self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

fn ldexp(x: f64, e: i64) -> f64 {
    let mut x = x;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl<'a> $tr<&'a MpReal> for &'a MpReal {
            type Output = MpReal;
            fn $method(self, rhs: &'a MpReal) -> MpReal {
                let prec = self.prec.max(rhs.prec);
                MpReal { v: self.v.$call(&rhs.v, prec, RM), prec }
            }
        }
        impl $tr for MpReal {
            type Output = MpReal;
            fn $method(self, rhs: MpReal) -> MpReal {
                (&self).$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for MpReal {
    type Output = MpReal;
    fn neg(self) -> MpReal {
        MpReal { v: self.v.neg(), prec: self.prec }
    }
}

impl Neg for &MpReal {
    type Output = MpReal;
    fn neg(self) -> MpReal {
        MpReal { v: self.v.clone().neg(), prec: self.prec }
    }
}

/// Complex number with multiprecision parts.
#[derive(Clone, Debug)]
pub struct MpComplex {
    pub re: MpReal,
    pub im: MpReal,
}

impl MpComplex {
    pub fn new(re: MpReal, im: MpReal) -> Self {
        MpComplex { re, im }
    }

    pub fn from_c64(z: Complex64, prec: usize) -> Self {
        MpComplex {
            re: MpReal::from_f64(z.re, prec),
            im: MpReal::from_f64(z.im, prec),
        }
    }

    pub fn real(x: MpReal) -> Self {
        let prec = x.prec();
        MpComplex { re: x, im: MpReal::zero(prec) }
    }

    pub fn prec(&self) -> usize {
        self.re.prec.max(self.im.prec)
    }

    pub fn conj(&self) -> Self {
        MpComplex { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> MpReal {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// `ln |z|` as `f64`, valid far outside the `f64` range.
    pub fn ln_abs(&self) -> f64 {
        let a = self.re.ln_abs();
        let b = self.im.ln_abs();
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + (2.0 * (lo - hi)).exp()).ln()
    }

    /// `e^{πi z}`.
    pub fn exp_pi_i(&self) -> Self {
        let prec = self.prec();
        let pi = MpReal::pi(prec);
        let modulus = (-(&pi * &self.im)).exp();
        let angle = &pi * &self.re;
        MpComplex {
            re: &modulus * &angle.cos(),
            im: &modulus * &angle.sin(),
        }
    }

    pub fn powu(&self, n: u64) -> Self {
        let prec = self.prec();
        let mut result = MpComplex::real(MpReal::one(prec));
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl<'a> Add<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: &'a MpComplex) -> MpComplex {
        MpComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: &'a MpComplex) -> MpComplex {
        MpComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: &'a MpComplex) -> MpComplex {
        MpComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl<'a> Div<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn div(self, rhs: &'a MpComplex) -> MpComplex {
        let d = rhs.norm_sqr();
        let num = self * &rhs.conj();
        MpComplex { re: &num.re / &d, im: &num.im / &d }
    }
}

impl Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex { re: -&self.re, im: -&self.im }
    }
}

macro_rules! owned_complex_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for MpComplex {
            type Output = MpComplex;
            fn $method(self, rhs: MpComplex) -> MpComplex {
                (&self).$method(&rhs)
            }
        }
    )*};
}

owned_complex_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Num;

    #[test]
    fn bigint_round_trip_through_f64() {
        for s in ["0", "1", "-7", "240", "123456789012345678901234567890", "-98765432109876543210"] {
            let n = BigInt::from_str_radix(s, 10).unwrap();
            let x = MpReal::from_bigint(&n, 256).to_f64();
            let expect: f64 = s.parse().unwrap();
            assert!((x - expect).abs() <= expect.abs() * 1e-15, "{s}: {x}");
        }
    }

    #[test]
    fn huge_integers_keep_their_logarithm() {
        let n = num_traits::pow(BigInt::from(3), 2000);
        let x = MpReal::from_bigint(&n, 128);
        assert!(x.to_f64().is_infinite());
        let expect = 2000.0 * 3f64.ln();
        assert!((x.ln_abs() - expect).abs() < 1e-9);
    }

    #[test]
    fn elementary_functions() {
        let p = 192;
        let half = MpReal::from_f64(0.5, p);
        assert!((half.exp().to_f64() - 0.5f64.exp()).abs() < 1e-16);
        assert!((half.sin().to_f64() - 0.5f64.sin()).abs() < 1e-16);
        assert!((MpReal::pi(p).to_f64() - std::f64::consts::PI).abs() < 1e-16);
        let z = MpComplex::from_c64(Complex64::new(0.3, 1.1), p);
        let e = z.exp_pi_i().to_c64();
        let expect = (Complex64::i() * std::f64::consts::PI * Complex64::new(0.3, 1.1)).exp();
        assert!((e - expect).norm() < 1e-15);
    }

    #[test]
    fn extra_precision_is_real() {
        // (1 + 2^-100) − 1 survives at 192 bits, vanishes in f64.
        let p = 192;
        let tiny = MpReal::from_f64(2f64.powi(-100), p);
        let one = MpReal::one(p);
        let diff = &(&one + &tiny) - &one;
        assert_eq!(diff.to_f64(), 2f64.powi(-100));
    }

    #[test]
    fn complex_division() {
        let p = 128;
        let a = MpComplex::from_c64(Complex64::new(1.0, 2.0), p);
        let b = MpComplex::from_c64(Complex64::new(-0.5, 3.0), p);
        let q = (&a / &b).to_c64();
        let expect = Complex64::new(1.0, 2.0) / Complex64::new(-0.5, 3.0);
        assert!((q - expect).norm() < 1e-15);
        let powed = a.powu(7).to_c64();
        assert!((powed - Complex64::new(1.0, 2.0).powu(7)).norm() < 1e-9);
    }
}
