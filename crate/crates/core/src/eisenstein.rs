//! Bernoulli numbers, divisor sums and normalized Eisenstein series over the
//! rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{ExactSeries, NomeUnit};

/// Reduced fraction with positive denominator; `0` is `0/1`.
pub type ExactRational = BigRational;

/// `B_0, …, B_n` with the convention `B_1 = −1/2`, from
/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_table(n: usize) -> Vec<ExactRational> {
    let mut b: Vec<ExactRational> = Vec::with_capacity(n + 1);
    b.push(ExactRational::one());
    for m in 1..=n {
        // binom(m+1, j) built incrementally
        let mut binom = BigInt::one();
        let mut acc = ExactRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += ExactRational::from_integer(binom.clone()) * bj;
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b.push(-acc / ExactRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// The Bernoulli number `B_k`.
pub fn bernoulli(k: usize) -> ExactRational {
    bernoulli_table(k).pop().expect("table has k+1 entries")
}

/// `σ_p(n) = Σ_{d | n} d^p`.
pub fn divisor_sigma(p: u32, n: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(p);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(p);
            }
        }
        d += 1;
    }
    total
}

/// A `q`-series with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    pub coeffs: Vec<ExactRational>,
}

impl RationalSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The integer series when every coefficient is integral.
    pub fn to_integer_series(&self) -> Option<ExactSeries> {
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        ExactSeries::new(NomeUnit::Whole, ints).ok()
    }

    /// Coefficients as `"n"` or `"n/d"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// `E_k = 1 − (2k/B_k) Σ_{n≥1} σ_{k−1}(n) qⁿ` through `q^{q_order}`.
pub fn eisenstein_series(weight: u32, q_order: usize) -> Result<RationalSeries> {
    if weight < 4 || weight % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "Eisenstein weight must be even and at least 4, got {weight}"
        )));
    }
    let bk = bernoulli(weight as usize);
    let gamma = ExactRational::from_integer(BigInt::from(2 * weight)) / bk;
    let mut coeffs = Vec::with_capacity(q_order + 1);
    coeffs.push(ExactRational::one());
    for n in 1..=q_order as u64 {
        let sigma = ExactRational::from_integer(divisor_sigma(weight - 1, n));
        coeffs.push(-(&gamma * sigma));
    }
    Ok(RationalSeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> ExactRational {
        ExactRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Independent route: `B_n` from the Akiyama–Tanigawa algorithm.
    fn akiyama_tanigawa(n: usize) -> ExactRational {
        let mut a: Vec<ExactRational> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(rat(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = ExactRational::from_integer(BigInt::from(j as i64)) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn small_bernoulli_numbers() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(8), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn bernoulli_agrees_with_akiyama_tanigawa() {
        // Akiyama–Tanigawa yields B_1 = +1/2; compare from n = 2.
        let table = bernoulli_table(30);
        for (n, b) in table.iter().enumerate().skip(2) {
            assert_eq!(*b, akiyama_tanigawa(n), "B_{n}");
        }
    }

    #[test]
    fn sigma_values() {
        assert_eq!(divisor_sigma(3, 1), BigInt::from(1));
        assert_eq!(divisor_sigma(3, 2), BigInt::from(9));
        assert_eq!(divisor_sigma(3, 3), BigInt::from(28));
        assert_eq!(divisor_sigma(0, 36), BigInt::from(9));
        assert_eq!(divisor_sigma(1, 28), BigInt::from(56));
    }

    #[test]
    fn eisenstein_leading_terms() {
        let e4 = eisenstein_series(4, 3).unwrap();
        assert_eq!(e4.to_strings(), vec!["1", "240", "2160", "6720"]);
        let e8 = eisenstein_series(8, 1).unwrap();
        assert_eq!(e8.to_strings(), vec!["1", "480"]);
        for w in [4, 6, 8, 10, 12, 16] {
            assert_eq!(eisenstein_series(w, 0).unwrap().coeffs[0], rat(1, 1));
        }
        // E_12 carries the non-integral 65520/691.
        let e12 = eisenstein_series(12, 1).unwrap();
        assert_eq!(e12.coeffs[1], rat(65520, 691));
        assert!(e12.to_integer_series().is_none());
    }

    #[test]
    fn invalid_weights() {
        for w in [0, 2, 3, 5, 9] {
            assert!(eisenstein_series(w, 2).is_err());
        }
    }
}
