//! Process-wide read-mostly cache of exact expansions.
//!
//! Readers take a shared lock; growth happens under the write lock and
//! replaces the stored `Arc`, so handles given out earlier stay valid.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::Result;
use crate::series::{lambda_series, theta_gamma_series, ExactSeries};

/// `λ` coefficients `a(0..=order)` in both exact and `f64` form.
#[derive(Debug)]
pub struct LambdaCoefficients {
    pub exact: ExactSeries,
    pub values: Vec<f64>,
}

impl LambdaCoefficients {
    pub fn order(&self) -> usize {
        self.exact.order()
    }
}

fn lambda_slot() -> &'static RwLock<Option<Arc<LambdaCoefficients>>> {
    static SLOT: OnceLock<RwLock<Option<Arc<LambdaCoefficients>>>> = OnceLock::new();
    SLOT.get_or_init(|| RwLock::new(None))
}

/// `λ` coefficients through at least `u^{min_order}`.
pub fn lambda_coefficients(min_order: usize) -> Result<Arc<LambdaCoefficients>> {
    let min_order = min_order.max(1);
    if let Some(c) = lambda_slot().read().expect("lambda cache poisoned").as_ref() {
        if c.order() >= min_order {
            return Ok(Arc::clone(c));
        }
    }
    let mut slot = lambda_slot().write().expect("lambda cache poisoned");
    if let Some(c) = slot.as_ref() {
        if c.order() >= min_order {
            return Ok(Arc::clone(c));
        }
    }
    let current = slot.as_ref().map_or(0, |c| c.order());
    let order = min_order.max(2 * current).max(64);
    let exact = lambda_series(order)?;
    let values = exact.to_f64s();
    let fresh = Arc::new(LambdaCoefficients { exact, values });
    *slot = Some(Arc::clone(&fresh));
    Ok(fresh)
}

fn gamma_slot() -> &'static RwLock<BTreeMap<u32, Arc<ExactSeries>>> {
    static SLOT: OnceLock<RwLock<BTreeMap<u32, Arc<ExactSeries>>>> = OnceLock::new();
    SLOT.get_or_init(|| RwLock::new(BTreeMap::new()))
}

/// `Θ_{Γ_{8k}}` through at least `q^{min_order}`.
pub fn gamma_series(k: u32, min_order: usize) -> Result<Arc<ExactSeries>> {
    if let Some(s) = gamma_slot().read().expect("gamma cache poisoned").get(&k) {
        if s.order() >= min_order {
            return Ok(Arc::clone(s));
        }
    }
    let current = gamma_slot()
        .read()
        .expect("gamma cache poisoned")
        .get(&k)
        .map_or(0, |s| s.order());
    // Computed outside the lock: other k values stay available meanwhile.
    let order = min_order.max(current + current / 2);
    let fresh = Arc::new(theta_gamma_series(k, order)?);
    let mut map = gamma_slot().write().expect("gamma cache poisoned");
    let entry = map.entry(k).or_insert_with(|| Arc::clone(&fresh));
    if entry.order() < fresh.order() {
        *entry = Arc::clone(&fresh);
    }
    Ok(Arc::clone(entry))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_cache_grows() {
        let a = lambda_coefficients(10).unwrap();
        assert!(a.order() >= 10);
        assert_eq!(a.values[1], 16.0);
        let b = lambda_coefficients(a.order() + 1).unwrap();
        assert!(b.order() > a.order());
        assert_eq!(&b.exact.coeffs()[..=a.order()], a.exact.coeffs());
    }

    #[test]
    fn gamma_cache_prefix_is_stable() {
        let a = gamma_series(3, 5).unwrap();
        let b = gamma_series(3, 12).unwrap();
        assert!(b.order() >= 12);
        assert_eq!(&b.coeffs()[..=5], &a.coeffs()[..=5]);
    }
}
