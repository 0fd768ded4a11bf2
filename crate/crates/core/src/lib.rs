//! Theta functions of the even unimodular lattices `Γ_{8k}` and their zeros.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`], [`eisenstein`], [`lattice`]: exact integer and rational
//!   q-expansions (Jacobi theta constants, the lattice theta series, the
//!   modular lambda function, Eisenstein series) and a brute-force lattice
//!   enumeration used as an independent oracle.
//! - [`numeric`]: truncation-certified evaluation of `θ₂, θ₃, θ₄`, `λ`, `λ'`
//!   and `Θ_{Γ_{8k}}` in the upper half-plane, in binary64 or in extended
//!   precision.
//! - [`zeros`]: the real auxiliary function on the arc
//!   `{1 + e^{iφ}}`, bracketing and bisection of its roots, the full
//!   root inventory of `1 + z^{2k} + (1 − z)^{2k}`, and inversion of `λ`
//!   along `Re τ = 1/2`.
//! - [`analysis`]: zero-height density, height law, equidistribution
//!   statistics and valence bookkeeping.
//! - [`verify`]: the invariant suite run by `theta-zeros verify`.

pub mod analysis;
pub mod cache;
pub mod eisenstein;
pub mod error;
pub mod lattice;
pub mod mp;
pub mod numeric;
pub mod reference;
pub mod series;
pub mod verify;
pub mod zeros;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// `√3/2`, the height of `ρ = e^{iπ/3}`.
pub const SQRT3_OVER_2: f64 = 0.866_025_403_784_438_6;

/// `ℓ = ⌊k/3⌋`, the number of zeros of `Θ_{Γ_{8k}}` on the line above `ρ`.
pub fn ell(k: u32) -> u32 {
    k / 3
}

/// `k' = 4k − 12ℓ ∈ {0, 4, 8}`.
pub fn k_prime(k: u32) -> u32 {
    4 * k - 12 * ell(k)
}
