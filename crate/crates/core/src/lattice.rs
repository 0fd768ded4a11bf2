//! Brute-force representation counts for `Γ_{8k}`.
//!
//! `Γ_{8k}` is the set of vectors in `ℤ^{8k} ∪ (ℤ + ½)^{8k}` whose coordinate
//! sum is even. This module enumerates every lattice vector with
//! `‖x‖² ≤ 2·n_max` directly, with no use of theta-function identities, so it
//! can serve as an oracle for [`crate::series::theta_gamma_series`].

use crate::error::{Error, Result};

/// Default cap on the number of partial vectors visited.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Number of prefix vectors the depth-first search visits for one branch.
///
/// `step_norms` lists the admissible squared coordinate values (in the
/// doubled scale for the half-integer branch) with multiplicity; the count is
/// the sum over prefix lengths of the number of prefixes whose partial norm
/// stays within `bound`.
fn search_size(dim: usize, bound: usize, step_norms: &[(usize, f64)]) -> f64 {
    let mut ways = vec![0f64; bound + 1];
    ways[0] = 1.0;
    let mut total = 0.0;
    for _ in 0..dim {
        let mut next = vec![0f64; bound + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for &(c, mult) in step_norms {
                if s + c <= bound {
                    next[s + c] += w * mult;
                }
            }
        }
        total += next.iter().sum::<f64>();
        ways = next;
    }
    total
}

/// Estimated enumeration cost for `lattice_count(k, n_max)`.
pub fn enumeration_cost(k: u32, n_max: usize) -> f64 {
    let dim = 8 * k as usize;
    // integer branch: x_i² ≤ 2 n_max
    let int_steps: Vec<(usize, f64)> = (0usize..)
        .take_while(|x| x * x <= 2 * n_max)
        .map(|x| (x * x, if x == 0 { 1.0 } else { 2.0 }))
        .collect();
    // half-integer branch in doubled coordinates z = 2x, z odd, Σz² ≤ 8 n_max
    let half_steps: Vec<(usize, f64)> = (0usize..)
        .map(|m| 2 * m + 1)
        .take_while(|z| z * z <= 8 * n_max)
        .map(|z| (z * z, 2.0))
        .collect();
    search_size(dim, 2 * n_max, &int_steps) + search_size(dim, 8 * n_max, &half_steps)
}

struct Enumerator {
    dim: usize,
    counts: Vec<u64>,
}

impl Enumerator {
    /// Integer branch: coordinates in ℤ, remaining squared-norm budget `left`.
    fn integer(&mut self, depth: usize, norm: usize, sum: i64, left: usize) {
        if depth == self.dim {
            if sum.rem_euclid(2) == 0 && norm % 2 == 0 {
                self.counts[norm / 2] += 1;
            }
            return;
        }
        let r = isqrt(left) as i64;
        for x in -r..=r {
            let sq = (x * x) as usize;
            self.integer(depth + 1, norm + sq, sum + x, left - sq);
        }
    }

    /// Half-integer branch in doubled coordinates `z = 2x` (all odd).
    fn half(&mut self, depth: usize, norm4: usize, sum2: i64, left: usize) {
        if depth == self.dim {
            // Σx = sum2/2 must be even, ‖x‖² = norm4/4 must be even.
            if sum2.rem_euclid(4) == 0 && norm4 % 8 == 0 {
                self.counts[norm4 / 8] += 1;
            }
            return;
        }
        let r = isqrt(left) as i64;
        let mut z = -r;
        if z % 2 == 0 {
            z += 1;
        }
        while z <= r {
            let sq = (z * z) as usize;
            self.half(depth + 1, norm4 + sq, sum2 + z, left - sq);
            z += 2;
        }
    }
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `r_{Γ_{8k}}(n)` for `n = 0..=n_max`: the number of `x ∈ Γ_{8k}` with
/// `‖x‖² = 2n`, by exhaustive enumeration.
///
/// Fails with [`Error::BudgetExceeded`] before doing any work if the search
/// would visit more than `budget` partial vectors; it never returns a
/// partial count.
pub fn lattice_count(k: u32, n_max: usize, budget: u64) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let estimate = enumeration_cost(k, n_max);
    if estimate > budget as f64 {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let dim = 8 * k as usize;
    let mut e = Enumerator {
        dim,
        counts: vec![0; n_max + 1],
    };
    e.integer(0, 0, 0, 2 * n_max);
    e.half(0, 0, 0, 8 * n_max);
    Ok(e.counts)
}
