//! Closed-form guarantees: pass-count bounds, shrink fractions, and
//! approximation factors, all evaluated exactly.

use num_bigint::BigUint;
use num_rational::Ratio;

use crate::arith::products_le;
use crate::eps::Epsilon;

/// Smallest integer `t >= 0` with `(1+eps)^t >= num/den`. Needs `eps > 0`.
pub fn ceil_log(eps: Epsilon, num: u64, den: u64) -> Option<u64> {
    if eps.is_zero() || den == 0 {
        return None;
    }
    let p = BigUint::from(eps.num());
    let q = BigUint::from(eps.den());
    let base = &p + &q;
    // compare den * (p+q)^t against num * q^t
    let mut lhs = BigUint::from(den);
    let mut rhs = BigUint::from(num);
    let mut t = 0u64;
    while lhs < rhs {
        lhs *= &base;
        rhs *= &q;
        t += 1;
    }
    Some(t)
}

/// `ceil(log_{1+eps} n) + 1`, the plain peeling pass bound.
pub fn pass_bound_undirected(n: usize, eps: Epsilon) -> Option<u64> {
    ceil_log(eps, n as u64, 1).map(|t| t + 1)
}

/// `ceil(log_{1+eps}(n/k)) + 1`, the size-floored pass bound.
pub fn pass_bound_at_least_k(n: usize, k: usize, eps: Epsilon) -> Option<u64> {
    ceil_log(eps, n as u64, k.max(1) as u64).map(|t| t + 1)
}

/// Whether a pass that removed `removed` of `n_alive` nodes shed strictly
/// more than an `eps/(1+eps)` fraction.
pub fn sheds_enough(removed: usize, n_alive: usize, eps: Epsilon) -> bool {
    let p = eps.num() as u128;
    let q = eps.den() as u128;
    (removed as u128) * (p + q) > p * n_alive as u128
}

/// `c (1 + eps)`, e.g. `c = 2` for plain peeling and `c = 3` for the
/// size-floored variant.
pub fn approx_factor(c: u64, eps: Epsilon) -> Ratio<u64> {
    Ratio::new(c * (eps.num() + eps.den()), eps.den())
}

pub fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `factor * achieved >= optimum`, exactly.
pub fn within_factor(factor: Ratio<u64>, achieved: Ratio<u64>, optimum: Ratio<u64>) -> bool {
    // optimum.n * factor.d * achieved.d <= factor.n * achieved.n * optimum.d
    products_le(
        &[
            *optimum.numer() as u128,
            *factor.denom() as u128,
            *achieved.denom() as u128,
        ],
        &[
            *factor.numer() as u128,
            *achieved.numer() as u128,
            *optimum.denom() as u128,
        ],
    )
}
