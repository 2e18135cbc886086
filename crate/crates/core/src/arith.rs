//! Overflow-safe exact comparisons of integer products.

use std::cmp::Ordering;

use num_bigint::BigUint;

fn product(xs: &[u128]) -> Option<u128> {
    xs.iter().try_fold(1u128, |acc, &x| acc.checked_mul(x))
}

fn big_product(xs: &[u128]) -> BigUint {
    xs.iter().fold(BigUint::from(1u8), |acc, &x| acc * BigUint::from(x))
}

/// Compares `Π lhs` with `Π rhs` exactly.
pub fn cmp_products(lhs: &[u128], rhs: &[u128]) -> Ordering {
    match (product(lhs), product(rhs)) {
        (Some(a), Some(b)) => a.cmp(&b),
        _ => big_product(lhs).cmp(&big_product(rhs)),
    }
}

/// `Π lhs <= Π rhs`, exactly.
pub fn products_le(lhs: &[u128], rhs: &[u128]) -> bool {
    cmp_products(lhs, rhs) != Ordering::Greater
}
