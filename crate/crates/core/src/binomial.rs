//! Binomial coefficients on (possibly negative) integer arguments.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(a, b)`, zero whenever `b < 0` or `b > a` (which also covers every negative `a`).
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}
