//! Small exact-arithmetic helpers shared by the counting formulas.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)` as an exact big integer.
pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= BigUint::from(n - k + i);
        // Divides exactly: after multiplying by (n-k+1)..(n-k+i) the product
        // of any i consecutive integers is divisible by i!.
        acc = exact_div(acc, &BigUint::from(i));
    }
    acc
}

/// `n!` as an exact big integer.
pub(crate) fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Division that must leave no remainder.  The counting formulas in this
/// crate all divide exactly; a nonzero remainder means the formula was
/// applied outside its domain, so we fail loudly instead of truncating.
pub(crate) fn exact_div(num: BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num_integer_div_rem(num, den);
    assert!(r.is_zero(), "internal error: division by {den} left remainder {r}");
    q
}

fn num_integer_div_rem(num: BigUint, den: &BigUint) -> (BigUint, BigUint) {
    let q = &num / den;
    let r = num - &q * den;
    (q, r)
}
