//! Closed-form alternating sums for the chain-forest counts.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactmath::{binomial, pi};

fn signed(i: i64, x: BigInt) -> BigInt {
    if i % 2 == 0 {
        x
    } else {
        -x
    }
}

/// `Σ_{i=0}^{q} (-1)^i C(s,i) Π^{s-k}_{-i+1,s-1-i} C(k-1+q-i, k-1)`.
pub fn cf_count_formula(q: usize, s: usize, k: usize) -> BigInt {
    let (q, s, k) = (q as i64, s as i64, k as i64);
    (0..=q)
        .map(|i| {
            signed(
                i,
                binomial(s, i) * pi(-i + 1, s - 1 - i, s - k) * binomial(k - 1 + q - i, k - 1),
            )
        })
        .fold(BigInt::zero(), |acc, x| acc + x)
}

/// The `i`-th summand of the refined count:
/// `(-1)^i C(s,i) Π^{s-ℓ-m}_{-i+1,s-1-ℓ-i} Π^{ℓ-(k-m)}_{s-ℓ-i,s-1-i} C(k-1+q-i, k-1)`.
pub fn cf_refined_term(q: usize, s: usize, k: usize, ell: usize, m: usize, i: usize) -> BigInt {
    let (q, s, k, ell, m, i) = (q as i64, s as i64, k as i64, ell as i64, m as i64, i as i64);
    signed(
        i,
        binomial(s, i)
            * pi(-i + 1, s - 1 - ell - i, s - ell - m)
            * pi(s - ell - i, s - 1 - i, ell - (k - m))
            * binomial(k - 1 + q - i, k - 1),
    )
}

pub fn cf_refined_formula(q: usize, s: usize, k: usize, ell: usize, m: usize) -> BigInt {
    (0..=q)
        .map(|i| cf_refined_term(q, s, k, ell, m, i))
        .fold(BigInt::zero(), |acc, x| acc + x)
}

/// The `i`-th summand of the upper-bound expression:
/// `(-1)^i C(s,i) Π^{s-ℓ-m}_{-i,s-ℓ-2-i} Π^{ℓ-(k-m)}_{s-ℓ-i,s-1-i} C(k-1+q-i, k-1)`.
pub fn upper_term(q: usize, s: usize, k: usize, ell: usize, m: usize, i: usize) -> BigInt {
    let (q, s, k, ell, m, i) = (q as i64, s as i64, k as i64, ell as i64, m as i64, i as i64);
    signed(
        i,
        binomial(s, i)
            * pi(-i, s - ell - 2 - i, s - ell - m)
            * pi(s - ell - i, s - 1 - i, ell - (k - m))
            * binomial(k - 1 + q - i, k - 1),
    )
}
