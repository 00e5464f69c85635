//! Small integer helpers shared by the search routines.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut f = 5u64;
    while f.checked_mul(f).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(f) || n.is_multiple_of(f + 2) {
            return false;
        }
        f += 6;
    }
    true
}

/// Exponent of `p` in `n`. `n` must be nonzero and `p >= 2`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Exponent of `p` in a big integer, together with the cofactor.
pub fn split_prime_power(n: &BigUint, p: u64) -> (u32, BigUint) {
    debug_assert!(!n.is_zero());
    let p = BigUint::from(p);
    let mut rest = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            break;
        }
        rest = q;
        e += 1;
    }
    (e, rest)
}

/// Inverse of `a` modulo `m`, if it exists. `m == 1` yields 0.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let ext = a.mod_floor(m).extended_gcd(m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(m))
}
