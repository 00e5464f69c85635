//! Brute-force reference computations on machine integers. Nothing here
//! calls into the library.

#![allow(dead_code)]

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest `k >= 1` with `k * a / b` an integer, found by counting.
pub fn order(a: u64, b: u64) -> u64 {
    (1..=b)
        .find(|k| (k * a).is_multiple_of(b))
        .expect("k = b always works")
}

/// `a/b + c/d` reduced into `[0, 1)`, as `(num, den)` with `den > 0`.
pub fn add(a: u64, b: u64, c: u64, d: u64) -> (u64, u64) {
    let num = (a * d + c * b) % (b * d);
    let den = b * d;
    let g = gcd(num, den);
    (num / g, den / g)
}

/// The subgroup of `Z/n` generated by `a`, by repeated addition.
pub fn subgroup(a: u64, n: u64) -> Vec<bool> {
    let mut seen = vec![false; n as usize];
    let mut x = 0;
    loop {
        if seen[x as usize] {
            return seen;
        }
        seen[x as usize] = true;
        x = (x + a) % n;
    }
}

/// `v_p(d)` by repeated division.
pub fn val(mut d: u64, p: u64) -> u32 {
    let mut v = 0;
    while d.is_multiple_of(p) {
        d /= p;
        v += 1;
    }
    v
}

/// Index of a capacity-`cpc` curve of index `p` over the extension of degree `d`.
pub fn capacity_curve_index(p: u64, cpc: u32, d: u64) -> u64 {
    if val(d, p) > cpc {
        1
    } else {
        p
    }
}

/// Whether the class `1/i` restricted to degree `d` is split by a curve of
/// index `c` there: its index `i / gcd(i, d)` must divide `c`.
pub fn split_by_curve(i: u64, d: u64, c: u64) -> bool {
    let restricted = order(d % i, i);
    c.is_multiple_of(restricted)
}
