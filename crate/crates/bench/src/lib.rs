//! Fixed inputs shared by the benchmarks.

use brauer_redux_core::{Invariant, ObstructedPoint};

/// `count` points with residue degrees 1..=count and obstructions `j/den`.
pub fn point_cloud(count: u64, den: u64) -> Vec<ObstructedPoint> {
    (1..=count)
        .map(|j| {
            ObstructedPoint::new(j, Invariant::frac((j % den) as i64, den)).expect("degree > 0")
        })
        .collect()
}

/// Invariants `a/den` for `a` in `0..den`.
pub fn invariants(den: u64) -> Vec<Invariant> {
    (0..den).map(|a| Invariant::frac(a as i64, den)).collect()
}
