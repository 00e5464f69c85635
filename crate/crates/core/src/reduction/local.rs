//! Index reduction along genus-1 curves over local fields.
//!
//! For such curves the index of `beta_{k(C)}` is the least degree of an
//! extension E/k over which `beta` is split by `C_E`. By Roquette's theorem
//! that happens iff `ind(beta_E) | ind(C_E)`, and over a local field
//! `ind(beta_E) = i / gcd(i, [E:k])`. The searches below enumerate degrees
//! directly; [`capacity_closed_form`] is the closed answer for capacity
//! models.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{is_prime, valuation};
use crate::brauer::{local_index, restrict_local, LocalClass, LocalExtension};
use crate::curve::{curve_index_after_extension, CurveModel, IndexScan};
use crate::error::{Error, Result};

/// Whether `beta_E` is split by `C_E`, computed through restriction of the
/// class: `ind(beta_E) | ind(C_E)`.
pub fn genus1_splits(beta: &LocalClass, model: &CurveModel, ext: &LocalExtension) -> bool {
    let restricted = local_index(&restrict_local(beta, ext));
    let curve = BigUint::from(curve_index_after_extension(model, ext));
    curve.is_multiple_of(&restricted)
}

/// `i / gcd(i, degree)` divides `curve_index`.
pub fn split_condition(beta_index: u64, degree: u64, curve_index: u64) -> bool {
    let reduced = beta_index / beta_index.gcd(&degree);
    curve_index.is_multiple_of(reduced)
}

fn beta_index(beta: &LocalClass) -> Result<u64> {
    let i = local_index(beta);
    i.to_u64()
        .ok_or_else(|| Error::Overflow(format!("index {i} does not fit the degree search")))
}

/// Degree bound below which the splitting degrees already realize their gcd.
///
/// For a capacity model the splitting set is periodic modulo
/// `lcm(i, p^(cpc+1))` and contains that modulus, so `i * p^(cpc+1)`
/// suffices. For a table the set is periodic beyond the last listed degree
/// `K`, where it consists of the multiples of a divisor of `i`; two
/// consecutive multiples occur below `K + 2i`.
pub fn sufficient_bound(beta: &LocalClass, model: &CurveModel) -> Result<u64> {
    let i = beta_index(beta)?;
    let overflow = || Error::Overflow("sufficient search bound exceeds u64".into());
    match model {
        CurveModel::Capacity(m) => m
            .first_split_degree()
            .and_then(|q| q.checked_mul(i))
            .ok_or_else(overflow),
        CurveModel::Tabulated(m) => i
            .checked_mul(2)
            .and_then(|t| t.checked_add(m.max_listed_degree()))
            .ok_or_else(overflow),
    }
}

/// Degrees `d <= bound` at which `beta` is split by the curve, in increasing
/// order.
///
/// `i / gcd(i, d) | c` is equivalent to `q_c | d` with `q_c = i / gcd(i, c)`.
/// A handful of curve indices `c` occur in practice, so each gets a running
/// residue of `d mod q_c` instead of a division per degree.
struct SplittingDegrees<'a> {
    scan: IndexScan<'a>,
    beta_index: u64,
    bound: u64,
    slots: Vec<Slot>,
}

struct Slot {
    curve_index: u64,
    modulus: u64,
    residue: u64,
}

const MAX_SLOTS: usize = 4;

impl<'a> SplittingDegrees<'a> {
    fn new(beta_index: u64, model: &'a CurveModel, bound: u64) -> Self {
        SplittingDegrees {
            scan: model.index_scan(),
            beta_index,
            bound,
            slots: Vec::with_capacity(MAX_SLOTS),
        }
    }
}

impl Iterator for SplittingDegrees<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let (d, c) = self.scan.next()?;
            if d > self.bound {
                return None;
            }
            for slot in &mut self.slots {
                slot.residue += 1;
                if slot.residue == slot.modulus {
                    slot.residue = 0;
                }
            }
            let hit = match self.slots.iter().find(|s| s.curve_index == c) {
                Some(slot) => slot.residue == 0,
                None => {
                    let modulus = self.beta_index / self.beta_index.gcd(&c);
                    let residue = d % modulus;
                    if self.slots.len() < MAX_SLOTS {
                        self.slots.push(Slot {
                            curve_index: c,
                            modulus,
                            residue,
                        });
                    }
                    residue == 0
                }
            };
            if hit {
                return Some(d);
            }
        }
    }
}

/// Least degree `d <= bound` of an extension over which `beta` is split by
/// the curve. This is `ind(beta_{k(C)})` once found.
pub fn genus1_index_reduction_min(
    beta: &LocalClass,
    model: &CurveModel,
    bound: u64,
) -> Result<u64> {
    if bound == 0 {
        return Err(Error::InvalidInput(
            "search bound must be at least 1".into(),
        ));
    }
    let i = beta_index(beta)?;
    SplittingDegrees::new(i, model, bound)
        .next()
        .ok_or(Error::BoundExhausted(bound))
}

/// gcd of all degrees `d <= bound` with `i / gcd(i, d) | ind(C_d)`.
///
/// Unless the gcd reaches 1, `bound` must be at least [`sufficient_bound`]
/// so that the enumerated gcd is the gcd over all degrees.
pub fn genus1_index_reduction_gcd(
    beta: &LocalClass,
    model: &CurveModel,
    bound: u64,
) -> Result<u64> {
    if bound == 0 {
        return Err(Error::InvalidInput(
            "search bound must be at least 1".into(),
        ));
    }
    let i = beta_index(beta)?;
    let mut acc = 0u64;
    for d in SplittingDegrees::new(i, model, bound) {
        acc = acc.gcd(&d);
        if acc == 1 {
            return Ok(1);
        }
    }
    if acc == 0 {
        return Err(Error::BoundExhausted(bound));
    }
    let required = sufficient_bound(beta, model)?;
    if bound < required {
        return Err(Error::InsufficientBound { bound, required });
    }
    Ok(acc)
}

/// Decomposition `i = m p^n` with `p` not dividing `m` and `n > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedFormInput {
    pub m: u64,
    pub p: u64,
    pub n: u32,
}

impl ClosedFormInput {
    /// `None` when `p` does not divide `i`.
    pub fn from_index(i: u64, p: u64) -> Option<Self> {
        if i == 0 || p < 2 {
            return None;
        }
        let n = valuation(i, p);
        if n == 0 {
            return None;
        }
        Some(ClosedFormInput {
            m: i / p.pow(n),
            p,
            n,
        })
    }
}

/// Index of `A_{k(C)}` for `ind(A) = m p^n` and a curve of index `p` with
/// capacity `cpc`: `m p^n` if `cpc < n - 1`, else `m p^(n-1)`.
pub fn capacity_closed_form(m: u64, p: u64, n: u32, cpc: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("m and n must be positive".into()));
    }
    if m.is_multiple_of(p) {
        return Err(Error::PrimeDividesCofactor { m, p });
    }
    let exponent = if cpc < n - 1 { n } else { n - 1 };
    p.checked_pow(exponent)
        .and_then(|pn| pn.checked_mul(m))
        .ok_or_else(|| Error::Overflow(format!("{m} * {p}^{exponent}")))
}
