//! The capacity triangle: for `beta` of invariant `1/(m p^n)` and a
//! capacity curve of index `p`, the min search, the gcd search and the
//! closed form must all agree.

use serde::Serialize;

use crate::arith::is_prime;
use crate::brauer::LocalClass;
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::invariant::Invariant;
use crate::reduction::{
    capacity_closed_form, genus1_index_reduction_gcd, genus1_index_reduction_min,
};

/// Grid limits: primes `p <= pmax`, `1 <= m <= mmax` prime to `p`,
/// `1 <= n <= nmax`, `0 <= cpc <= cpcmax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleGrid {
    pub pmax: u64,
    pub nmax: u32,
    pub cpcmax: u32,
    pub mmax: u64,
}

impl Default for TriangleGrid {
    fn default() -> Self {
        TriangleGrid {
            pmax: 5,
            nmax: 4,
            cpcmax: 5,
            mmax: 6,
        }
    }
}

impl TriangleGrid {
    /// Cases ordered by `p`, then `m`, `n`, `cpc`.
    pub fn cases(&self) -> Vec<TriangleCase> {
        let mut out = Vec::new();
        for p in (2..=self.pmax).filter(|&p| is_prime(p)) {
            for m in (1..=self.mmax).filter(|m| m % p != 0) {
                for n in 1..=self.nmax {
                    for cpc in 0..=self.cpcmax {
                        out.push(TriangleCase { m, p, n, cpc });
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleCase {
    pub m: u64,
    pub p: u64,
    pub n: u32,
    pub cpc: u32,
}

impl TriangleCase {
    fn overflow(&self) -> Error {
        Error::Overflow(format!("triangle case {self:?}"))
    }

    /// `m p^n`.
    pub fn beta_index(&self) -> Result<u64> {
        self.p
            .checked_pow(self.n)
            .and_then(|q| q.checked_mul(self.m))
            .ok_or_else(|| self.overflow())
    }

    /// The class of invariant `1/(m p^n)`.
    pub fn beta(&self) -> Result<LocalClass> {
        Ok(LocalClass::new(Invariant::new(1, self.beta_index()?)?))
    }

    pub fn model(&self) -> Result<CurveModel> {
        CurveModel::capacity(self.p, self.cpc)
    }

    /// `m p^(n + cpc + 1)`.
    pub fn bound(&self) -> Result<u64> {
        self.p
            .checked_pow(self.n + self.cpc + 1)
            .and_then(|q| q.checked_mul(self.m))
            .ok_or_else(|| self.overflow())
    }

    pub fn evaluate(&self) -> TriangleOutcome {
        let run = || -> Result<(u64, u64, u64, u64)> {
            let beta = self.beta()?;
            let model = self.model()?;
            let bound = self.bound()?;
            let min = genus1_index_reduction_min(&beta, &model, bound)?;
            let gcd = genus1_index_reduction_gcd(&beta, &model, bound)?;
            let closed = capacity_closed_form(self.m, self.p, self.n, self.cpc)?;
            Ok((bound, min, gcd, closed))
        };
        match run() {
            Ok((bound, min, gcd, closed)) => TriangleOutcome {
                case: *self,
                bound: Some(bound),
                min: Some(min),
                gcd: Some(gcd),
                closed_form: Some(closed),
                error: None,
            },
            Err(e) => TriangleOutcome {
                case: *self,
                bound: self.bound().ok(),
                min: None,
                gcd: None,
                closed_form: None,
                error: Some(e),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleOutcome {
    pub case: TriangleCase,
    pub bound: Option<u64>,
    pub min: Option<u64>,
    pub gcd: Option<u64>,
    pub closed_form: Option<u64>,
    pub error: Option<Error>,
}

impl TriangleOutcome {
    pub fn agrees(&self) -> bool {
        self.error.is_none() && self.min == self.gcd && self.gcd == self.closed_form
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_size() {
        // (p, #m): (2, 3), (3, 4), (5, 5); 4 values of n, 6 of cpc.
        assert_eq!(TriangleGrid::default().cases().len(), 12 * 4 * 6);
    }

    #[test]
    fn small_cases_agree() {
        let grid = TriangleGrid {
            pmax: 3,
            nmax: 2,
            cpcmax: 2,
            mmax: 4,
        };
        for case in grid.cases() {
            let out = case.evaluate();
            assert!(out.agrees(), "{out:?}");
        }
    }

    #[test]
    fn worked_case() {
        let out = TriangleCase {
            m: 1,
            p: 2,
            n: 2,
            cpc: 0,
        }
        .evaluate();
        assert_eq!(
            (out.min, out.gcd, out.closed_form),
            (Some(4), Some(4), Some(4))
        );
        assert_eq!(out.bound, Some(8));
    }
}
