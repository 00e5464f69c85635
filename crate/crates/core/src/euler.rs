//! Euler-characteristic arithmetic for twisted sheaves.
//!
//! On a curve of genus `g`, a twisted sheaf of degree `deg` and rank `r`
//! pushes forward to a complex of twisted vector spaces of rank
//! `deg + r(1 - g)`. In higher dimension, `m -> chi(V (x) L^m)` is a
//! numerical polynomial whose top finite difference recovers
//! `t! * leading coefficient`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported polynomial degree.
pub const MAX_DEGREE: usize = 12;

/// Input to twisted Riemann-Roch on a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RRInput {
    pub deg: i64,
    pub rank: u64,
    pub genus: u64,
}

impl RRInput {
    pub fn new(deg: i64, rank: u64, genus: u64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        Ok(RRInput { deg, rank, genus })
    }

    /// Builds the input from a degree stated in `(1/n)Z` as `n * deg` and `n`.
    pub fn from_scaled(scaled_deg: i64, n: u64, rank: u64, genus: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "normalization n must be positive".into(),
            ));
        }
        let n = i64::try_from(n).map_err(|_| Error::Overflow(format!("n = {n}")))?;
        if scaled_deg % n != 0 {
            return Err(Error::InvalidInput(format!(
                "degree {scaled_deg}/{n} is not integral"
            )));
        }
        Self::new(scaled_deg / n, rank, genus)
    }
}

/// `deg + rank * (1 - genus)`.
pub fn twisted_euler_char(x: &RRInput) -> BigInt {
    BigInt::from(x.deg) + BigInt::from(x.rank) * (BigInt::one() - BigInt::from(x.genus))
}

/// A rational polynomial in the monomial basis, coefficients in ascending
/// degree, representing `m -> chi(V (x) L^m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalPolynomial {
    coeffs: Vec<BigRational>,
}

impl NumericalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::DegreeTooLarge(coeffs.len() - 1));
        }
        Ok(NumericalPolynomial { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Expands `sum_k b_k * C(m, k)` into the monomial basis.
    pub fn from_binomial_basis(coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::DegreeTooLarge(coeffs.len() - 1));
        }
        let mut out = vec![BigRational::zero(); coeffs.len()];
        // falling(k) = m (m-1) ... (m-k+1), built incrementally.
        let mut falling = vec![BigRational::one()];
        let mut factorial = BigRational::one();
        for (k, b) in coeffs.iter().enumerate() {
            if k > 0 {
                factorial *= BigRational::from_integer(BigInt::from(k));
                let shift = BigRational::from_integer(BigInt::from(k - 1));
                let mut next = vec![BigRational::zero(); falling.len() + 1];
                for (j, c) in falling.iter().enumerate() {
                    next[j + 1] += c;
                    next[j] -= c * &shift;
                }
                falling = next;
            }
            for (j, c) in falling.iter().enumerate() {
                out[j] += b * c / &factorial;
            }
        }
        Self::new(out)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, m: &BigInt) -> BigRational {
        let m = BigRational::from_integer(m.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &m + c)
    }

    pub fn eval_i64(&self, m: i64) -> BigRational {
        self.eval(&BigInt::from(m))
    }

    /// Coefficients `b_k` with `P(m) = sum_k b_k * C(m, k)`, i.e. the forward
    /// differences `Delta^k P(0)`.
    pub fn binomial_basis(&self) -> Vec<BigRational> {
        let mut row: Vec<BigRational> = (0..self.coeffs.len() as i64)
            .map(|m| self.eval_i64(m))
            .collect();
        let mut out = Vec::with_capacity(row.len());
        while !row.is_empty() {
            out.push(row[0].clone());
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        out
    }

    /// Integer-valuedness checked on the window `-deg..=deg` of `2 deg + 1`
    /// consecutive integers.
    pub fn is_integer_valued(&self) -> bool {
        let deg = self.degree().unwrap_or(0) as i64;
        (-deg..=deg).all(|m| self.eval_i64(m).is_integer())
    }
}

impl fmt::Display for NumericalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a.is_integer() && !a.is_one() {
                        write!(f, "{a}")?;
                    } else if !a.is_integer() {
                        write!(f, "({a})")?;
                    }
                    f.write_str("m")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolynomial {
    coeffs: Vec<String>,
}

impl Serialize for NumericalPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawPolynomial {
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NumericalPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPolynomial::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        NumericalPolynomial::new(coeffs).map_err(serde::de::Error::custom)
    }
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| {
        acc * BigInt::from(n - j) / BigInt::from(j + 1)
    })
}

fn factorial(t: u32) -> BigInt {
    (1..=t).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `sum_{j=0}^{t} (-1)^j C(t, j) chi(m + t - j)`, the `t`-th forward
/// difference of `chi` at `m`.
pub fn alternating_binomial_sum(chi: &NumericalPolynomial, t: u32, m: &BigInt) -> BigRational {
    (0..=t).fold(BigRational::zero(), |acc, j| {
        let term = chi.eval(&(m + BigInt::from(t - j))) * BigRational::from_integer(binomial(t, j));
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// `t! * lead(chi)` for `chi` of degree exactly `t`.
pub fn leading_coefficient_times_factorial(
    chi: &NumericalPolynomial,
    t: u32,
) -> Result<BigRational> {
    if chi.degree() != Some(t as usize) {
        return Err(Error::DegreeMismatch {
            expected: t as usize,
            actual: chi.degree().map_or("-inf".to_string(), |d| d.to_string()),
        });
    }
    Ok(chi.leading_coefficient() * BigRational::from_integer(factorial(t)))
}

/// Rank `n^g` of the twisted bundle obtained by Fourier-Mukai transform of
/// a line bundle `M` with `chi(M)^2 = #K(M) = #A[n] = n^(2g)`.
pub fn fm_twisted_rank(g: u32, n: u64) -> BigUint {
    let rank = BigUint::from(n).pow(g);
    assert_eq!(
        &rank * &rank,
        BigUint::from(n).pow(2 * g),
        "chi^2 must equal the order of A[n]"
    );
    rank
}

/// Whether `ind | per^g`.
///
/// `odd_order` records which period the caller supplied: the period of the
/// torsor in general, or of its Brauer class when the torsor has odd order.
/// The divisibility has the same shape in both cases.
pub fn period_index_bound_check(per: u64, ind: u64, g: u32, odd_order: bool) -> bool {
    let _ = odd_order;
    if ind == 0 {
        return false;
    }
    BigUint::from(per)
        .pow(g)
        .is_multiple_of(&BigUint::from(ind))
}
