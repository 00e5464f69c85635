//! Exact arithmetic in Q/Z.
//!
//! An [`Invariant`] is the canonical representative `num/den` of a class in
//! Q/Z, with `0 <= num < den` and `gcd(num, den) = 1`. Local Brauer classes
//! are modelled by their invariants, so the index of a local class is the
//! order of its invariant, i.e. its denominator.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_prime, mod_inverse, split_prime_power};
use crate::error::{Error, Result};

/// Reduced representative of an element of Q/Z.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Invariant {
    num: BigUint,
    den: BigUint,
}

impl Invariant {
    /// Builds the class of `num/den` in Q/Z, reducing to canonical form.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (num, den) = if den.sign() == Sign::Minus {
            (-num, -den)
        } else {
            (num, den)
        };
        Ok(Self::reduce(num, den))
    }

    /// Shorthand for small literals; panics on a zero denominator.
    pub fn frac(num: i64, den: u64) -> Self {
        Self::new(num, den).expect("denominator must be positive")
    }

    pub fn zero() -> Self {
        Invariant {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    /// `den` must be positive.
    fn reduce(num: BigInt, den: BigInt) -> Self {
        let r = num.mod_floor(&den);
        let g = r.gcd(&den);
        let (num, den) = if g.is_zero() {
            (BigInt::zero(), BigInt::one())
        } else {
            (r / &g, den / &g)
        };
        Invariant {
            num: num.to_biguint().expect("non-negative after mod_floor"),
            den: den.to_biguint().expect("positive denominator"),
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order of the class in Q/Z. For a local Brauer class this is its index.
    pub fn order(&self) -> BigUint {
        self.den.clone()
    }

    /// `n * self` in Q/Z.
    pub fn scale(&self, n: impl Into<BigInt>) -> Invariant {
        let n = n.into();
        Self::reduce(
            BigInt::from(self.num.clone()) * n,
            BigInt::from(self.den.clone()),
        )
    }

    /// Returns `k` with `other = k * self`, when `other` lies in the cyclic
    /// subgroup generated by `self`.
    pub fn cyclic_multiplier(&self, other: &Invariant) -> Option<BigUint> {
        // Q/Z has exactly one subgroup of each finite order, the (1/N)Z/Z.
        if !self.den.is_multiple_of(&other.den) {
            return None;
        }
        if self.is_zero() {
            return Some(BigUint::zero());
        }
        // other = (b * den/den_b) / den, and self = a / den with a a unit.
        let den = BigInt::from(self.den.clone());
        let lifted = BigInt::from(other.num.clone()) * BigInt::from(&self.den / &other.den);
        let inv = mod_inverse(&BigInt::from(self.num.clone()), &den)?;
        let k = (lifted * inv).mod_floor(&den);
        Some(k.to_biguint().expect("mod_floor is non-negative"))
    }

    /// Whether `self` and `other` generate the same cyclic subgroup of Q/Z.
    pub fn same_cyclic_subgroup(&self, other: &Invariant) -> bool {
        self.den == other.den && self.cyclic_multiplier(other).is_some()
    }

    /// The `p`-primary component: the unique class of `p`-power order whose
    /// difference with `self` has order prime to `p`.
    pub fn primary_part(&self, p: u64) -> Result<Invariant> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let (e, cofactor) = split_prime_power(&self.den, p);
        if e == 0 {
            return Ok(Invariant::zero());
        }
        let pe = BigInt::from(p).pow(e);
        let cofactor = BigInt::from(cofactor);
        // num/(p^e m) = x/p^e + y/m  with  x = num * m^{-1} mod p^e.
        let inv = mod_inverse(&cofactor, &pe).expect("cofactor is prime to p");
        let x = (BigInt::from(self.num.clone()) * inv).mod_floor(&pe);
        Ok(Self::reduce(x, pe))
    }
}

impl Default for Invariant {
    fn default() -> Self {
        Invariant::zero()
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Invariant({}/{})", self.num, self.den)
    }
}

impl FromStr for Invariant {
    type Err = Error;

    /// Accepts `"num/den"` with any integer numerator, or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseInvariant(s.to_string());
        let s_trim = s.trim();
        match s_trim.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Invariant::new(n, d)
            }
            None => {
                let n: BigInt = s_trim.parse().map_err(|_| bad())?;
                Invariant::new(n, 1)
            }
        }
    }
}

impl Serialize for Invariant {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Invariant {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &Invariant {
    type Output = Invariant;

    fn add(self, rhs: &Invariant) -> Invariant {
        let den = self.den.lcm(&rhs.den);
        let num = &self.num * (&den / &self.den) + &rhs.num * (&den / &rhs.den);
        Invariant::reduce(BigInt::from(num), BigInt::from(den))
    }
}

impl Add for Invariant {
    type Output = Invariant;

    fn add(self, rhs: Invariant) -> Invariant {
        &self + &rhs
    }
}

impl Neg for &Invariant {
    type Output = Invariant;

    fn neg(self) -> Invariant {
        Invariant::reduce(
            -BigInt::from(self.num.clone()),
            BigInt::from(self.den.clone()),
        )
    }
}

impl Neg for Invariant {
    type Output = Invariant;

    fn neg(self) -> Invariant {
        -&self
    }
}

impl Sub for &Invariant {
    type Output = Invariant;

    fn sub(self, rhs: &Invariant) -> Invariant {
        self + &(-rhs)
    }
}

impl Sub for Invariant {
    type Output = Invariant;

    fn sub(self, rhs: Invariant) -> Invariant {
        &self - &rhs
    }
}

impl std::iter::Sum for Invariant {
    fn sum<I: Iterator<Item = Invariant>>(iter: I) -> Invariant {
        iter.fold(Invariant::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> std::iter::Sum<&'a Invariant> for Invariant {
    fn sum<I: Iterator<Item = &'a Invariant>>(iter: I) -> Invariant {
        iter.fold(Invariant::zero(), |acc, x| &acc + x)
    }
}

/// The cyclic subgroup of Q/Z generated by an invariant.
///
/// Equality is equality of subgroups, so two descriptors with different
/// generators compare equal when the generators are related by a unit.
#[derive(Clone, Debug)]
pub struct CyclicSubgroup {
    generator: Invariant,
}

impl CyclicSubgroup {
    pub fn new(generator: Invariant) -> Self {
        CyclicSubgroup { generator }
    }

    pub fn generator(&self) -> &Invariant {
        &self.generator
    }

    pub fn order(&self) -> BigUint {
        self.generator.order()
    }

    pub fn contains(&self, x: &Invariant) -> bool {
        self.generator.cyclic_multiplier(x).is_some()
    }

    /// All elements `k * generator`, `0 <= k < order`. Intended for small orders.
    pub fn elements(&self) -> impl Iterator<Item = Invariant> + '_ {
        let order = self.order();
        num_iter_range(order).map(move |k| self.generator.scale(k))
    }
}

fn num_iter_range(n: BigUint) -> impl Iterator<Item = BigInt> {
    let mut k = BigUint::zero();
    std::iter::from_fn(move || {
        if k >= n {
            return None;
        }
        let out = BigInt::from(k.clone());
        k += 1u32;
        Some(out)
    })
}

impl PartialEq for CyclicSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.generator.same_cyclic_subgroup(&other.generator)
    }
}

impl Eq for CyclicSubgroup {}
