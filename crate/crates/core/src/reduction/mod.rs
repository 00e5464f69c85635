//! Index reduction of a Brauer class `beta` along the function field of a
//! curve.
//!
//! The basic quantity is the beta-index reduction of a family of points
//! carrying obstruction classes: the minimum over points `p` of
//! `[k(p):k] * ind(alpha(p) + beta)`. Everything else in this module is a
//! minimum (or divisibility test) built on top of it.

mod local;
mod moduli;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::Invariant;

pub use local::{
    capacity_closed_form, genus1_index_reduction_gcd, genus1_index_reduction_min, genus1_splits,
    split_condition, sufficient_bound, ClosedFormInput,
};
pub use moduli::{
    general_index_reduction, homogeneous_reduction_check, svdb_divisibility_check,
    GeneralReduction, ModuliData, Stratum,
};

/// A closed point of a moduli space together with its obstruction class.
///
/// The point contributes a twisted sheaf of rank `residue_degree * ind(obstruction + beta)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub struct ObstructedPoint {
    residue_degree: u64,
    obstruction: Invariant,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    residue_degree: u64,
    obstruction: Invariant,
}

impl TryFrom<RawPoint> for ObstructedPoint {
    type Error = Error;

    fn try_from(raw: RawPoint) -> Result<Self> {
        ObstructedPoint::new(raw.residue_degree, raw.obstruction)
    }
}

impl From<ObstructedPoint> for RawPoint {
    fn from(p: ObstructedPoint) -> Self {
        RawPoint {
            residue_degree: p.residue_degree,
            obstruction: p.obstruction,
        }
    }
}

impl ObstructedPoint {
    pub fn new(residue_degree: u64, obstruction: Invariant) -> Result<Self> {
        if residue_degree == 0 {
            return Err(Error::InvalidInput(
                "residue degree must be at least 1".into(),
            ));
        }
        Ok(ObstructedPoint {
            residue_degree,
            obstruction,
        })
    }

    pub fn residue_degree(&self) -> u64 {
        self.residue_degree
    }

    pub fn obstruction(&self) -> &Invariant {
        &self.obstruction
    }

    /// `[k(p):k] * ind(alpha(p) + beta)`.
    pub fn reduced_rank(&self, beta: &Invariant) -> BigUint {
        (&self.obstruction + beta).order() * self.residue_degree
    }
}

/// Beta-index reduction of a point set, with the position of a minimizing
/// point (the first one on ties).
pub fn iota_with_witness(points: &[ObstructedPoint], beta: &Invariant) -> Result<(BigUint, usize)> {
    points
        .iter()
        .enumerate()
        .map(|(idx, p)| (p.reduced_rank(beta), idx))
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
        .ok_or(Error::NoPoints)
}

/// Beta-index reduction `min_p [k(p):k] * ind(alpha(p) + beta)`.
pub fn iota(points: &[ObstructedPoint], beta: &Invariant) -> Result<BigUint> {
    iota_with_witness(points, beta).map(|(value, _)| value)
}
