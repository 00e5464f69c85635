use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{iota, iota_with_witness, ObstructedPoint};
use crate::error::{Error, Result};
use crate::invariant::Invariant;

/// Points of the moduli space of stable twisted sheaves of rank `r` and
/// degree `r * d`, keyed by the raw `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub r: u64,
    pub d: u64,
    #[serde(default)]
    pub points: Vec<ObstructedPoint>,
}

/// Tabulated moduli data for a curve X and a class of index `beta_index`.
///
/// * `beta_index` is `i`, the index of beta over k.
/// * `curve_index` is `D`, the gcd of degrees of closed points of X.
/// * `pic_index` is `delta`, the index of `Pic^1`; it divides `D`.
///
/// A stratum stored under `(r, d)` with `0 <= d < D` holds the points of
/// `M^s(r, r*d)`. Missing strata mean no stable sheaves of that type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawModuli", into = "RawModuli")]
pub struct ModuliData {
    beta_index: u64,
    curve_index: u64,
    pic_index: u64,
    strata: BTreeMap<(u64, u64), Vec<ObstructedPoint>>,
    deg0_points: Vec<ObstructedPoint>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModuli {
    i: u64,
    #[serde(rename = "D")]
    big_d: u64,
    delta: u64,
    #[serde(default)]
    strata: Vec<Stratum>,
    #[serde(default)]
    deg0_points: Vec<ObstructedPoint>,
}

impl TryFrom<RawModuli> for ModuliData {
    type Error = Error;

    fn try_from(raw: RawModuli) -> Result<Self> {
        ModuliData::new(raw.i, raw.big_d, raw.delta, raw.strata, raw.deg0_points)
    }
}

impl From<ModuliData> for RawModuli {
    fn from(m: ModuliData) -> Self {
        RawModuli {
            i: m.beta_index,
            big_d: m.curve_index,
            delta: m.pic_index,
            strata: m
                .strata
                .into_iter()
                .map(|((r, d), points)| Stratum { r, d, points })
                .collect(),
            deg0_points: m.deg0_points,
        }
    }
}

impl ModuliData {
    pub fn new(
        beta_index: u64,
        curve_index: u64,
        pic_index: u64,
        strata: impl IntoIterator<Item = Stratum>,
        deg0_points: Vec<ObstructedPoint>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidModuliData(msg));
        if beta_index == 0 || curve_index == 0 || pic_index == 0 {
            return invalid("i, D and delta must be positive".into());
        }
        if !curve_index.is_multiple_of(pic_index) {
            return invalid(format!(
                "delta = {pic_index} does not divide D = {curve_index}"
            ));
        }
        let mut map = BTreeMap::new();
        for s in strata {
            if s.r == 0 {
                return invalid("stratum rank must be at least 1".into());
            }
            if s.d >= curve_index {
                return invalid(format!(
                    "stratum degree d = {} is outside [0, {curve_index})",
                    s.d
                ));
            }
            if map.insert((s.r, s.d), s.points).is_some() {
                return invalid(format!("duplicate stratum (r, d) = ({}, {})", s.r, s.d));
            }
        }
        Ok(ModuliData {
            beta_index,
            curve_index,
            pic_index,
            strata: map,
            deg0_points,
        })
    }

    pub fn beta_index(&self) -> u64 {
        self.beta_index
    }

    pub fn curve_index(&self) -> u64 {
        self.curve_index
    }

    pub fn pic_index(&self) -> u64 {
        self.pic_index
    }

    /// Points of `M^s(r, r*d)`, if tabulated.
    pub fn stratum(&self, r: u64, d: u64) -> Option<&[ObstructedPoint]> {
        self.strata.get(&(r, d)).map(Vec::as_slice)
    }

    pub fn strata(&self) -> impl Iterator<Item = ((u64, u64), &[ObstructedPoint])> {
        self.strata.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn deg0_points(&self) -> &[ObstructedPoint] {
        &self.deg0_points
    }
}

/// Minimizer of the general index-reduction formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralReduction {
    pub value: BigUint,
    pub rank: u64,
    /// Raw `d`; the stratum degree is `rank * degree`.
    pub degree: u64,
    /// Position of the minimizing point within its stratum.
    pub point: usize,
}

impl GeneralReduction {
    /// Degree `r * d` of the minimizing stratum.
    pub fn stratum_degree(&self) -> u64 {
        self.rank * self.degree
    }
}

/// `min_{r | i, d in [0, D)} r * iota_beta(r, r d)`, skipping missing or
/// empty strata. Ties keep the first minimizer in `(r, d)` order.
pub fn general_index_reduction(data: &ModuliData, beta: &Invariant) -> Result<GeneralReduction> {
    let mut best: Option<GeneralReduction> = None;
    for (&(r, d), points) in &data.strata {
        if !data.beta_index.is_multiple_of(r) || points.is_empty() {
            continue;
        }
        let (local, point) = iota_with_witness(points, beta)?;
        let value = local * r;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(GeneralReduction {
                value,
                rank: r,
                degree: d,
                point,
            });
        }
    }
    best.ok_or(Error::NoStrata)
}

/// Checks that `min_{d in [0, D)} iota_beta(1, d)` divides
/// `delta * computed_index`. Missing rank-1 strata count as infinite, so
/// with none present the check fails.
pub fn svdb_divisibility_check(
    data: &ModuliData,
    beta: &Invariant,
    computed_index: &BigUint,
) -> bool {
    let rank_one_min = (0..data.curve_index)
        .filter_map(|d| data.stratum(1, d))
        .filter_map(|points| iota(points, beta).ok())
        .min();
    match rank_one_min {
        Some(m) => (computed_index * data.pic_index).is_multiple_of(&m),
        None => false,
    }
}

/// Whether `computed_index` is realized by the degree-0 obstructions alone,
/// i.e. equals `iota_beta(Pic^0)`.
pub fn homogeneous_reduction_check(
    data: &ModuliData,
    beta: &Invariant,
    computed_index: &BigUint,
) -> Result<bool> {
    Ok(iota(&data.deg0_points, beta)? == *computed_index)
}
