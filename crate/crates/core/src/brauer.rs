//! Local and global Brauer classes as invariant bookkeeping.
//!
//! A local class is determined by its invariant in Q/Z, and restriction to a
//! finite extension multiplies the invariant by the degree. Global classes
//! are finite maps from opaque place labels to local invariants whose sum
//! vanishes.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::Invariant;

/// A Brauer class over a local field, stored as its invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalClass {
    pub inv: Invariant,
}

impl LocalClass {
    pub fn new(inv: Invariant) -> Self {
        LocalClass { inv }
    }

    /// Index of the class; over a local field this equals the period.
    pub fn index(&self) -> BigUint {
        self.inv.order()
    }

    pub fn period(&self) -> BigUint {
        self.inv.order()
    }

    pub fn restrict(&self, ext: &LocalExtension) -> LocalClass {
        restrict_local(self, ext)
    }
}

impl From<Invariant> for LocalClass {
    fn from(inv: Invariant) -> Self {
        LocalClass { inv }
    }
}

/// A finite extension of a local field, described by its degree.
///
/// The ramification and inertia degrees are optional metadata; restriction
/// of Brauer classes depends only on the total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawExtension", into = "RawExtension")]
pub struct LocalExtension {
    degree: u64,
    ramification: Option<(u64, u64)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    degree: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    f: Option<u64>,
}

impl TryFrom<RawExtension> for LocalExtension {
    type Error = Error;

    fn try_from(raw: RawExtension) -> Result<Self> {
        let ext = match (raw.e, raw.f) {
            (None, None) => return LocalExtension::of_degree(raw.degree),
            (Some(e), Some(f)) => LocalExtension::with_ramification(e, f)?,
            _ => {
                return Err(Error::InvalidExtension(
                    "ramification e and inertia f must be given together".into(),
                ))
            }
        };
        if ext.degree != raw.degree {
            return Err(Error::InvalidExtension(format!(
                "e*f = {} does not match degree {}",
                ext.degree, raw.degree
            )));
        }
        Ok(ext)
    }
}

impl From<LocalExtension> for RawExtension {
    fn from(ext: LocalExtension) -> Self {
        RawExtension {
            degree: ext.degree,
            e: ext.ramification.map(|(e, _)| e),
            f: ext.ramification.map(|(_, f)| f),
        }
    }
}

impl LocalExtension {
    pub fn of_degree(degree: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidExtension("degree must be at least 1".into()));
        }
        Ok(LocalExtension {
            degree,
            ramification: None,
        })
    }

    /// Extension with ramification index `e` and inertia degree `f`.
    pub fn with_ramification(e: u64, f: u64) -> Result<Self> {
        if e == 0 || f == 0 {
            return Err(Error::InvalidExtension("e and f must be positive".into()));
        }
        let degree = e
            .checked_mul(f)
            .ok_or_else(|| Error::Overflow(format!("{e} * {f}")))?;
        Ok(LocalExtension {
            degree,
            ramification: Some((e, f)),
        })
    }

    pub fn trivial() -> Self {
        LocalExtension {
            degree: 1,
            ramification: None,
        }
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn ramification(&self) -> Option<u64> {
        self.ramification.map(|(e, _)| e)
    }

    pub fn inertia(&self) -> Option<u64> {
        self.ramification.map(|(_, f)| f)
    }
}

pub fn local_index(c: &LocalClass) -> BigUint {
    c.index()
}

/// Restriction to `ext`: the invariant is multiplied by `[E:k]`, so the
/// index drops to `ind / gcd(ind, [E:k])`.
pub fn restrict_local(c: &LocalClass, ext: &LocalExtension) -> LocalClass {
    LocalClass {
        inv: c.inv.scale(ext.degree()),
    }
}

/// A Brauer class over a global field, as local invariants at finitely many
/// places. Places absent from the map carry the zero invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGlobal", into = "RawGlobal")]
pub struct GlobalClass {
    places: BTreeMap<String, Invariant>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGlobal {
    #[serde(default)]
    places: BTreeMap<String, Invariant>,
}

impl TryFrom<RawGlobal> for GlobalClass {
    type Error = Error;

    fn try_from(raw: RawGlobal) -> Result<Self> {
        GlobalClass::new(raw.places)
    }
}

impl From<GlobalClass> for RawGlobal {
    fn from(c: GlobalClass) -> Self {
        RawGlobal { places: c.places }
    }
}

impl GlobalClass {
    /// Validates reciprocity: the local invariants must sum to zero.
    pub fn new(places: BTreeMap<String, Invariant>) -> Result<Self> {
        let total: Invariant = places.values().sum();
        if !total.is_zero() {
            return Err(Error::Reciprocity(total.to_string()));
        }
        Ok(GlobalClass { places })
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Invariant)>) -> Result<Self> {
        Self::new(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn zero() -> Self {
        GlobalClass {
            places: BTreeMap::new(),
        }
    }

    pub fn places(&self) -> &BTreeMap<String, Invariant> {
        &self.places
    }

    pub fn invariant_at(&self, place: &str) -> Invariant {
        self.places.get(place).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.places.values().all(Invariant::is_zero)
    }

    pub fn index(&self) -> BigUint {
        global_index(self)
    }
}

/// Least common multiple of the local indices.
pub fn global_index(c: &GlobalClass) -> BigUint {
    c.places
        .values()
        .fold(BigUint::one(), |acc, inv| acc.lcm(&inv.order()))
}

/// How the places of k split in a finite extension L/k: for each place, the
/// local degrees of the places above it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile", into = "RawProfile")]
pub struct GlobalExtensionProfile {
    total_degree: u64,
    splitting: BTreeMap<String, Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    total_degree: u64,
    places: BTreeMap<String, Vec<u64>>,
}

impl TryFrom<RawProfile> for GlobalExtensionProfile {
    type Error = Error;

    fn try_from(raw: RawProfile) -> Result<Self> {
        GlobalExtensionProfile::new(raw.total_degree, raw.places)
    }
}

impl From<GlobalExtensionProfile> for RawProfile {
    fn from(p: GlobalExtensionProfile) -> Self {
        RawProfile {
            total_degree: p.total_degree,
            places: p.splitting,
        }
    }
}

impl GlobalExtensionProfile {
    pub fn new(total_degree: u64, splitting: BTreeMap<String, Vec<u64>>) -> Result<Self> {
        if total_degree == 0 {
            return Err(Error::InvalidProfile(
                "total degree must be positive".into(),
            ));
        }
        for (place, degrees) in &splitting {
            if degrees.is_empty() || degrees.contains(&0) {
                return Err(Error::InvalidProfile(format!(
                    "place {place:?} needs a nonempty list of positive local degrees"
                )));
            }
            let sum = degrees
                .iter()
                .try_fold(0u64, |acc, &d| acc.checked_add(d))
                .ok_or_else(|| Error::Overflow(format!("local degrees at {place:?}")))?;
            if sum != total_degree {
                return Err(Error::InvalidProfile(format!(
                    "local degrees at {place:?} sum to {sum}, expected {total_degree}"
                )));
            }
        }
        Ok(GlobalExtensionProfile {
            total_degree,
            splitting,
        })
    }

    pub fn from_pairs<'a>(
        total_degree: u64,
        pairs: impl IntoIterator<Item = (&'a str, Vec<u64>)>,
    ) -> Result<Self> {
        Self::new(
            total_degree,
            pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        )
    }

    pub fn total_degree(&self) -> u64 {
        self.total_degree
    }

    pub fn local_degrees(&self, place: &str) -> Option<&[u64]> {
        self.splitting.get(place).map(Vec::as_slice)
    }
}

/// Label of the `j`-th place (1-based) above `place`.
pub fn place_above(place: &str, j: usize) -> String {
    format!("{place}:{j}")
}

/// Restriction of a global class to L: each place w above v receives
/// `[L_w : k_v] * inv_v`.
///
/// Places of the profile that carry the zero invariant produce zero entries
/// above them; zero places missing from the profile are dropped.
pub fn restrict_global(c: &GlobalClass, profile: &GlobalExtensionProfile) -> Result<GlobalClass> {
    for (place, inv) in &c.places {
        if !inv.is_zero() && !profile.splitting.contains_key(place) {
            return Err(Error::UncoveredPlace(place.clone()));
        }
    }
    let mut places = BTreeMap::new();
    for (place, degrees) in &profile.splitting {
        let inv = c.invariant_at(place);
        for (j, &d) in degrees.iter().enumerate() {
            places.insert(place_above(place, j + 1), inv.scale(BigInt::from(d)));
        }
    }
    // Sum over w above v is total_degree * inv_v, so reciprocity must hold here.
    GlobalClass::new(places)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(s: &str) -> Invariant {
        s.parse().unwrap()
    }

    fn deg(d: u64) -> LocalExtension {
        LocalExtension::of_degree(d).unwrap()
    }

    #[test]
    fn local_index_examples() {
        assert_eq!(
            local_index(&LocalClass::new(inv("0/1"))),
            BigUint::from(1u32)
        );
        assert_eq!(
            local_index(&LocalClass::new(inv("1/4"))),
            BigUint::from(4u32)
        );
        assert_eq!(
            local_index(&LocalClass::new(inv("2/9"))),
            BigUint::from(9u32)
        );
    }

    #[test]
    fn restrict_local_examples() {
        let c = LocalClass::new(inv("1/4"));
        let r = restrict_local(&c, &deg(2));
        assert_eq!(r.inv, inv("1/2"));
        assert_eq!(r.index(), BigUint::from(2u32));
        assert_eq!(restrict_local(&c, &deg(1)).inv, inv("1/4"));

        // 9 * 1/6 = 3/2 = 1 + 1/2
        let r = restrict_local(&LocalClass::new(inv("1/6")), &deg(9));
        assert_eq!(r.inv, inv("1/2"));
        assert_eq!(r.index(), BigUint::from(6u32 / 3));
    }

    #[test]
    fn extension_validation() {
        assert!(LocalExtension::of_degree(0).is_err());
        let e = LocalExtension::with_ramification(2, 3).unwrap();
        assert_eq!(e.degree(), 6);
        assert_eq!(e.ramification(), Some(2));
        assert_eq!(e.inertia(), Some(3));
        assert!(LocalExtension::with_ramification(0, 3).is_err());

        let parsed: LocalExtension = serde_json::from_str(r#"{"degree":2,"e":2,"f":1}"#).unwrap();
        assert_eq!(parsed.degree(), 2);
        let parsed: LocalExtension = serde_json::from_str(r#"{"degree":2}"#).unwrap();
        assert_eq!(parsed, deg(2));
        assert!(serde_json::from_str::<LocalExtension>(r#"{"degree":3,"e":2,"f":1}"#).is_err());
        assert!(serde_json::from_str::<LocalExtension>(r#"{"degree":2,"e":2}"#).is_err());
        assert!(serde_json::from_str::<LocalExtension>(r#"{"degree":0}"#).is_err());
    }

    #[test]
    fn ramification_does_not_affect_restriction() {
        let c = LocalClass::new(inv("5/12"));
        let a = restrict_local(&c, &LocalExtension::with_ramification(2, 3).unwrap());
        let b = restrict_local(&c, &LocalExtension::with_ramification(6, 1).unwrap());
        assert_eq!(a, b);
        assert_eq!(a, restrict_local(&c, &deg(6)));
    }

    #[test]
    fn global_index_examples() {
        let c = GlobalClass::from_pairs([("v1", inv("1/2")), ("v2", inv("1/2"))]).unwrap();
        assert_eq!(global_index(&c), BigUint::from(2u32));
        assert_eq!(global_index(&GlobalClass::zero()), BigUint::from(1u32));
        // 1/3 + 1/2 + 1/6 = 1
        let c =
            GlobalClass::from_pairs([("v1", inv("1/3")), ("v2", inv("1/2")), ("v3", inv("1/6"))])
                .unwrap();
        assert_eq!(global_index(&c), BigUint::from(6u32));
    }

    #[test]
    fn reciprocity_enforced() {
        let err = GlobalClass::from_pairs([("v1", inv("1/2")), ("v2", inv("1/3"))]).unwrap_err();
        assert_eq!(err, Error::Reciprocity("5/6".into()));
        let json = r#"{"places":{"v1":"1/2","v2":"1/2"}}"#;
        let c: GlobalClass = serde_json::from_str(json).unwrap();
        assert_eq!(c.index(), BigUint::from(2u32));
        assert!(serde_json::from_str::<GlobalClass>(r#"{"places":{"v1":"1/2"}}"#).is_err());
    }

    #[test]
    fn restrict_global_examples() {
        let zero = GlobalClass::from_pairs([("v1", inv("0/1")), ("v2", inv("0/1"))]).unwrap();
        let profile =
            GlobalExtensionProfile::from_pairs(3, [("v1", vec![1, 2]), ("v2", vec![3])]).unwrap();
        assert!(restrict_global(&zero, &profile).unwrap().is_zero());

        let c = GlobalClass::from_pairs([("v1", inv("1/2")), ("v2", inv("1/2"))]).unwrap();
        let profile =
            GlobalExtensionProfile::from_pairs(2, [("v1", vec![2]), ("v2", vec![2])]).unwrap();
        assert!(restrict_global(&c, &profile).unwrap().is_zero());

        let c = GlobalClass::from_pairs([("v1", inv("1/4")), ("v2", inv("3/4"))]).unwrap();
        let profile =
            GlobalExtensionProfile::from_pairs(2, [("v1", vec![2]), ("v2", vec![1, 1])]).unwrap();
        let r = restrict_global(&c, &profile).unwrap();
        let got: Vec<(String, String)> = r
            .places()
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("v1:1".to_string(), "1/2".to_string()),
                ("v2:1".to_string(), "3/4".to_string()),
                ("v2:2".to_string(), "3/4".to_string()),
            ]
        );
        // 1/2 + 3/4 + 3/4 = 2
        assert!(r.places().values().sum::<Invariant>().is_zero());
        assert_eq!(r.index(), BigUint::from(4u32));
    }

    #[test]
    fn uncovered_place_rejected() {
        let c = GlobalClass::from_pairs([("v1", inv("1/2")), ("v2", inv("1/2"))]).unwrap();
        let profile = GlobalExtensionProfile::from_pairs(2, [("v1", vec![2])]).unwrap();
        assert_eq!(
            restrict_global(&c, &profile).unwrap_err(),
            Error::UncoveredPlace("v2".into())
        );
    }

    #[test]
    fn profile_validation() {
        assert!(GlobalExtensionProfile::from_pairs(3, [("v", vec![1, 1])]).is_err());
        assert!(GlobalExtensionProfile::from_pairs(2, [("v", vec![])]).is_err());
        assert!(GlobalExtensionProfile::from_pairs(0, []).is_err());
        let p: GlobalExtensionProfile =
            serde_json::from_str(r#"{"total_degree":2,"places":{"v1":[2],"v2":[1,1]}}"#).unwrap();
        assert_eq!(p.local_degrees("v2"), Some(&[1u64, 1][..]));
    }
}
