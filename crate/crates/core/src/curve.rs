//! Genus-1 curves over a local field, described only through how their
//! index behaves under finite extensions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, valuation};
use crate::brauer::LocalExtension;
use crate::error::{Error, Result};

/// A curve of prime index `p` whose point existence over an extension E/k is
/// governed by `v_p([E:k])`: `C(E)` is nonempty iff `v_p([E:k]) > cpc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCapacity", into = "RawCapacity")]
pub struct CapacityCurveModel {
    p: u64,
    cpc: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCapacity {
    p: u64,
    cpc: u32,
}

impl TryFrom<RawCapacity> for CapacityCurveModel {
    type Error = Error;

    fn try_from(raw: RawCapacity) -> Result<Self> {
        CapacityCurveModel::new(raw.p, raw.cpc)
    }
}

impl From<CapacityCurveModel> for RawCapacity {
    fn from(m: CapacityCurveModel) -> Self {
        RawCapacity { p: m.p, cpc: m.cpc }
    }
}

impl CapacityCurveModel {
    pub fn new(p: u64, cpc: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidCurveModel(format!("index {p} is not prime")));
        }
        Ok(CapacityCurveModel { p, cpc })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn capacity(&self) -> u32 {
        self.cpc
    }

    pub fn has_point(&self, degree: u64) -> bool {
        valuation(degree, self.p) > self.cpc
    }

    pub fn index_at(&self, degree: u64) -> u64 {
        if self.has_point(degree) {
            1
        } else {
            self.p
        }
    }

    /// `p^(cpc+1)`, the smallest degree with a point, if it fits in `u64`.
    pub fn first_split_degree(&self) -> Option<u64> {
        self.p.checked_pow(self.cpc + 1)
    }
}

/// A curve given by an explicit table `[E:k] -> ind(C_E)`, with a default
/// index for degrees not listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTableIn", into = "RawTable")]
pub struct TabulatedCurveModel {
    table: BTreeMap<u64, u64>,
    default_index: u64,
}

#[derive(Serialize)]
struct RawTable {
    table: BTreeMap<u64, u64>,
    default: u64,
}

// Keys arrive as strings: the model enum is internally tagged, and serde
// buffers such content before the numeric key conversion could run.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTableIn {
    table: BTreeMap<String, u64>,
    default: u64,
}

impl TryFrom<RawTableIn> for TabulatedCurveModel {
    type Error = Error;

    fn try_from(raw: RawTableIn) -> Result<Self> {
        let table = raw
            .table
            .into_iter()
            .map(|(k, v)| {
                k.trim().parse::<u64>().map(|d| (d, v)).map_err(|_| {
                    Error::InvalidCurveModel(format!("table key {k:?} is not a degree"))
                })
            })
            .collect::<Result<_>>()?;
        TabulatedCurveModel::new(table, raw.default)
    }
}

impl From<TabulatedCurveModel> for RawTable {
    fn from(m: TabulatedCurveModel) -> Self {
        RawTable {
            table: m.table,
            default: m.default_index,
        }
    }
}

impl TabulatedCurveModel {
    pub fn new(table: BTreeMap<u64, u64>, default_index: u64) -> Result<Self> {
        if default_index == 0 {
            return Err(Error::InvalidCurveModel(
                "default index must be positive".into(),
            ));
        }
        if table.contains_key(&0) {
            return Err(Error::InvalidCurveModel(
                "degree 0 is not an extension degree".into(),
            ));
        }
        if let Some((d, _)) = table.iter().find(|(_, &ind)| ind == 0) {
            return Err(Error::InvalidCurveModel(format!(
                "index at degree {d} must be positive"
            )));
        }
        Ok(TabulatedCurveModel {
            table,
            default_index,
        })
    }

    pub fn index_at(&self, degree: u64) -> u64 {
        self.table
            .get(&degree)
            .copied()
            .unwrap_or(self.default_index)
    }

    /// Largest tabulated degree, or 0 for an empty table.
    pub fn max_listed_degree(&self) -> u64 {
        self.table.keys().next_back().copied().unwrap_or(0)
    }

    pub fn default_index(&self) -> u64 {
        self.default_index
    }
}

/// Any curve model that can report `ind(C_E)` from `[E:k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model")]
pub enum CurveModel {
    #[serde(rename = "capacity")]
    Capacity(CapacityCurveModel),
    #[serde(rename = "table")]
    Tabulated(TabulatedCurveModel),
}

impl From<CapacityCurveModel> for CurveModel {
    fn from(m: CapacityCurveModel) -> Self {
        CurveModel::Capacity(m)
    }
}

impl From<TabulatedCurveModel> for CurveModel {
    fn from(m: TabulatedCurveModel) -> Self {
        CurveModel::Tabulated(m)
    }
}

impl CurveModel {
    pub fn capacity(p: u64, cpc: u32) -> Result<Self> {
        CapacityCurveModel::new(p, cpc).map(CurveModel::Capacity)
    }

    pub fn table(pairs: impl IntoIterator<Item = (u64, u64)>, default_index: u64) -> Result<Self> {
        TabulatedCurveModel::new(pairs.into_iter().collect(), default_index)
            .map(CurveModel::Tabulated)
    }

    /// `ind(C_E)` for an extension of the given degree.
    pub fn index_at(&self, degree: u64) -> u64 {
        match self {
            CurveModel::Capacity(m) => m.index_at(degree),
            CurveModel::Tabulated(m) => m.index_at(degree),
        }
    }

    /// Index of the curve over the base field.
    pub fn base_index(&self) -> u64 {
        self.index_at(1)
    }

    /// Indices at degrees `1, 2, 3, ...` in order.
    pub fn index_scan(&self) -> IndexScan<'_> {
        let state = match self {
            CurveModel::Capacity(m) => ScanState::Capacity {
                p: m.p,
                modulus: m.first_split_degree(),
                residue: 0,
            },
            CurveModel::Tabulated(m) => ScanState::Table(m),
        };
        IndexScan { degree: 0, state }
    }
}

pub fn curve_index_after_extension(model: &CurveModel, ext: &LocalExtension) -> u64 {
    model.index_at(ext.degree())
}

/// Sequential `(degree, ind(C_E))` iterator.
///
/// The capacity model tracks `degree mod p^(cpc+1)` incrementally, so no
/// division happens per step; this keeps exhaustive scans over tens of
/// millions of degrees cheap.
pub struct IndexScan<'a> {
    degree: u64,
    state: ScanState<'a>,
}

enum ScanState<'a> {
    Capacity {
        p: u64,
        modulus: Option<u64>,
        residue: u64,
    },
    Table(&'a TabulatedCurveModel),
}

impl Iterator for IndexScan<'_> {
    type Item = (u64, u64);

    #[inline]
    fn next(&mut self) -> Option<(u64, u64)> {
        self.degree = self.degree.checked_add(1)?;
        let index = match &mut self.state {
            ScanState::Capacity {
                p,
                modulus,
                residue,
            } => match modulus {
                Some(modulus) => {
                    *residue += 1;
                    if *residue == *modulus {
                        *residue = 0;
                        1
                    } else {
                        *p
                    }
                }
                None => *p,
            },
            ScanState::Table(m) => m.index_at(self.degree),
        };
        Some((self.degree, index))
    }
}

/// Result of a capacity computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Capacity {
    /// The curve has a point over the base field, so no extension is pointless.
    Split,
    Finite(u32),
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Split => f.write_str("split"),
            Capacity::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Largest `r` such that some extension of degree `m' p^r <= search_bound`
/// (`p` not dividing `m'`) has no point, where `p` is the index of the curve.
///
/// A curve is pointless over E exactly when `ind(C_E) > 1`.
pub fn capacity_of(model: &CurveModel, search_bound: u64) -> Result<Capacity> {
    if search_bound == 0 {
        return Err(Error::InvalidInput(
            "search bound must be at least 1".into(),
        ));
    }
    let p = match model {
        CurveModel::Capacity(m) => m.p,
        CurveModel::Tabulated(m) => {
            let base = m.index_at(1);
            if base == 1 {
                return Ok(Capacity::Split);
            }
            if !is_prime(base) {
                return Err(Error::InvalidCurveModel(format!(
                    "capacity needs a curve of prime index, found {base}"
                )));
            }
            base
        }
    };
    let best = model
        .index_scan()
        .take_while(|&(d, _)| d <= search_bound)
        .filter(|&(_, index)| index > 1)
        .map(|(d, _)| valuation(d, p))
        .max();
    Ok(best.map_or(Capacity::Split, Capacity::Finite))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(d: u64) -> LocalExtension {
        LocalExtension::of_degree(d).unwrap()
    }

    #[test]
    fn curve_index_examples() {
        // v_2(2) = 1 > 0: point exists.
        let m = CurveModel::capacity(2, 0).unwrap();
        assert_eq!(curve_index_after_extension(&m, &ext(2)), 1);
        // v_2(2) = 1 <= 1: still pointless.
        let m = CurveModel::capacity(2, 1).unwrap();
        assert_eq!(curve_index_after_extension(&m, &ext(2)), 2);
        let split = CurveModel::table([(1, 1)], 1).unwrap();
        assert_eq!(curve_index_after_extension(&split, &ext(1)), 1);
        assert_eq!(curve_index_after_extension(&split, &ext(7)), 1);
    }

    #[test]
    fn table_lookup_with_default() {
        let m = CurveModel::table([(1, 3), (3, 1)], 3).unwrap();
        assert_eq!(m.index_at(1), 3);
        assert_eq!(m.index_at(2), 3);
        assert_eq!(m.index_at(3), 1);
        assert_eq!(m.base_index(), 3);
    }

    #[test]
    fn capacity_examples() {
        let m = CurveModel::capacity(3, 2).unwrap();
        assert_eq!(capacity_of(&m, 100).unwrap(), Capacity::Finite(2));
        let m = CurveModel::capacity(2, 0).unwrap();
        assert_eq!(capacity_of(&m, 16).unwrap(), Capacity::Finite(0));
        let split = CurveModel::table([(1, 1)], 1).unwrap();
        assert_eq!(capacity_of(&split, 10).unwrap(), Capacity::Split);
        assert_eq!(capacity_of(&split, 10).unwrap().to_string(), "split");
    }

    #[test]
    fn capacity_of_table_model() {
        // Index 2, pointless over odd degrees and over degrees 2 and 6.
        let table = (1..=64u64).map(|d| (d, if d % 2 == 1 || d == 2 || d == 6 { 2 } else { 1 }));
        let m = CurveModel::table(table, 1).unwrap();
        assert_eq!(capacity_of(&m, 64).unwrap(), Capacity::Finite(1));
        assert_eq!(capacity_of(&m, 1).unwrap(), Capacity::Finite(0));
        let bad = CurveModel::table([(1, 4)], 4).unwrap();
        assert!(matches!(
            capacity_of(&bad, 10),
            Err(Error::InvalidCurveModel(_))
        ));
        assert!(capacity_of(&bad, 0).is_err());
    }

    #[test]
    fn capacity_recovers_cpc() {
        for p in [2u64, 3, 5] {
            for cpc in 0..=5u32 {
                let m = CurveModel::capacity(p, cpc).unwrap();
                let bound = p.pow(cpc + 2);
                assert_eq!(
                    capacity_of(&m, bound).unwrap(),
                    Capacity::Finite(cpc),
                    "p={p} cpc={cpc}"
                );
                // p^cpc is already enough to see the largest pointless valuation.
                assert_eq!(capacity_of(&m, p.pow(cpc)).unwrap(), Capacity::Finite(cpc));
            }
        }
    }

    #[test]
    fn scan_matches_pointwise_index() {
        for model in [
            CurveModel::capacity(2, 0).unwrap(),
            CurveModel::capacity(3, 2).unwrap(),
            CurveModel::capacity(5, 1).unwrap(),
            CurveModel::table([(1, 2), (4, 1), (6, 1)], 2).unwrap(),
        ] {
            for (d, index) in model.index_scan().take(2000) {
                assert_eq!(index, model.index_at(d), "{model:?} at {d}");
            }
        }
    }

    #[test]
    fn points_persist_up_the_p_tower() {
        for p in [2u64, 3, 5] {
            for cpc in 0..=3u32 {
                let m = CapacityCurveModel::new(p, cpc).unwrap();
                for d in 1..=1000u64 {
                    if m.has_point(d) {
                        let mut up = d * p;
                        while up <= 1000 {
                            assert!(m.has_point(up));
                            up *= p;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn model_json() {
        let m: CurveModel = serde_json::from_str(r#"{"model":"capacity","p":2,"cpc":1}"#).unwrap();
        assert_eq!(m, CurveModel::capacity(2, 1).unwrap());
        let t: CurveModel =
            serde_json::from_str(r#"{"model":"table","table":{"1":2,"2":1},"default":1}"#).unwrap();
        assert_eq!(t.index_at(1), 2);
        assert_eq!(t.index_at(2), 1);
        assert_eq!(t.index_at(9), 1);
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"model":"table","table":{"1":2,"2":1},"default":1}"#
        );
        assert!(
            serde_json::from_str::<CurveModel>(r#"{"model":"capacity","p":4,"cpc":1}"#).is_err()
        );
        assert!(serde_json::from_str::<CurveModel>(
            r#"{"model":"table","table":{"1":0},"default":1}"#
        )
        .is_err());
        assert!(serde_json::from_str::<CurveModel>(r#"{"model":"other"}"#).is_err());
    }
}
