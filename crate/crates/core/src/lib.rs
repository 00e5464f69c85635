//! Exact index-reduction arithmetic for Brauer classes along curves.
//!
//! Brauer classes over local fields are modelled by their invariants in
//! Q/Z. On top of that the crate provides
//!
//! * restriction of local and global classes to finite extensions,
//! * genus-1 curves over local fields described by their index function
//!   (the capacity model, or an explicit table),
//! * the index-reduction formulas: the beta-index reduction of a point set,
//!   the general minimum over moduli strata, the genus-1 min/gcd searches and
//!   the closed form in terms of capacity,
//! * twisted Riemann-Roch and numerical-polynomial utilities,
//! * a JSON scenario runner used by the `brauer-redux` CLI.
//!
//! ```
//! use brauer_redux_core::{capacity_closed_form, genus1_index_reduction_min, CurveModel, LocalClass};
//!
//! let beta = LocalClass::new("1/4".parse().unwrap());
//! let curve = CurveModel::capacity(2, 1).unwrap();
//! assert_eq!(genus1_index_reduction_min(&beta, &curve, 32).unwrap(), 2);
//! assert_eq!(capacity_closed_form(1, 2, 2, 1).unwrap(), 2);
//! ```

pub mod arith;
pub mod brauer;
pub mod curve;
pub mod error;
pub mod euler;
pub mod invariant;
pub mod reduction;
pub mod scenario;
pub mod triangle;

pub use brauer::{
    global_index, local_index, restrict_global, restrict_local, GlobalClass,
    GlobalExtensionProfile, LocalClass, LocalExtension,
};
pub use curve::{
    capacity_of, curve_index_after_extension, Capacity, CapacityCurveModel, CurveModel,
    TabulatedCurveModel,
};
pub use error::{Error, Result};
pub use euler::{
    alternating_binomial_sum, fm_twisted_rank, leading_coefficient_times_factorial,
    period_index_bound_check, twisted_euler_char, NumericalPolynomial, RRInput,
};
pub use invariant::{CyclicSubgroup, Invariant};
pub use reduction::{
    capacity_closed_form, general_index_reduction, genus1_index_reduction_gcd,
    genus1_index_reduction_min, genus1_splits, homogeneous_reduction_check, iota,
    iota_with_witness, sufficient_bound, svdb_divisibility_check, GeneralReduction, ModuliData,
    ObstructedPoint, Stratum,
};
