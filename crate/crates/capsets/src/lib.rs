//! Constructions, certificates and exact bounds for cap sets over GF(3).
//!
//! A cap set is a subset of GF(3)^n containing no three distinct vectors
//! that sum to zero — equivalently, no three points on an affine line.
//! This crate provides:
//!
//! * exact verifiers for cap sets, extendable collections of cap sets, and
//!   the admissible pattern sets that steer product constructions
//!   ([`caps`], [`patterns`]);
//! * the constructions themselves: direct powers, the extended product of
//!   an extendable collection along an admissible set, a recursive
//!   dimension-multiplying step, and a second-level ("meta") variant that
//!   plays the same game with admissible sets in place of cap sets
//!   ([`construction`], [`meta`]);
//! * a small plan language describing a tower of such steps, with exact
//!   big-integer size accounting ([`plan`]);
//! * high-precision evaluation of the resulting lower bounds on the
//!   cap-set growth constant, reproducing the headline numbers
//!   ([`bounds`]);
//! * a CNF encoder for searching for constant-weight admissible sets with
//!   an external SAT solver, including certificate decoding and
//!   verification ([`satgen`]).
//!
//! Everything that certifies a result is exact: verdicts are computed over
//! explicit finite sets, sizes are exact arbitrary-precision integers, and
//! the floating-point presentation layer truncates rather than rounds so a
//! printed bound never overstates what was proved.

pub mod bounds;
pub mod caps;
pub mod construction;
pub mod design;
pub mod error;
pub mod meta;
pub mod patterns;
pub mod plan;
pub mod satgen;
pub mod set;
pub mod vector;

pub use caps::{
    direct_product, is_cap_set, is_extendable, power, power_count, Budget, CapVerdict,
    ExtendVerdict, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use set::VectorSet;
pub use vector::TernaryVector;
