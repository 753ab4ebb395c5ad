//! Cap-set verification, extendable collections and direct products.
//!
//! A cap set is a set A of vectors in GF(3)^n with no solutions to
//! x + y + z = 0 other than x = y = z. The verifier here is pair-based:
//! for each unordered pair {x, y} with x != y it computes the unique
//! completing vector z = -(x + y) and tests membership. This is sufficient
//! because in characteristic 3 a zero-sum triple with exactly two equal
//! entries forces all three equal, so every nontrivial solution consists of
//! three distinct vectors and is found from any two of them.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::set::VectorSet;
use crate::vector::TernaryVector;

/// Default cap on the number of elements any operation will materialise.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Environment variable consulted by [`Budget::from_env`].
pub const BUDGET_ENV_VAR: &str = "CAPSETS_BUDGET";

/// An element budget guarding all materialising operations.
///
/// Exceeding the budget is an explicit error or a count-only result
/// (depending on the operation), never a silent truncation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// Reads an override from the `CAPSETS_BUDGET` environment variable,
    /// falling back to the default of 10^6 elements.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV_VAR) {
            Ok(s) => s.trim().parse().map(Budget).unwrap_or_default(),
            Err(_) => Budget::default(),
        }
    }

    /// True when `count` elements fit within the budget.
    pub fn allows(&self, count: &BigUint) -> bool {
        *count <= BigUint::from(self.0)
    }
}

/// Outcome of a cap-set check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CapVerdict {
    /// No nontrivial zero-sum triple exists.
    Pass,
    /// Three distinct elements with x + y + z = 0, first in lexicographic
    /// order of (x, y, z) over ordered pairs x < y.
    Counterexample {
        x: TernaryVector,
        y: TernaryVector,
        z: TernaryVector,
    },
}

impl CapVerdict {
    /// True on [`CapVerdict::Pass`].
    pub fn is_pass(&self) -> bool {
        matches!(self, CapVerdict::Pass)
    }
}

/// Checks whether `s` is a cap set. The empty set passes.
///
/// Counterexamples are deterministic: pairs are scanned in lexicographic
/// order and the first completed triple is returned.
pub fn is_cap_set(s: &VectorSet) -> CapVerdict {
    let elems = s.to_vec();
    for (i, x) in elems.iter().enumerate() {
        for y in &elems[i + 1..] {
            let z = TernaryVector::completing(x, y).expect("equal dims within a set");
            if z != *x && z != *y && s.contains(&z) {
                return CapVerdict::Counterexample {
                    x: x.clone(),
                    y: y.clone(),
                    z,
                };
            }
        }
    }
    CapVerdict::Pass
}

/// Outcome of an extendable-collection check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ExtendVerdict {
    /// Both conditions hold (and each input is individually a cap set).
    Pass,
    /// One of the three inputs is not a cap set. `which` is 0, 1 or 2.
    NotCap { which: usize, verdict: CapVerdict },
    /// Condition (1) fails: x, y in A0 (possibly equal) and z in A1 ∪ A2
    /// with x + y + z = 0.
    Condition1 {
        x: TernaryVector,
        y: TernaryVector,
        z: TernaryVector,
    },
    /// Condition (2) fails: x in A0, y in A1, z in A2 with x + y + z = 0.
    Condition2 {
        x: TernaryVector,
        y: TernaryVector,
        z: TernaryVector,
    },
}

impl ExtendVerdict {
    /// True on [`ExtendVerdict::Pass`].
    pub fn is_pass(&self) -> bool {
        matches!(self, ExtendVerdict::Pass)
    }
}

/// Checks the two defining conditions of an extendable collection
/// (A0, A1, A2) by brute force:
///
/// 1. for all x, y in A0 (including x = y) and z in A1 ∪ A2, x + y + z != 0;
/// 2. for all x in A0, y in A1, z in A2, x + y + z != 0.
///
/// Each input must first pass the cap-set check; a failure there is
/// reported as its own verdict kind. Taking x = y in condition (1) shows
/// that a passing A0 is disjoint from A1 and A2.
pub fn is_extendable(a0: &VectorSet, a1: &VectorSet, a2: &VectorSet) -> Result<ExtendVerdict> {
    for s in [a1, a2] {
        if s.dim() != a0.dim() {
            return Err(Error::DimensionMismatch {
                expected: a0.dim(),
                found: s.dim(),
            });
        }
    }
    for (which, s) in [a0, a1, a2].into_iter().enumerate() {
        let verdict = is_cap_set(s);
        if !verdict.is_pass() {
            return Ok(ExtendVerdict::NotCap { which, verdict });
        }
    }

    let union = a1.union(a2)?;
    // Condition (1): -(x + y) must avoid A1 ∪ A2 for all x, y in A0.
    for x in a0.iter() {
        for y in a0.iter() {
            let z = TernaryVector::completing(x, y)?;
            if union.contains(&z) {
                return Ok(ExtendVerdict::Condition1 {
                    x: x.clone(),
                    y: y.clone(),
                    z,
                });
            }
        }
    }
    // Condition (2): -(x + y) with x in A0, y in A1 must avoid A2.
    for x in a0.iter() {
        for y in a1.iter() {
            let z = TernaryVector::completing(x, y)?;
            if a2.contains(&z) {
                return Ok(ExtendVerdict::Condition2 {
                    x: x.clone(),
                    y: y.clone(),
                    z,
                });
            }
        }
    }
    Ok(ExtendVerdict::Pass)
}

/// Direct product: all concatenations (a, b) with a in `a`, b in `b`.
pub fn direct_product(a: &VectorSet, b: &VectorSet) -> VectorSet {
    let mut out = VectorSet::new(a.dim() + b.dim());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(x.concat(y)).expect("dims add");
        }
    }
    out
}

/// Exact element count of the m-fold power of a set with `len` elements.
pub fn power_count(len: usize, m: u32) -> BigUint {
    BigUint::from(len).pow(m)
}

/// m-fold direct product of `a` with itself.
///
/// Refuses to materialise more than `budget` elements; the error names the
/// exact count so callers can fall back to count-only reasoning.
pub fn power(a: &VectorSet, m: u32, budget: Budget) -> Result<VectorSet> {
    if m < 1 {
        return Err(Error::Domain("power requires m >= 1".into()));
    }
    let count = power_count(a.len(), m);
    if !budget.allows(&count) {
        return Err(Error::BudgetExceeded {
            count,
            budget: budget.0,
        });
    }
    let mut out = VectorSet::new(a.dim());
    for v in a.iter() {
        out.insert(v.clone()).expect("same dim");
    }
    for _ in 1..m {
        out = direct_product(&out, a);
    }
    debug_assert_eq!(BigUint::from(out.len()), power_count(a.len(), m));
    Ok(out)
}
