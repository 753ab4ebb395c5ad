//! Fixed-length words over {0, 1, 2}.
//!
//! A [`TernaryVector`] does double duty: it is an element of GF(3)^n when
//! used by the cap-set machinery, and a pattern vector in {0,1,2}^m when
//! used by the admissible-set machinery. Both views share the same
//! representation and the same lexicographic order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A fixed-length word over {0, 1, 2}.
///
/// Vectors are immutable value types with a total lexicographic order on
/// their digit sequences, so sets of vectors iterate and serialise
/// deterministically. Coordinates are numbered 1..=len in all public
/// APIs that talk about positions (supports, design blocks, CNF variables).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TernaryVector {
    digits: Vec<u8>,
}

impl TernaryVector {
    /// Builds a vector from raw digits, validating every entry.
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&d| d > 2) {
            return Err(Error::InvalidDigit {
                digit: (b'0' + bad) as char,
            });
        }
        Ok(Self { digits })
    }

    /// The all-zero vector of the given length.
    pub fn zero(len: usize) -> Self {
        Self {
            digits: vec![0; len],
        }
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// True for the (degenerate) length-0 vector.
    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Read-only view of the digit sequence.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Digit at 1-based coordinate `k`.
    pub fn digit(&self, k: usize) -> u8 {
        self.digits[k - 1]
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.digits.iter().filter(|&&d| d != 0).count()
    }

    /// The 1-based coordinates holding nonzero digits, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Componentwise sum in GF(3).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Self {
            digits: self
                .digits
                .iter()
                .zip(&other.digits)
                .map(|(a, b)| (a + b) % 3)
                .collect(),
        })
    }

    /// Componentwise additive inverse in GF(3).
    pub fn neg(&self) -> Self {
        Self {
            digits: self.digits.iter().map(|d| (3 - d) % 3).collect(),
        }
    }

    /// The unique `z` with `x + y + z = 0`, namely `-(x + y)`.
    pub fn completing(x: &Self, y: &Self) -> Result<Self> {
        Ok(x.add(y)?.neg())
    }

    /// Swaps digits 1 and 2, fixing 0.
    pub fn swap_colors(&self) -> Self {
        Self {
            digits: self
                .digits
                .iter()
                .map(|&d| match d {
                    1 => 2,
                    2 => 1,
                    _ => 0,
                })
                .collect(),
        }
    }

    /// Concatenation, used by direct products.
    pub fn concat(&self, other: &Self) -> Self {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Self { digits }
    }
}

impl fmt::Display for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t\"{self}\"")
    }
}

impl FromStr for TernaryVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => digits.push(0),
                '1' => digits.push(1),
                '2' => digits.push(2),
                _ => return Err(Error::InvalidDigit { digit: c }),
            }
        }
        Ok(Self { digits })
    }
}
