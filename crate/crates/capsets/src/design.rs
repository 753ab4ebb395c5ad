//! The (6,3,2)-design seeding the six-dimensional extendable collection.
//!
//! A (6,3,2)-design is a family of 3-element blocks over 6 points in
//! which every pair of points lies in exactly 2 common blocks; here it is
//! the unique such family with 10 blocks. Its incidence matrix has every
//! pair of rows sharing exactly two 1-columns and every column summing to
//! three — exactly the combinatorics that make the weight-3 vectors on
//! the blocks combine safely with the full-weight rectangle in the
//! collection built in [`crate::construction`].
//!
//! The matrix is embedded as a constant but never trusted: accessors
//! re-validate the pairwise-intersection and column-sum properties and
//! refuse to hand out an invalid matrix.

use crate::error::{Error, Result};

/// The 10 blocks, as 1-based point triples in lexicographic order.
pub const BLOCKS: [[usize; 3]; 10] = [
    [1, 2, 3],
    [1, 2, 4],
    [1, 3, 5],
    [1, 4, 6],
    [1, 5, 6],
    [2, 3, 6],
    [2, 4, 5],
    [2, 5, 6],
    [3, 4, 5],
    [3, 4, 6],
];

/// Incidence matrix of the design: 6 rows (points), 10 columns (blocks).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DesignMatrix {
    rows: [[u8; 10]; 6],
}

impl DesignMatrix {
    /// Builds the incidence matrix from [`BLOCKS`] and re-validates the
    /// defining properties before returning it.
    pub fn new() -> Result<Self> {
        let mut rows = [[0u8; 10]; 6];
        for (col, block) in BLOCKS.iter().enumerate() {
            for &point in block {
                rows[point - 1][col] = 1;
            }
        }
        let m = DesignMatrix { rows };
        m.validate()?;
        Ok(m)
    }

    /// Checks that every pair of rows shares exactly two 1-columns and
    /// every column has exactly three 1s.
    pub fn validate(&self) -> Result<()> {
        for i in 0..6 {
            for j in i + 1..6 {
                let shared = (0..10)
                    .filter(|&c| self.rows[i][c] == 1 && self.rows[j][c] == 1)
                    .count();
                if shared != 2 {
                    return Err(Error::Domain(format!(
                        "rows {} and {} share {shared} columns, expected 2",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        for c in 0..10 {
            let sum: u8 = (0..6).map(|r| self.rows[r][c]).sum();
            if sum != 3 {
                return Err(Error::Domain(format!(
                    "column {} sums to {sum}, expected 3",
                    c + 1
                )));
            }
        }
        Ok(())
    }

    /// Entry at 1-based (row, col).
    pub fn entry(&self, row: usize, col: usize) -> u8 {
        self.rows[row - 1][col - 1]
    }

    /// The 1-based points of block `col` (1-based), ascending.
    pub fn block(&self, col: usize) -> Vec<usize> {
        (1..=6).filter(|&r| self.entry(r, col) == 1).collect()
    }
}
