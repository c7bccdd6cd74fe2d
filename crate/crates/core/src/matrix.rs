//! Dense square/rectangular matrices over arbitrary-precision integers.
//!
//! `IntMatrix` is the carrier for every matrix in this crate: the input
//! automorphism, its exterior powers, and the difference matrices whose
//! kernels and cokernels the K-theory layer consumes. Entries are `BigInt`
//! because Smith-form intermediates can exceed any machine word; the
//! elimination engines downcast to `i64`/`i128` internally when the data
//! allows and fall back here losslessly on overflow.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Builds a matrix from row-major entries; `entries.len()` must equal
    /// `rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "entry count {} does not match {}x{}",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Convenience constructor for literal matrices in tests and builders.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Self {
            rows,
            cols,
            entries: entries.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self - identity`, defined for square matrices only.
    pub fn sub_identity(&self) -> Self {
        assert!(self.is_square(), "sub_identity needs a square matrix");
        let mut out = self.clone();
        for i in 0..self.rows {
            out.entries[i * self.cols + i] -= 1;
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        assert!(self.is_square(), "pow needs a square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det needs a square matrix");
        crate::elim::det(self)
    }

    /// Largest absolute entry, as a bit length; used to pick the integer
    /// width for elimination fast paths.
    pub fn max_entry_bits(&self) -> u64 {
        self.entries.iter().map(|v| v.abs().bits()).max().unwrap_or(0)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Row-per-line rendering, matching the CLI text matrix format.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = IntMatrix::from_i64(2, 2, &[1, 2, 3, 4]);
        let id = IntMatrix::identity(2);
        assert_eq!(a.mul(&id), a);
        let b = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(a.mul(&b), IntMatrix::from_i64(2, 2, &[2, 1, 4, 3]));
    }

    #[test]
    fn sub_identity_and_pow() {
        let s2 = IntMatrix::from_i64(2, 2, &[1, 1, 0, 1]);
        let n = s2.sub_identity();
        assert_eq!(n, IntMatrix::from_i64(2, 2, &[0, 1, 0, 0]));
        assert!(n.pow(2).is_zero());
        assert_eq!(s2.pow(3), IntMatrix::from_i64(2, 2, &[1, 3, 0, 1]));
    }

    #[test]
    fn new_rejects_bad_length() {
        assert!(IntMatrix::new(2, 2, vec![BigInt::zero(); 3]).is_err());
    }
}
