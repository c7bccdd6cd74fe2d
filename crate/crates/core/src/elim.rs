//! Exact elimination engines shared by the determinant, rank, and Smith
//! normal form paths.
//!
//! All engines are generic over [`Elem`], which is implemented for `i64`,
//! `i128`, and `BigInt`. The machine-word instances use checked arithmetic
//! throughout and signal `Overflow`; drivers then retry one level up the
//! ladder, ending at `BigInt` which cannot overflow. Results are therefore
//! exact regardless of which level completed the computation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// Raised by a machine-word engine when an intermediate leaves the
/// representable range; the caller retries with a wider element type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type ElimResult<T> = Result<T, Overflow>;

/// Integer element a la carte: just the operations elimination needs
/// beyond the standard `Zero`/`One` arithmetic traits.
pub(crate) trait Elem: Clone + PartialEq + Sized + Zero + One {
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn checked_neg(&self) -> Option<Self>;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    /// Truncated quotient; `other` must be nonzero.
    fn div_trunc(&self, other: &Self) -> Self;
    /// Exact quotient; callers guarantee divisibility.
    fn div_exact(&self, other: &Self) -> Self;
    fn is_multiple_of(&self, other: &Self) -> bool;
    /// Extended gcd: returns `(g, u, v)` with `g = u*self + v*other`, `g >= 0`.
    fn extended_gcd(&self, other: &Self) -> (Self, Self, Self);
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

macro_rules! impl_elem_machine {
    ($t:ty) => {
        impl Elem for $t {
            fn is_unit(&self) -> bool {
                *self == 1 || *self == -1
            }
            fn is_negative(&self) -> bool {
                *self < 0
            }
            fn checked_neg(&self) -> Option<Self> {
                <$t>::checked_neg(*self)
            }
            fn cmp_abs(&self, other: &Self) -> Ordering {
                self.unsigned_abs().cmp(&other.unsigned_abs())
            }
            fn checked_mul(&self, other: &Self) -> Option<Self> {
                <$t>::checked_mul(*self, *other)
            }
            fn checked_sub(&self, other: &Self) -> Option<Self> {
                <$t>::checked_sub(*self, *other)
            }
            fn checked_add(&self, other: &Self) -> Option<Self> {
                <$t>::checked_add(*self, *other)
            }
            fn div_trunc(&self, other: &Self) -> Self {
                self / other
            }
            fn div_exact(&self, other: &Self) -> Self {
                debug_assert_eq!(self % other, 0, "inexact division in elimination");
                self / other
            }
            fn is_multiple_of(&self, other: &Self) -> bool {
                self % other == 0
            }
            fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
                let e = Integer::extended_gcd(self, other);
                (e.gcd, e.x, e.y)
            }
            fn from_bigint(v: &BigInt) -> Option<Self> {
                // MIN is excluded so negation stays total after conversion.
                match <$t>::try_from(v) {
                    Ok(x) if x != <$t>::MIN => Some(x),
                    _ => None,
                }
            }
            fn to_bigint(&self) -> BigInt {
                BigInt::from(*self)
            }
        }
    };
}

impl_elem_machine!(i64);
impl_elem_machine!(i128);

impl Elem for BigInt {
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.abs().cmp(&other.abs())
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn div_trunc(&self, other: &Self) -> Self {
        self / other
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(Elem::is_multiple_of(self, other), "inexact division in elimination");
        self / other
    }
    fn is_multiple_of(&self, other: &Self) -> bool {
        Zero::is_zero(&(self % other))
    }
    fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let e = Integer::extended_gcd(self, other);
        (e.gcd, e.x, e.y)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Row-major working grid for the generic engines.
#[derive(Clone)]
pub(crate) struct Grid<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Elem> Grid<T> {
    pub fn from_matrix(m: &IntMatrix) -> Option<Self> {
        let data: Option<Vec<T>> = m.entries().iter().map(T::from_bigint).collect();
        Some(Self {
            rows: m.rows(),
            cols: m.cols(),
            data: data?,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Self { rows: n, cols: n, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) -> ElimResult<()> {
        for j in 0..self.cols {
            let v = self.at(i, j).checked_neg().ok_or(Overflow)?;
            self.set(i, j, v);
        }
        Ok(())
    }

    /// `row[dst] -= q * row[src]`, checked.
    pub fn row_axpy(&mut self, dst: usize, src: usize, q: &T) -> ElimResult<()> {
        for j in 0..self.cols {
            if self.at(src, j).is_zero() {
                continue;
            }
            let t = q.checked_mul(self.at(src, j)).ok_or(Overflow)?;
            let v = self.at(dst, j).checked_sub(&t).ok_or(Overflow)?;
            self.set(dst, j, v);
        }
        Ok(())
    }

    /// `col[dst] -= q * col[src]`, checked.
    pub fn col_axpy(&mut self, dst: usize, src: usize, q: &T) -> ElimResult<()> {
        for i in 0..self.rows {
            if self.at(i, src).is_zero() {
                continue;
            }
            let t = q.checked_mul(self.at(i, src)).ok_or(Overflow)?;
            let v = self.at(i, dst).checked_sub(&t).ok_or(Overflow)?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(Elem::to_bigint).collect(),
        )
        .expect("grid dimensions are consistent")
    }
}

/// Pivot choice for the Smith/rank engines: least nonzero absolute value in
/// the trailing block, ties broken toward sparser rows and columns to limit
/// fill-in. One O(block) sweep for the counts, one for the choice.
pub(crate) fn find_pivot<T: Elem>(g: &Grid<T>, k: usize) -> Option<(usize, usize)> {
    let mut row_nnz = vec![0usize; g.rows];
    let mut col_nnz = vec![0usize; g.cols];
    let mut min_at: Option<(usize, usize)> = None;
    for i in k..g.rows {
        for j in k..g.cols {
            let v = g.at(i, j);
            if v.is_zero() {
                continue;
            }
            row_nnz[i] += 1;
            col_nnz[j] += 1;
            let replace = match min_at {
                None => true,
                Some((bi, bj)) => v.cmp_abs(g.at(bi, bj)) == Ordering::Less,
            };
            if replace {
                min_at = Some((i, j));
            }
        }
    }
    let (mi, mj) = min_at?;
    let mut best = (mi, mj);
    let mut best_fill = (row_nnz[mi] - 1) * (col_nnz[mj] - 1);
    for i in k..g.rows {
        if row_nnz[i] == 0 {
            continue;
        }
        for j in k..g.cols {
            let v = g.at(i, j);
            if v.is_zero() || v.cmp_abs(g.at(mi, mj)) != Ordering::Equal {
                continue;
            }
            let fill = (row_nnz[i] - 1) * (col_nnz[j] - 1);
            if fill < best_fill {
                best = (i, j);
                best_fill = fill;
            }
        }
    }
    Some(best)
}

/// Fraction-free (Bareiss) determinant. Row swaps only; division by the
/// previous pivot is exact by the Sylvester identity.
pub(crate) fn det_bareiss<T: Elem>(mut g: Grid<T>) -> ElimResult<T> {
    assert_eq!(g.rows, g.cols, "determinant of a non-square grid");
    let n = g.rows;
    if n == 0 {
        return Ok(T::one());
    }
    let mut sign_neg = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if g.at(k, k).is_zero() {
            match (k + 1..n).find(|&i| !g.at(i, k).is_zero()) {
                Some(i) => {
                    g.swap_rows(k, i);
                    sign_neg = !sign_neg;
                }
                None => return Ok(T::zero()),
            }
        }
        let piv = g.at(k, k).clone();
        for i in k + 1..n {
            let mik = g.at(i, k).clone();
            for j in k + 1..n {
                let a = g.at(i, j).checked_mul(&piv).ok_or(Overflow)?;
                let b = mik.checked_mul(g.at(k, j)).ok_or(Overflow)?;
                let v = a.checked_sub(&b).ok_or(Overflow)?.div_exact(&prev);
                g.set(i, j, v);
            }
            g.set(i, k, T::zero());
        }
        prev = piv;
    }
    let d = g.at(n - 1, n - 1).clone();
    Ok(if sign_neg {
        d.checked_neg().ok_or(Overflow)?
    } else {
        d
    })
}

/// Rank by fraction-free elimination with full pivoting.
pub(crate) fn rank_bareiss<T: Elem>(mut g: Grid<T>) -> ElimResult<usize> {
    let n = g.rows.min(g.cols);
    let mut prev = T::one();
    let mut rank = 0;
    for k in 0..n {
        let Some((pi, pj)) = find_pivot(&g, k) else {
            break;
        };
        g.swap_rows(k, pi);
        g.swap_cols(k, pj);
        let piv = g.at(k, k).clone();
        for i in k + 1..g.rows {
            let mik = g.at(i, k).clone();
            for j in k + 1..g.cols {
                let a = g.at(i, j).checked_mul(&piv).ok_or(Overflow)?;
                let b = mik.checked_mul(g.at(k, j)).ok_or(Overflow)?;
                let v = a.checked_sub(&b).ok_or(Overflow)?.div_exact(&prev);
                g.set(i, j, v);
            }
            g.set(i, k, T::zero());
        }
        prev = piv;
        rank = k + 1;
    }
    Ok(rank)
}

/// Rank by integer row echelon: euclidean reduction within each pivot
/// column, full-width row operations, no cross-block rescaling. Exact like
/// the Bareiss path; on the sparse nilpotent matrices of the K-theory layer
/// it touches far fewer entries.
pub(crate) fn rank_echelon<T: Elem>(mut g: Grid<T>) -> ElimResult<usize> {
    let mut rank = 0;
    for col in 0..g.cols {
        if rank == g.rows {
            break;
        }
        loop {
            let mut piv: Option<usize> = None;
            for i in rank..g.rows {
                if g.at(i, col).is_zero() {
                    continue;
                }
                piv = match piv {
                    Some(p) if g.at(p, col).cmp_abs(g.at(i, col)) != Ordering::Greater => Some(p),
                    _ => Some(i),
                };
            }
            let Some(p) = piv else {
                break;
            };
            g.swap_rows(rank, p);
            let mut residual = false;
            for i in rank + 1..g.rows {
                if g.at(i, col).is_zero() {
                    continue;
                }
                let q = g.at(i, col).div_trunc(g.at(rank, col));
                if !q.is_zero() {
                    g.row_axpy(i, rank, &q)?;
                }
                if !g.at(i, col).is_zero() {
                    residual = true;
                }
            }
            if !residual {
                rank += 1;
                break;
            }
        }
    }
    Ok(rank)
}

/// Exact determinant of an integer matrix (ladder: i64, i128, BigInt).
pub(crate) fn det(m: &IntMatrix) -> BigInt {
    if let Some(g) = Grid::<i64>::from_matrix(m) {
        if let Ok(d) = det_bareiss(g) {
            return d.to_bigint();
        }
    }
    if let Some(g) = Grid::<i128>::from_matrix(m) {
        if let Ok(d) = det_bareiss(g) {
            return d.to_bigint();
        }
    }
    let g = Grid::<BigInt>::from_matrix(m).expect("BigInt conversion is total");
    det_bareiss(g).expect("BigInt elimination cannot overflow")
}

/// Rank over the rationals by integer-echelon elimination (same ladder).
pub(crate) fn rank(m: &IntMatrix) -> usize {
    if let Some(g) = Grid::<i64>::from_matrix(m) {
        if let Ok(r) = rank_echelon(g) {
            return r;
        }
    }
    if let Some(g) = Grid::<i128>::from_matrix(m) {
        if let Ok(r) = rank_echelon(g) {
            return r;
        }
    }
    let g = Grid::<BigInt>::from_matrix(m).expect("BigInt conversion is total");
    rank_echelon(g).expect("BigInt elimination cannot overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: usize, c: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(r, c, e)
    }

    #[test]
    fn det_small() {
        assert_eq!(det(&m(2, 2, &[1, 2, 3, 4])), BigInt::from(-2));
        assert_eq!(det(&m(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 5])), BigInt::from(30));
        assert_eq!(det(&m(1, 1, &[7])), BigInt::from(7));
        assert_eq!(det(&IntMatrix::identity(4)), BigInt::from(1));
        assert_eq!(det(&m(2, 2, &[0, 1, 1, 0])), BigInt::from(-1));
        assert_eq!(det(&m(3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0])), BigInt::from(0));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&IntMatrix::identity(4)), 4);
        assert_eq!(rank(&m(3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0])), 2);
        assert_eq!(rank(&IntMatrix::zero(3, 3)), 0);
        assert_eq!(rank(&m(2, 3, &[1, 2, 3, 2, 4, 6])), 1);
    }

    #[test]
    fn rank_paths_agree() {
        let mats = [
            m(3, 3, &[0, 1, 1, 0, 0, 1, 0, 0, 0]),
            m(4, 4, &[2, 4, 0, -3, 1, 1, 1, 1, 0, 0, 0, 0, 5, -1, 2, 2]),
            m(3, 4, &[1, 0, 2, -1, 3, 1, 0, 0, 4, 1, 2, -1]),
            m(4, 3, &[1, 0, 2, -1, 3, 1, 0, 0, 4, 1, 2, -1]),
        ];
        for mat in &mats {
            let g64 = Grid::<i64>::from_matrix(mat).unwrap();
            let a = rank_bareiss(g64.clone()).unwrap();
            let b = rank_echelon(g64).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, rank(mat));
        }
    }

    #[test]
    fn ladder_falls_back_on_big_entries() {
        let big = BigInt::from(1i64 << 62) * BigInt::from(1i64 << 62);
        let mat = IntMatrix::new(
            2,
            2,
            vec![big.clone(), BigInt::from(1), BigInt::from(-1), big.clone()],
        )
        .unwrap();
        assert_eq!(det(&mat), &big * &big + 1);
        assert_eq!(rank(&mat), 2);
    }
}
