//! Smith normal form over the integers.
//!
//! The elimination picks as pivot a nonzero entry of least absolute value in
//! the remaining block and clears its row and column with euclidean
//! gcd-reduction steps; a final pass enforces the divisibility chain by
//! gcd/lcm fix-up of adjacent diagonal pairs. Invariant factors are unique,
//! so any correct variant produces the same `diag`.
//!
//! When transforms are requested, `left * original * right = diag` holds
//! exactly and both transforms have determinant +-1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abelian::AbelianGroup;
use crate::elim::{self, Elem, ElimResult, Grid, Overflow};
use crate::matrix::IntMatrix;

/// Diagonal invariant factors `d_1 | d_2 | ... | d_r` (then zeros), plus
/// optional unimodular transforms certifying the equivalence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonnegative diagonal of length `min(rows, cols)`; entries beyond the
    /// rank are zero.
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub left_transform: Option<IntMatrix>,
    pub right_transform: Option<IntMatrix>,
}

impl SmithForm {
    /// Diagonal rebuilt as a full matrix of the original shape.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zero(rows, cols);
        for (i, v) in self.diag.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }
}

struct Work<T> {
    m: Grid<T>,
    left: Option<Grid<T>>,
    right: Option<Grid<T>>,
}

impl<T: Elem> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(u) = &mut self.left {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(v) = &mut self.right {
            v.swap_cols(a, b);
        }
    }

    fn row_axpy(&mut self, dst: usize, src: usize, q: &T) -> ElimResult<()> {
        self.m.row_axpy(dst, src, q)?;
        if let Some(u) = &mut self.left {
            u.row_axpy(dst, src, q)?;
        }
        Ok(())
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: &T) -> ElimResult<()> {
        self.m.col_axpy(dst, src, q)?;
        if let Some(v) = &mut self.right {
            v.col_axpy(dst, src, q)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> ElimResult<()> {
        self.m.negate_row(i)?;
        if let Some(u) = &mut self.left {
            u.negate_row(i)?;
        }
        Ok(())
    }

    /// Replace rows/cols `i, i+1` of `diag(a, b)` by `diag(g, lcm)` using the
    /// Bezout identity `g = u*a + v*b`:
    ///
    /// ```text
    /// [u      v  ]   [a 0]   [1  -v*b/g]   [g   0  ]
    /// [-b/g  a/g] * [0 b] * [1   u*a/g] = [0 ab/g]
    /// ```
    fn chain_fixup(&mut self, i: usize) -> ElimResult<()> {
        let a = self.m.at(i, i).clone();
        let b = self.m.at(i + 1, i + 1).clone();
        let (g, u, v) = a.extended_gcd(&b);
        let bg = b.div_exact(&g);
        let ag = a.div_exact(&g);
        let lcm = a.checked_mul(&bg).ok_or(Overflow)?;

        self.m.set(i, i, g.clone());
        self.m.set(i + 1, i + 1, lcm);

        if let Some(l) = &mut self.left {
            apply_left_2x2(l, i, &u, &v, &bg.checked_neg().ok_or(Overflow)?, &ag)?;
        }
        if let Some(r) = &mut self.right {
            let vb = v.checked_mul(&bg).ok_or(Overflow)?;
            let ua = u.checked_mul(&ag).ok_or(Overflow)?;
            apply_right_2x2(r, i, &T::one(), &vb.checked_neg().ok_or(Overflow)?, &T::one(), &ua)?;
        }
        Ok(())
    }
}

/// `rows (i, i+1) of l <- [[a, b], [c, d]] * rows (i, i+1) of l`.
fn apply_left_2x2<T: Elem>(l: &mut Grid<T>, i: usize, a: &T, b: &T, c: &T, d: &T) -> ElimResult<()> {
    for j in 0..l.cols {
        let x = l.at(i, j).clone();
        let y = l.at(i + 1, j).clone();
        let top = a
            .checked_mul(&x)
            .and_then(|p| b.checked_mul(&y).and_then(|q| p.checked_add(&q)))
            .ok_or(Overflow)?;
        let bot = c
            .checked_mul(&x)
            .and_then(|p| d.checked_mul(&y).and_then(|q| p.checked_add(&q)))
            .ok_or(Overflow)?;
        l.set(i, j, top);
        l.set(i + 1, j, bot);
    }
    Ok(())
}

/// `cols (i, i+1) of r <- cols (i, i+1) of r * [[a, b], [c, d]]`.
fn apply_right_2x2<T: Elem>(r: &mut Grid<T>, i: usize, a: &T, b: &T, c: &T, d: &T) -> ElimResult<()> {
    for row in 0..r.rows {
        let x = r.at(row, i).clone();
        let y = r.at(row, i + 1).clone();
        let leftc = x
            .checked_mul(a)
            .and_then(|p| y.checked_mul(c).and_then(|q| p.checked_add(&q)))
            .ok_or(Overflow)?;
        let rightc = x
            .checked_mul(b)
            .and_then(|p| y.checked_mul(d).and_then(|q| p.checked_add(&q)))
            .ok_or(Overflow)?;
        r.set(row, i, leftc);
        r.set(row, i + 1, rightc);
    }
    Ok(())
}

fn snf_engine<T: Elem>(m: Grid<T>, want_transforms: bool) -> ElimResult<(Vec<T>, usize, Option<Grid<T>>, Option<Grid<T>>)> {
    let (rows, cols) = (m.rows, m.cols);
    let mut w = Work {
        left: want_transforms.then(|| Grid::<T>::identity(rows)),
        right: want_transforms.then(|| Grid::<T>::identity(cols)),
        m,
    };
    let n = rows.min(cols);
    let mut rank = 0;

    for k in 0..n {
        // Bring a least-|value| pivot to (k, k) and clear its row/column;
        // each pass strictly shrinks the pivot, so this terminates.
        let cleared = loop {
            let Some((pi, pj)) = elim::find_pivot(&w.m, k) else {
                break false;
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            let mut renewed = false;
            for i in k + 1..rows {
                if w.m.at(i, k).is_zero() {
                    continue;
                }
                let q = w.m.at(i, k).div_trunc(w.m.at(k, k));
                if !q.is_zero() {
                    w.row_axpy(i, k, &q)?;
                }
                if !w.m.at(i, k).is_zero() {
                    renewed = true; // strictly smaller remainder exists below
                }
            }
            if renewed {
                continue;
            }
            for j in k + 1..cols {
                if w.m.at(k, j).is_zero() {
                    continue;
                }
                let q = w.m.at(k, j).div_trunc(w.m.at(k, k));
                if !q.is_zero() {
                    w.col_axpy(j, k, &q)?;
                }
                if !w.m.at(k, j).is_zero() {
                    renewed = true;
                }
            }
            if !renewed {
                break true;
            }
        };
        if !cleared {
            break;
        }
        if w.m.at(k, k).is_negative() {
            w.negate_row(k)?;
        }
        rank = k + 1;
    }

    // Divisibility chain fix-up on adjacent diagonal pairs.
    let mut stable = false;
    while !stable {
        stable = true;
        for i in 0..rank.saturating_sub(1) {
            let a = w.m.at(i, i);
            let b = w.m.at(i + 1, i + 1);
            if !b.is_multiple_of(a) {
                w.chain_fixup(i)?;
                stable = false;
            }
        }
    }

    let diag = (0..n).map(|i| w.m.at(i, i).clone()).collect();
    Ok((diag, rank, w.left, w.right))
}

/// Smith normal form of an arbitrary integer matrix.
///
/// Total: defined for every matrix including the zero matrix. The diagonal
/// satisfies `d_i >= 1` and `d_i | d_{i+1}` for `i < rank`, zeros afterward.
pub fn smith_normal_form(m: &IntMatrix, want_transforms: bool) -> SmithForm {
    fn run<T: Elem>(m: &IntMatrix, want: bool) -> Option<SmithForm> {
        let g = Grid::<T>::from_matrix(m)?;
        let (diag, rank, left, right) = snf_engine(g, want).ok()?;
        Some(SmithForm {
            diag: diag.iter().map(Elem::to_bigint).collect(),
            rank,
            left_transform: left.map(|g| g.to_matrix()),
            right_transform: right.map(|g| g.to_matrix()),
        })
    }
    run::<i64>(m, want_transforms)
        .or_else(|| run::<i128>(m, want_transforms))
        .or_else(|| run::<BigInt>(m, want_transforms))
        .expect("BigInt run is total")
}

/// Rank over the rationals, fraction-free, without building the Smith form.
pub fn rank(m: &IntMatrix) -> usize {
    elim::rank(m)
}

/// Cokernel `Z^k / im(m)` of a square matrix, as a finitely generated
/// abelian group in invariant-factor presentation.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    assert!(m.is_square(), "cokernel needs a square matrix");
    let snf = smith_normal_form(m, false);
    let torsion: Vec<BigInt> = snf
        .diag
        .iter()
        .filter(|d| !Zero::is_zero(*d) && !One::is_one(*d))
        .cloned()
        .collect();
    AbelianGroup::new(m.rows() - snf.rank, torsion).expect("smith diagonal is a valid chain")
}

/// Rank of the kernel of a square matrix; equals `cokernel(m).free_rank`.
pub fn kernel_rank(m: &IntMatrix) -> usize {
    assert!(m.is_square(), "kernel_rank needs a square matrix");
    m.rows() - rank(m)
}

/// True when `left * m * right` equals the diagonal matrix of `diag` and
/// both transforms are unimodular. Used by tests and the property suite.
pub fn verify_transforms(m: &IntMatrix, snf: &SmithForm) -> bool {
    let (Some(l), Some(r)) = (&snf.left_transform, &snf.right_transform) else {
        return false;
    };
    if l.det().abs() != <BigInt as One>::one() || r.det().abs() != <BigInt as One>::one() {
        return false;
    }
    l.mul(m).mul(r) == snf.diagonal_matrix(m.rows(), m.cols())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: usize, c: usize, e: &[i64]) -> IntMatrix {
        IntMatrix::from_i64(r, c, e)
    }

    fn diag_i64(s: &SmithForm) -> Vec<i64> {
        s.diag.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn nilpotent_shift_block() {
        let a = m(3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
        let s = smith_normal_form(&a, true);
        assert_eq!(diag_i64(&s), vec![1, 1, 0]);
        assert_eq!(s.rank, 2);
        assert!(verify_transforms(&a, &s));
    }

    #[test]
    fn zero_matrix() {
        let s = smith_normal_form(&IntMatrix::zero(2, 2), true);
        assert_eq!(diag_i64(&s), vec![0, 0]);
        assert_eq!(s.rank, 0);
        assert!(verify_transforms(&IntMatrix::zero(2, 2), &s));
    }

    #[test]
    fn diag_2_3_normalizes_to_1_6() {
        let a = m(2, 2, &[2, 0, 0, 3]);
        let s = smith_normal_form(&a, true);
        assert_eq!(diag_i64(&s), vec![1, 6]);
        assert!(verify_transforms(&a, &s));
    }

    #[test]
    fn cokernel_identity_is_trivial() {
        let g = cokernel(&IntMatrix::identity(5));
        assert_eq!(g.free_rank(), 0);
        assert!(g.torsion().is_empty());
    }

    #[test]
    fn kernel_rank_matches_cokernel_free_rank() {
        let mats = [
            m(3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]),
            m(2, 2, &[2, 0, 0, 3]),
            m(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]),
            IntMatrix::zero(4, 4),
        ];
        for a in &mats {
            assert_eq!(kernel_rank(a), cokernel(a).free_rank());
        }
    }

    #[test]
    fn rectangular_smith() {
        let a = m(2, 3, &[2, 4, 4, -6, 6, 12]);
        let s = smith_normal_form(&a, true);
        assert_eq!(diag_i64(&s), vec![2, 6]);
        assert!(verify_transforms(&a, &s));
    }
}
