//! Exterior powers of integer matrices via minor determinants.
//!
//! The r-th exterior power of an n x n matrix is the C(n,r) x C(n,r) matrix
//! whose (i, j) entry is the determinant of the submatrix on the i-th row
//! subset and j-th column subset, with subsets enumerated in lexicographic
//! order. That order is fixed everywhere so results are bit-reproducible.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::elim;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// The lexicographically ordered r-subsets of `{0, 1, ..., n-1}` indexing
/// the canonical basis of the r-th exterior power. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetBasis {
    n: usize,
    r: usize,
    subsets: Vec<Vec<usize>>,
}

impl SubsetBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }
}

/// All `C(n, r)` strictly increasing r-tuples in lexicographic order.
pub fn subsets_lex(n: usize, r: usize) -> Result<SubsetBasis> {
    if r > n {
        return Err(Error::InvalidArgument(format!(
            "subset size {r} exceeds ground set size {n}"
        )));
    }
    let mut subsets = Vec::with_capacity(binomial(n, r));
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        subsets.push(current.clone());
        // next combination in lexicographic order
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(SubsetBasis { n, r, subsets });
            }
            i -= 1;
            if current[i] != i + n - r {
                break;
            }
        }
        current[i] += 1;
        for j in i + 1..r {
            current[j] = current[j - 1] + 1;
        }
    }
}

pub(crate) fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial fits usize at supported sizes")
}

/// Exact determinant of the submatrix of `a` on the given zero-based row
/// and column index sets (strictly increasing, equal length).
pub fn minor(a: &IntMatrix, row_set: &[usize], col_set: &[usize]) -> Result<BigInt> {
    if row_set.len() != col_set.len() {
        return Err(Error::InvalidArgument(
            "row and column sets differ in length".into(),
        ));
    }
    validate_set(row_set, a.rows(), "row")?;
    validate_set(col_set, a.cols(), "column")?;
    let k = row_set.len();
    let mut sub = IntMatrix::zero(k, k);
    for (i, &ri) in row_set.iter().enumerate() {
        for (j, &cj) in col_set.iter().enumerate() {
            sub.set(i, j, a.get(ri, cj).clone());
        }
    }
    Ok(sub.det())
}

fn validate_set(set: &[usize], bound: usize, what: &str) -> Result<()> {
    for w in set.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidArgument(format!(
                "{what} set is not strictly increasing"
            )));
        }
    }
    if let Some(&last) = set.last() {
        if last >= bound {
            return Err(Error::InvalidArgument(format!(
                "{what} index {last} out of range 0..{bound}"
            )));
        }
    }
    Ok(())
}

/// The r-th exterior power of a square matrix. `r = 0` gives `[1]`, `r = n`
/// gives `[det a]`. Entries are computed independently and in parallel.
pub fn exterior_power(a: &IntMatrix, r: usize) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(Error::InvalidArgument(
            "exterior power needs a square matrix".into(),
        ));
    }
    let n = a.rows();
    let basis = subsets_lex(n, r)?;
    let size = basis.len();
    let subsets = basis.subsets();

    let entries: Vec<BigInt> = (0..size * size)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / size, idx % size);
            minor_unchecked(a, &subsets[i], &subsets[j])
        })
        .collect();

    IntMatrix::new(size, size, entries)
}

/// Minor without re-validating the index sets; used on basis subsets that
/// are valid by construction.
fn minor_unchecked(a: &IntMatrix, row_set: &[usize], col_set: &[usize]) -> BigInt {
    let k = row_set.len();
    let mut sub = IntMatrix::zero(k, k);
    for (i, &ri) in row_set.iter().enumerate() {
        for (j, &cj) in col_set.iter().enumerate() {
            sub.set(i, j, a.get(ri, cj).clone());
        }
    }
    elim::det(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anzai3() -> IntMatrix {
        IntMatrix::from_i64(3, 3, &[1, 1, 0, 0, 1, 1, 0, 0, 1])
    }

    #[test]
    fn subsets_3_choose_2() {
        let b = subsets_lex(3, 2).unwrap();
        assert_eq!(b.subsets(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn subsets_edge_cases() {
        assert_eq!(subsets_lex(5, 0).unwrap().subsets(), &[Vec::<usize>::new()]);
        assert_eq!(subsets_lex(4, 4).unwrap().subsets(), &[vec![0, 1, 2, 3]]);
        assert!(subsets_lex(3, 4).is_err());
    }

    #[test]
    fn minor_examples() {
        let s3 = anzai3();
        // rows {1,2}, cols {2,3} in 1-based terms
        assert_eq!(minor(&s3, &[0, 1], &[1, 2]).unwrap(), BigInt::from(1));
        assert_eq!(minor(&s3, &[], &[]).unwrap(), BigInt::from(1));
        let d = IntMatrix::from_i64(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 5]);
        assert_eq!(minor(&d, &[0, 2], &[0, 2]).unwrap(), BigInt::from(10));
        assert!(minor(&d, &[0, 3], &[0, 1]).is_err());
        assert!(minor(&d, &[1, 0], &[0, 1]).is_err());
        assert!(minor(&d, &[0], &[0, 1]).is_err());
    }

    #[test]
    fn second_power_of_anzai3() {
        let e = exterior_power(&anzai3(), 2).unwrap();
        assert_eq!(e, IntMatrix::from_i64(3, 3, &[1, 1, 1, 0, 1, 1, 0, 0, 1]));
    }

    #[test]
    fn zeroth_and_top_power() {
        let a = IntMatrix::from_i64(2, 2, &[3, 1, 4, 2]);
        assert_eq!(exterior_power(&a, 0).unwrap(), IntMatrix::from_i64(1, 1, &[1]));
        assert_eq!(exterior_power(&a, 2).unwrap(), IntMatrix::from_i64(1, 1, &[2]));
        assert_eq!(
            exterior_power(&IntMatrix::identity(4), 4).unwrap(),
            IntMatrix::from_i64(1, 1, &[1])
        );
    }

    #[test]
    fn exterior_of_identity_is_identity() {
        for r in 0..=4 {
            let e = exterior_power(&IntMatrix::identity(4), r).unwrap();
            assert!(e.is_identity());
        }
    }
}
