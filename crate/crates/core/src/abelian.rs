//! Finitely generated abelian groups in invariant-factor presentation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z^free_rank (+) Z/t_1 (+) ... (+) Z/t_s` with `t_i | t_{i+1}` and every
/// `t_i >= 2`. This is the canonical presentation, so equality of values is
/// isomorphism of groups.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Builds a group, validating the invariant-factor chain.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, t) in torsion.iter().enumerate() {
            if *t < BigInt::from(2) {
                return Err(Error::InvalidArgument(format!(
                    "torsion factor {t} is not >= 2"
                )));
            }
            if i + 1 < torsion.len() && !(&torsion[i + 1] % t).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "torsion factors {} and {} break the divisibility chain",
                    t,
                    torsion[i + 1]
                )));
            }
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup (product of the invariant factors).
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

/// Direct sum of groups, renormalized into a single invariant-factor chain.
///
/// The merge works by repeated gcd/lcm exchanges on pairs that violate the
/// chain; each exchange preserves the isomorphism class (Chinese remainder),
/// so no factorization is needed.
pub fn normalize_direct_sum(parts: &[AbelianGroup]) -> AbelianGroup {
    let free_rank = parts.iter().map(AbelianGroup::free_rank).sum();
    let mut torsion: Vec<BigInt> = parts
        .iter()
        .flat_map(|g| g.torsion.iter().cloned())
        .collect();

    let mut stable = false;
    while !stable {
        stable = true;
        torsion.sort();
        for i in 0..torsion.len() {
            for j in i + 1..torsion.len() {
                if !(&torsion[j] % &torsion[i]).is_zero() {
                    let g = torsion[i].gcd(&torsion[j]);
                    let l = (&torsion[i] / &g) * &torsion[j];
                    torsion[i] = g;
                    torsion[j] = l;
                    stable = false;
                }
            }
        }
        torsion.retain(|t| !t.is_one());
    }
    torsion.sort();

    AbelianGroup {
        free_rank,
        torsion,
    }
}

/// Renders like `Z^13 + Z_2` / `Z` / `0`, grouping repeated torsion factors
/// as `Z_13^(14)`.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let mut count = 1;
            while i + count < self.torsion.len() && self.torsion[i + count] == *t {
                count += 1;
            }
            if count == 1 {
                parts.push(format!("Z_{t}"));
            } else {
                parts.push(format!("Z_{t}^({count})"));
            }
            i += count;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(free: usize, torsion: &[i64]) -> AbelianGroup {
        AbelianGroup::new(free, torsion.iter().map(|&t| BigInt::from(t)).collect()).unwrap()
    }

    #[test]
    fn chain_validation() {
        assert!(AbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(AbelianGroup::new(0, vec![BigInt::from(1)]).is_err());
        assert!(AbelianGroup::new(1, vec![BigInt::from(2), BigInt::from(6)]).is_ok());
    }

    #[test]
    fn crt_merge() {
        // Z_2 (+) Z_3 = Z_6
        let s = normalize_direct_sum(&[grp(0, &[2]), grp(0, &[3])]);
        assert_eq!(s, grp(0, &[6]));
    }

    #[test]
    fn z4_plus_z6() {
        // primary parts 4, 2, 3 reassemble as 2 | 12
        let s = normalize_direct_sum(&[grp(0, &[4]), grp(0, &[6])]);
        assert_eq!(s, grp(0, &[2, 12]));
    }

    #[test]
    fn free_ranks_add() {
        let s = normalize_direct_sum(&[grp(4, &[]), grp(9, &[2])]);
        assert_eq!(s, grp(13, &[2]));
    }

    #[test]
    fn torsion_order_is_preserved() {
        let parts = [grp(0, &[4, 12]), grp(1, &[6]), grp(0, &[10])];
        let s = normalize_direct_sum(&parts);
        let before: BigInt = parts.iter().map(AbelianGroup::torsion_order).product();
        assert_eq!(s.torsion_order(), before);
        // chain holds
        for w in s.torsion().windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(grp(0, &[]).to_string(), "0");
        assert_eq!(grp(1, &[]).to_string(), "Z");
        assert_eq!(grp(13, &[2]).to_string(), "Z^13 + Z_2");
        assert_eq!(grp(32, &[8, 8]).to_string(), "Z^32 + Z_8^(2)");
    }
}
