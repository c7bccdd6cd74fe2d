//! Exact K-theory of crossed products `C(T^n) x| Z`.
//!
//! Everything is computed in exact integer arithmetic: Smith normal forms
//! and ranks of the matrices `Λ^r A - I`, the K-groups they assemble into,
//! and the rank sequence `a_n` by independent combinatorial methods.

mod elim;

pub mod abelian;
pub mod error;
pub mod exterior;
pub mod matrix;
pub mod snf;

pub use abelian::{normalize_direct_sum, AbelianGroup};
pub use error::{Error, Result};
pub use exterior::{exterior_power, minor, subsets_lex, SubsetBasis};
pub use matrix::IntMatrix;
pub use snf::{cokernel, kernel_rank, rank, smith_normal_form, SmithForm};
