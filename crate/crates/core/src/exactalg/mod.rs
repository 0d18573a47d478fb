//! Exact integer and rational linear algebra.

pub mod lattice;
pub mod matrix;
pub mod rank;
pub mod rational;
pub mod snf;

pub use lattice::{
    cokernel_structure, homology, kernel_basis_saturated, FgAbelianGroup, HomologyData,
};
pub use matrix::{ln_abs, IntMatrix};
pub use rank::{determinant, is_prime, rank_over_field, rank_over_q, Field};
pub use rational::{rational_determinant, rational_gram_projection, RatMatrix};
pub use snf::{elementary_divisors, snf, SnfResult};
