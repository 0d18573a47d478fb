//! Chain complexes over ℤ and ℤ[ℤⁿ] and their torsion invariants.
//!
//! Signs follow the defining sums literally:
//! `ρ⁽²⁾ = −Σ_{n≥1} (−1)ⁿ ln det′(c_n)` and `ρ^ℤ = Σ_{n≥0} (−1)ⁿ ln |tors H_n|`.
//! Under these conventions the golden example with `g = 5` has
//! `ρ⁽²⁾ = ρ^ℤ = −ln 5`, and `ρ^ℤ − ρ⁽²⁾ = Σ (−1)ⁿ R_n` holds in general.

pub mod complex;
pub mod examples;
pub mod random;
pub mod simplicial;
pub mod torsion;

pub use complex::{push_complex, GRChainComplex, IntChainComplex};
pub use examples::{
    mapping_torus_complex, mapping_torus_torsion, section9_complex, section9_e_complex,
    section9_middle, wang_betti,
};
pub use random::{random_complex, RandomComplexParams};
pub use simplicial::{SimplicialChains, SimplicialComplex};
pub use torsion::{
    exact_detprime_symmetric, integral_torsion, laplacian, laplacian_dets, laplacian_dets_exact,
    ln_detprime_differentials, regulator, regulator_gram_det, rho2_finite, rho2_from_laplacians,
    torsion_orders, torsion_report, TorsionReport,
};
