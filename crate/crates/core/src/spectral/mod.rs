//! Spectra of pushed operators, modified determinants, density functions and
//! Mahler measures.

pub mod density;
pub mod eigen;
pub mod mahler;
pub mod spectrum;

pub use density::{density, logdet_via_density, SpectralDensity};
pub use eigen::{general_eigenvalues, hermitian_eigenvalues};
pub use mahler::{
    fk_det_torus, fk_det_torus_sequence, ln_mahler, mahler, polynomial_roots, TorusEstimate,
};
pub use spectrum::{
    detprime, ln_detprime, normalized_logdet, spectrum_of, spectrum_of_int, spectrum_of_symmetric,
    vn_kernel_dim, Spectrum,
};
