//! Finite-quotient approximation of L²-invariants: exact integer and rational
//! linear algebra, group-ring matrices over ℤ[ℤⁿ], spectra of pushed
//! operators, Mahler measures, chain-complex torsion and an experiment harness.
//!
//! Floating-point code is generic over [`Real`] (`f32`, `f64`); exact code
//! works with [`Integer`] and [`Rational`].

mod scalar;

pub mod densitytoolkit;
pub mod error;
pub mod exactalg;
pub mod groupring;
pub mod io;
pub mod lab;
pub mod quadrature;
pub mod spectral;
pub mod torsionlab;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type Spectrum64 = spectral::Spectrum<f64>;
pub type Spectrum32 = spectral::Spectrum<f32>;
pub type SpectralDensity64 = spectral::SpectralDensity<f64>;
pub type PiecewiseDensity64 = densitytoolkit::PiecewiseDensity<f64>;
pub type TorsionReport64 = torsionlab::TorsionReport<f64>;
