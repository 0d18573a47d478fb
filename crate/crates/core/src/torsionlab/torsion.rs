//! L²-torsion, integral torsion, regulators and Laplacian determinants of
//! finite based free ℤ-complexes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::complex::IntChainComplex;
use crate::error::{Error, Result};
use crate::exactalg::rational::{ln_abs_rational, to_q, QVector};
use crate::exactalg::{
    homology, ln_abs, rational_determinant, rational_gram_projection, IntMatrix,
};
use crate::spectral::{ln_detprime, spectrum_of_int};
use crate::Real;

fn sign(n: usize) -> i32 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ln det′(c_n)` for `n = 1..=top`.
pub fn ln_detprime_differentials<T: Real>(c: &IntChainComplex) -> Result<Vec<T>> {
    c.differentials()
        .iter()
        .map(|d| ln_detprime(&spectrum_of_int::<T>(d)?))
        .collect()
}

/// `ρ⁽²⁾ = −Σ_{n≥1} (−1)ⁿ ln det′(c_n)`.
pub fn rho2_finite<T: Real>(c: &IntChainComplex) -> Result<T> {
    let logs = ln_detprime_differentials::<T>(c)?;
    Ok(-logs.iter().enumerate().fold(T::zero(), |acc, (k, &l)| {
        acc + T::lit(sign(k + 1) as f64) * l
    }))
}

/// `|tors H_n|` for `n = 0..=top`.
pub fn torsion_orders(c: &IntChainComplex) -> Result<Vec<BigInt>> {
    (0..=c.top_degree())
        .map(|n| Ok(homology(c, n)?.group.torsion_order()))
        .collect()
}

/// `ρ^ℤ = Σ_{n≥0} (−1)ⁿ ln |tors H_n|`, with the exact orders.
pub fn integral_torsion<T: Real>(c: &IntChainComplex) -> Result<(T, Vec<BigInt>)> {
    let orders = torsion_orders(c)?;
    let value = orders.iter().enumerate().fold(T::zero(), |acc, (n, o)| {
        acc + T::lit(sign(n) as f64 * ln_abs(o))
    });
    Ok((value, orders))
}

/// Gram determinant of the harmonic projections of an integral basis of
/// `H_n(C)_f`; `1` when the free part vanishes.
pub fn regulator_gram_det(c: &IntChainComplex, n: usize) -> Result<BigRational> {
    let h = homology(c, n)?;
    if h.free_lifts.is_empty() {
        return Ok(BigRational::one());
    }
    let lifts: Vec<QVector> = h.free_lifts.iter().map(|v| to_q(v)).collect();
    let incoming = c.boundary_or_zero(n + 1);
    let gens: Vec<QVector> = (0..incoming.cols())
        .map(|j| to_q(&incoming.column(j)))
        .collect();
    let gram = rational_gram_projection(&lifts, &gens)?;
    let det = rational_determinant(&gram)?;
    if !det.is_positive() {
        return Err(Error::Singular(format!(
            "regulator Gram matrix in degree {n} has determinant {det}"
        )));
    }
    Ok(det)
}

/// `R_n = ½ ln det(Gram)`.
pub fn regulator<T: Real>(c: &IntChainComplex, n: usize) -> Result<T> {
    let det = regulator_gram_det(c, n)?;
    Ok(T::lit(0.5 * ln_abs_rational(&det)))
}

/// Combinatorial Laplacian `Δ_n = c_nᵀc_n + c_{n+1}c_{n+1}ᵀ` on `C_n`.
pub fn laplacian(c: &IntChainComplex, n: usize) -> Result<IntMatrix> {
    let down = c.boundary_or_zero(n);
    let up = c.boundary_or_zero(n + 1);
    let a = down.transpose().mul(&down)?;
    let b = up.mul(&up.transpose())?;
    let mut out = a;
    for i in 0..out.rows() {
        for j in 0..out.cols() {
            out[(i, j)] = &out[(i, j)] + &b[(i, j)];
        }
    }
    Ok(out)
}

/// Product of the nonzero eigenvalues of a symmetric integer matrix, exactly.
///
/// With `B` a maximal set of independent columns, `det′ = det(BᵀMB)/det(BᵀB)`.
pub fn exact_detprime_symmetric(m: &IntMatrix) -> Result<BigRational> {
    if m.rows() != m.cols() || m.transpose() != *m {
        return Err(Error::Shape("expected a symmetric matrix".into()));
    }
    let mut chosen: Vec<usize> = Vec::new();
    for j in 0..m.cols() {
        let mut cols: Vec<Vec<BigInt>> = chosen.iter().map(|&k| m.column(k)).collect();
        cols.push(m.column(j));
        if crate::exactalg::rank_over_q(&IntMatrix::from_columns(m.rows(), &cols)) > chosen.len() {
            chosen.push(j);
        }
    }
    if chosen.is_empty() {
        return Ok(BigRational::one());
    }
    let cols: Vec<Vec<BigInt>> = chosen.iter().map(|&k| m.column(k)).collect();
    let b = IntMatrix::from_columns(m.rows(), &cols);
    let bt = b.transpose();
    let num = crate::exactalg::determinant(&bt.mul(m)?.mul(&b)?)?;
    let den = crate::exactalg::determinant(&bt.mul(&b)?)?;
    Ok(BigRational::new(num, den))
}

/// `det′(Δ_n)` for `n = 0..=top`, exactly.
pub fn laplacian_dets_exact(c: &IntChainComplex) -> Result<Vec<BigRational>> {
    (0..=c.top_degree())
        .map(|n| exact_detprime_symmetric(&laplacian(c, n)?))
        .collect()
}

/// `det′(Δ_n)` for `n = 0..=top`. Empty for a complex with only zero modules.
pub fn laplacian_dets<T: Real>(c: &IntChainComplex) -> Result<Vec<T>> {
    if c.ranks().iter().all(|&r| r == 0) {
        return Ok(Vec::new());
    }
    Ok(laplacian_dets_exact(c)?
        .iter()
        .map(|d| T::lit(ln_abs_rational(d)).exp())
        .collect())
}

/// `−½ Σ (−1)ⁱ · i · ln det′(Δ_i)`.
pub fn rho2_from_laplacians<T: Real>(c: &IntChainComplex) -> Result<T> {
    let dets = laplacian_dets_exact(c)?;
    let s = dets.iter().enumerate().fold(0.0, |acc, (i, d)| {
        acc + sign(i) as f64 * i as f64 * ln_abs_rational(d)
    });
    Ok(T::lit(-0.5 * s))
}

/// Torsion invariants of one complex.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorsionReport<T> {
    pub rho_l2: T,
    pub rho_z: T,
    pub torsion_orders: Vec<String>,
    pub homology: Vec<String>,
    pub ln_detprime: Vec<T>,
    pub regulators: Vec<T>,
    pub laplacian_dets: Vec<T>,
    pub rho_l2_from_laplacians: T,
}

impl<T: Real> TorsionReport<T> {
    /// `Σ (−1)ⁿ R_n`.
    pub fn regulator_sum(&self) -> T {
        self.regulators
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (n, &r)| acc + T::lit(sign(n) as f64) * r)
    }

    /// `ρ^ℤ − ρ⁽²⁾ − Σ (−1)ⁿ R_n`.
    pub fn identity_defect(&self) -> T {
        self.rho_z - self.rho_l2 - self.regulator_sum()
    }
}

pub fn torsion_report<T: Real>(c: &IntChainComplex) -> Result<TorsionReport<T>> {
    let (rho_z, orders) = integral_torsion::<T>(c)?;
    let groups = (0..=c.top_degree())
        .map(|n| Ok(homology(c, n)?.group.to_string()))
        .collect::<Result<Vec<_>>>()?;
    Ok(TorsionReport {
        rho_l2: rho2_finite(c)?,
        rho_z,
        torsion_orders: orders.iter().map(|o| o.to_string()).collect(),
        homology: groups,
        ln_detprime: ln_detprime_differentials(c)?,
        regulators: (0..=c.top_degree())
            .map(|n| regulator(c, n))
            .collect::<Result<_>>()?,
        laplacian_dets: laplacian_dets(c)?,
        rho_l2_from_laplacians: rho2_from_laplacians(c)?,
    })
}
