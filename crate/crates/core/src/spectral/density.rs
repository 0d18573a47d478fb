//! Spectral density functions and the log-determinant as a Stieltjes integral.

use super::spectrum::Spectrum;
use crate::error::{Error, Result};
use crate::Real;

/// `F(λ) = #{eigenvalues ≤ λ} / normalization`, with the exact kernel placed at 0.
#[derive(Clone, Debug)]
pub struct SpectralDensity<T> {
    spectrum: Spectrum<T>,
}

pub fn density<T: Real>(s: &Spectrum<T>) -> SpectralDensity<T> {
    SpectralDensity {
        spectrum: s.clone(),
    }
}

impl<T: Real> SpectralDensity<T> {
    pub fn spectrum(&self) -> &Spectrum<T> {
        &self.spectrum
    }

    fn count_at_most(&self, lambda: T) -> usize {
        let retained = self.spectrum.retained();
        self.spectrum.exact_nullity() + retained.partition_point(|&x| x <= lambda)
    }

    pub fn evaluate(&self, lambda: T) -> Result<T> {
        if lambda < T::zero() || lambda.is_nan() {
            return Err(Error::Domain(format!(
                "density evaluated at negative λ = {lambda}"
            )));
        }
        Ok(
            T::lit(self.count_at_most(lambda) as f64)
                / T::lit(self.spectrum.normalization() as f64),
        )
    }
}

/// `ln(K)·(F(K) − F(0)) − ∫₀₊^K (F(λ) − F(0))/λ dλ` for the step function `F`.
///
/// The integral is taken interval by interval between consecutive retained
/// eigenvalues. The result is the normalized log-determinant of the operator
/// whose spectrum is `s`, i.e. twice [`normalized_logdet`](super::normalized_logdet).
pub fn logdet_via_density<T: Real>(s: &Spectrum<T>, k: T) -> Result<T> {
    if k < s.max() {
        return Err(Error::Domain(format!(
            "K = {k} is below the spectral radius {}",
            s.max()
        )));
    }
    let f = density(s);
    let retained = s.retained();
    if let Some(&x) = retained.first() {
        if x <= T::zero() {
            return Err(Error::IllConditioned("retained eigenvalue is zero".into()));
        }
    }
    let f0 = f.evaluate(T::zero())?;
    let fk = f.evaluate(k)?;
    let mut integral = T::zero();
    for (idx, &lo) in retained.iter().enumerate() {
        let hi = retained.get(idx + 1).copied().unwrap_or(k);
        if hi <= lo {
            continue;
        }
        // F is constant on [lo, hi)
        let height = f.evaluate(lo)? - f0;
        integral = integral + height * (hi / lo).ln();
    }
    Ok(k.ln() * (fk - f0) - integral)
}
