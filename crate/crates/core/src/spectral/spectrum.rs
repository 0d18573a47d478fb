use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use rayon::prelude::*;

use super::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::exactalg::{rank_over_q, IntMatrix};
use crate::groupring::{exact_rank_regular, push, GroupRingMatrix, Quotient};
use crate::Real;

/// Eigenvalues of a pushed `A*A`, normalized by the quotient size.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    eigenvalues: Vec<T>,
    normalization: usize,
    exact_nullity: usize,
}

impl<T: Real> Spectrum<T> {
    /// Negative rounding noise is clamped to zero; input order is irrelevant.
    pub fn new(
        mut eigenvalues: Vec<T>,
        normalization: usize,
        exact_nullity: usize,
    ) -> Result<Self> {
        if normalization == 0 {
            return Err(Error::Invalid("normalization must be positive".into()));
        }
        if exact_nullity > eigenvalues.len() {
            return Err(Error::Invalid(format!(
                "nullity {exact_nullity} exceeds {} eigenvalues",
                eigenvalues.len()
            )));
        }
        if eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(Error::Invalid("non-finite eigenvalue".into()));
        }
        for x in eigenvalues.iter_mut() {
            if *x < T::zero() {
                *x = T::zero();
            }
        }
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        Ok(Spectrum {
            eigenvalues,
            normalization,
            exact_nullity,
        })
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }
    pub fn normalization(&self) -> usize {
        self.normalization
    }
    pub fn exact_nullity(&self) -> usize {
        self.exact_nullity
    }
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }
    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// The eigenvalues outside the exact kernel (the largest `len − nullity`).
    pub fn retained(&self) -> &[T] {
        &self.eigenvalues[self.exact_nullity..]
    }

    pub fn max(&self) -> T {
        self.eigenvalues.last().copied().unwrap_or_else(T::zero)
    }

    /// Number of columns of the underlying operator per unit of normalization.
    pub fn width(&self) -> T {
        T::lit(self.len() as f64) / T::lit(self.normalization as f64)
    }
}

fn gram_block<T: Real>(block: &[Complex<T>], rows: usize, cols: usize) -> Vec<Complex<T>> {
    let mut g = vec![Complex::new(T::zero(), T::zero()); cols * cols];
    for i in 0..cols {
        for j in i..cols {
            let mut s = Complex::new(T::zero(), T::zero());
            for k in 0..rows {
                s = s + block[k * cols + i].conj() * block[k * cols + j];
            }
            g[i * cols + j] = s;
            g[j * cols + i] = s.conj();
        }
    }
    g
}

/// Spectrum of `A*A` pushed to `q`: eigenvalues of `A_χ* A_χ` over all
/// characters, with the exact nullity of the regular representation over ℚ.
pub fn spectrum_of<T: Real>(a: &GroupRingMatrix, q: &Quotient) -> Result<Spectrum<T>> {
    let pushed = push::<T>(a, q)?;
    let (rows, cols) = (a.rows(), a.cols());
    let per_block: Vec<Vec<T>> = pushed
        .character_blocks()
        .par_iter()
        .map(|b| hermitian_eigenvalues(&gram_block(b, rows, cols), cols))
        .collect::<Result<_>>()?;
    let eigenvalues: Vec<T> = per_block.into_iter().flatten().collect();
    let rank = exact_rank_regular(a, q)?;
    let nullity = cols * q.size() - rank;
    Spectrum::new(eigenvalues, q.size(), nullity)
}

/// Spectrum of `MᵀM` for an integer matrix (normalization 1).
pub fn spectrum_of_int<T: Real>(m: &IntMatrix) -> Result<Spectrum<T>> {
    let g = m.gram();
    let n = m.cols();
    let data: Vec<Complex<T>> = g
        .to_f64()
        .into_iter()
        .map(|x| Complex::new(T::lit(x), T::zero()))
        .collect();
    let eig = hermitian_eigenvalues(&data, n)?;
    let nullity = n - rank_over_q(m);
    Spectrum::new(eig, 1, nullity)
}

/// Spectrum of a symmetric positive semidefinite integer matrix itself
/// (normalization 1), e.g. a combinatorial Laplacian.
pub fn spectrum_of_symmetric<T: Real>(m: &IntMatrix) -> Result<Spectrum<T>> {
    let n = m.rows();
    let data: Vec<Complex<T>> = m
        .to_f64()
        .into_iter()
        .map(|x| Complex::new(T::lit(x), T::zero()))
        .collect();
    let eig = hermitian_eigenvalues(&data, n)?;
    let nullity = n - rank_over_q(m);
    Spectrum::new(eig, 1, nullity)
}

const ILL_CONDITIONED: f64 = 1e-300;

/// `ln det′`: half the log-sum of the retained eigenvalues. Empty product is 1.
pub fn ln_detprime<T: Real>(s: &Spectrum<T>) -> Result<T> {
    let mut acc = T::zero();
    for &x in s.retained() {
        if x <= T::lit(ILL_CONDITIONED) {
            return Err(Error::IllConditioned(format!(
                "retained eigenvalue {x:e} is numerically zero but the exact nullity is {}",
                s.exact_nullity()
            )));
        }
        acc = acc + x.ln();
    }
    Ok(acc * T::lit(0.5))
}

/// `det′ = Π √λ` over the retained eigenvalues.
pub fn detprime<T: Real>(s: &Spectrum<T>) -> Result<T> {
    Ok(ln_detprime(s)?.exp())
}

/// `ln det′ / normalization`.
pub fn normalized_logdet<T: Real>(s: &Spectrum<T>) -> Result<T> {
    Ok(ln_detprime(s)? / T::lit(s.normalization() as f64))
}

/// Normalized kernel dimension `nullity / |Q|`, exactly.
pub fn vn_kernel_dim(a: &GroupRingMatrix, q: &Quotient) -> Result<BigRational> {
    let rank = exact_rank_regular(a, q)?;
    let nullity = a.cols() * q.size() - rank;
    Ok(BigRational::new(
        BigInt::from(nullity),
        BigInt::from(q.size()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::parse_poly;

    fn scalar(s: &str) -> GroupRingMatrix {
        GroupRingMatrix::scalar(parse_poly(s, 1).unwrap())
    }

    #[test]
    fn linear_polynomial_on_z3() {
        let s = spectrum_of::<f64>(&scalar("z - 2"), &Quotient::cyclic(3)).unwrap();
        let e = s.eigenvalues();
        assert!(
            (e[0] - 1.0).abs() < 1e-12 && (e[1] - 7.0).abs() < 1e-12 && (e[2] - 7.0).abs() < 1e-12
        );
        assert_eq!(s.exact_nullity(), 0);
        assert!((detprime(&s).unwrap() - 7.0).abs() < 1e-12);
        assert!((normalized_logdet(&s).unwrap() - 7f64.ln() / 3.0).abs() < 1e-14);
    }

    #[test]
    fn difference_operator_has_constant_kernel() {
        for n in [1u64, 4, 9] {
            let s = spectrum_of::<f64>(&scalar("z - 1"), &Quotient::cyclic(n)).unwrap();
            assert_eq!(s.exact_nullity(), 1);
            assert!(s.eigenvalues()[0].abs() < 1e-14);
        }
    }

    #[test]
    fn zero_matrix_is_all_kernel() {
        let s = spectrum_of::<f64>(&scalar("0"), &Quotient::cyclic(5)).unwrap();
        assert_eq!(s.exact_nullity(), 5);
        assert!(s.eigenvalues().iter().all(|&x| x == 0.0));
        assert_eq!(detprime(&s).unwrap(), 1.0);
        assert_eq!(normalized_logdet(&s).unwrap(), 0.0);
    }

    #[test]
    fn identity_spectrum() {
        let s = Spectrum::new(vec![1.0f64; 6], 3, 0).unwrap();
        assert_eq!(detprime(&s).unwrap(), 1.0);
    }

    #[test]
    fn ill_conditioning_reported() {
        let s = Spectrum::new(vec![0.0f64, 4.0], 1, 0).unwrap();
        assert!(matches!(detprime(&s), Err(Error::IllConditioned(_))));
    }

    #[test]
    fn worked_example_second_differential() {
        // c₂ for (a,b,k,l,g) = (2,1,3,2,5): det′ = g·√(a²+b²)·√(k²+l²)
        let c2 = IntMatrix::from_rows(&[&[30, 20], &[15, 10]]);
        let s = spectrum_of_int::<f64>(&c2).unwrap();
        assert_eq!(s.exact_nullity(), 1);
        let expected = 5.0 * 5f64.sqrt() * 13f64.sqrt();
        assert!((detprime(&s).unwrap() - expected).abs() < 1e-9);
        assert!((expected - 40.3113).abs() < 1e-4);
    }

    #[test]
    fn kernel_dimension() {
        for n in [1u64, 2, 7, 12] {
            let d = vn_kernel_dim(&scalar("z - 1"), &Quotient::cyclic(n)).unwrap();
            assert_eq!(d, BigRational::new(1.into(), (n as i64).into()));
            assert_eq!(
                vn_kernel_dim(&scalar("z - 2"), &Quotient::cyclic(n)).unwrap(),
                BigRational::from_integer(0.into())
            );
        }
        assert_eq!(
            vn_kernel_dim(&scalar("0"), &Quotient::cyclic(3)).unwrap(),
            BigRational::from_integer(1.into())
        );
    }

    #[test]
    fn kernel_dimension_counts_roots_of_unity() {
        // z⁴ − 1 vanishes at every 4th root of unity; on ℤ/n it kills gcd(n, 4) characters
        let a = scalar("z^4 - 1");
        for n in 1u64..20 {
            let d = vn_kernel_dim(&a, &Quotient::cyclic(n)).unwrap();
            let roots = (1..=n).filter(|k| (4 * k) % n == 0).count() as i64;
            assert_eq!(
                d,
                BigRational::new(roots.into(), (n as i64).into()),
                "n = {n}"
            );
        }
    }
}
