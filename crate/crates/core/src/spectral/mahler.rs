//! Mahler measure of univariate Laurent polynomials and torus quadrature of
//! `ln |p|` for several variables.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::eigen::general_eigenvalues;
use crate::error::{Error, Result};
use crate::groupring::laurent::{rational_to_real, LaurentPoly};
use crate::Real;

/// Complex roots of `Σ coeffs[i] xⁱ` (leading coefficient nonzero), from the
/// eigenvalues of the companion matrix followed by Newton refinement.
pub fn polynomial_roots<T: Real>(coeffs: &[T]) -> Result<Vec<Complex<T>>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    if lead == T::zero() {
        return Err(Error::Invalid("leading coefficient is zero".into()));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut companion = vec![zero; deg * deg];
    for j in 0..deg {
        companion[j] = Complex::new(-coeffs[deg - 1 - j] / lead, T::zero());
    }
    for i in 1..deg {
        companion[i * deg + i - 1] = Complex::new(T::one(), T::zero());
    }
    let mut roots = general_eigenvalues(&companion, deg)?;
    let p: Vec<Complex<T>> = coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect();
    for r in roots.iter_mut() {
        *r = newton_polish(&p, *r);
    }
    let tol = T::tol(1e-12, 64.0);
    for r in &roots {
        if backward_error(&p, *r) > tol {
            return Err(Error::NoConvergence(format!(
                "root {r} has residual above tolerance"
            )));
        }
    }
    Ok(roots)
}

fn horner<T: Real>(p: &[Complex<T>], x: Complex<T>) -> (Complex<T>, Complex<T>) {
    let zero = Complex::new(T::zero(), T::zero());
    let mut v = zero;
    let mut dv = zero;
    for &c in p.iter().rev() {
        dv = dv * x + v;
        v = v * x + c;
    }
    (v, dv)
}

/// `|p(x)| / Σ|cᵢ||x|ⁱ`.
fn backward_error<T: Real>(p: &[Complex<T>], x: Complex<T>) -> T {
    let (v, _) = horner(p, x);
    let r = x.norm();
    let scale = p.iter().rev().fold(T::zero(), |acc, c| acc * r + c.norm());
    if scale == T::zero() {
        T::zero()
    } else {
        v.norm() / scale
    }
}

fn newton_polish<T: Real>(p: &[Complex<T>], mut x: Complex<T>) -> Complex<T> {
    let mut best = backward_error(p, x);
    for _ in 0..50 {
        let (v, dv) = horner(p, x);
        if dv.norm() == T::zero() || v.norm() == T::zero() {
            break;
        }
        let next = x - v / dv;
        let err = backward_error(p, next);
        if !(err < best) {
            break;
        }
        best = err;
        x = next;
    }
    x
}

type QPoly = Vec<BigRational>;

fn trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn derivative(a: &[BigRational]) -> QPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer((i as i64).into()))
            .collect(),
    )
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn divmod(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut r = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let lead = b.last().expect("nonzero divisor");
    let mut q = vec![BigRational::zero(); a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let f = &r[i + b.len() - 1] / lead;
        if f.is_zero() {
            continue;
        }
        for (j, c) in b.iter().enumerate() {
            r[i + j] -= &f * c;
        }
        q[i] = f;
    }
    (trim(q), trim(r))
}

fn monic(a: QPoly) -> QPoly {
    match a.last().cloned() {
        Some(l) => a.into_iter().map(|c| c / &l).collect(),
        None => a,
    }
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    monic(x)
}

/// Yun's square-free decomposition: monic `aᵢ` with `f = lead · Π aᵢ^i`.
fn squarefree_factors(f: &[BigRational]) -> Vec<(QPoly, u32)> {
    let df = derivative(f);
    if df.is_empty() {
        return Vec::new();
    }
    let a0 = gcd(f, &df);
    let mut b = monic(divmod(f, &a0).0);
    let c = divmod(&df, &a0).0;
    let lead = f.last().expect("nonzero").clone();
    let mut d = trim(c.iter().map(|x| x / &lead).collect::<QPoly>());
    let db = derivative(&b);
    d = trim(
        (0..d.len().max(db.len()))
            .map(|i| d.get(i).cloned().unwrap_or_default() - db.get(i).cloned().unwrap_or_default())
            .collect(),
    );
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d);
        b = divmod(&b, &a).0;
        let c = divmod(&d, &a).0;
        let db = derivative(&b);
        d = trim(
            (0..c.len().max(db.len()))
                .map(|k| {
                    c.get(k).cloned().unwrap_or_default() - db.get(k).cloned().unwrap_or_default()
                })
                .collect(),
        );
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// `ln Π max(1, |aᵢ|)` over the roots, each square-free factor solved
/// separately so repeated roots stay well conditioned.
fn ln_root_excess<T: Real>(coeffs: &[BigRational]) -> Result<T> {
    let mut acc = T::zero();
    for (factor, mult) in squarefree_factors(coeffs) {
        let c: Vec<T> = factor.iter().map(rational_to_real::<T>).collect();
        let roots = polynomial_roots(&c)?;
        let s: T = roots.iter().map(|r| r.norm().max(T::one()).ln()).sum();
        acc = acc + s * T::lit(mult as f64);
    }
    Ok(acc)
}

/// `M(p) = |c|·Π max(1, |aᵢ|)` over the roots of `p` with its monomial factor
/// stripped.
pub fn mahler<T: Real>(p: &LaurentPoly) -> Result<T> {
    if p.is_zero() {
        return Err(Error::Domain(
            "Mahler measure of the zero polynomial".into(),
        ));
    }
    let (_, coeffs) = p.univariate_coeffs()?;
    let lead = coeffs.last().expect("nonzero").abs();
    Ok(rational_to_real::<T>(&lead) * ln_root_excess::<T>(&coeffs)?.exp())
}

/// `ln M(p)`, computed without forming the product.
pub fn ln_mahler<T: Real>(p: &LaurentPoly) -> Result<T> {
    if p.is_zero() {
        return Err(Error::Domain(
            "Mahler measure of the zero polynomial".into(),
        ));
    }
    let (_, coeffs) = p.univariate_coeffs()?;
    let lead = coeffs.last().expect("nonzero").abs();
    Ok(T::lit(crate::exactalg::rational::ln_abs_rational(&lead)) + ln_root_excess::<T>(&coeffs)?)
}

/// Result of a torus quadrature.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusEstimate<T> {
    pub grid: usize,
    pub value: T,
    pub skipped: usize,
}

/// `exp` of the mean of `ln|p|` over the half-shifted grid
/// `ω_k = exp(2πi(k + ½)/N)` in every coordinate.
pub fn fk_det_torus<T: Real>(p: &LaurentPoly, grid: usize) -> Result<TorusEstimate<T>> {
    if p.is_zero() {
        return Err(Error::Domain("torus integral of ln|0|".into()));
    }
    if grid < 2 {
        return Err(Error::Domain(format!("grid size {grid} < 2")));
    }
    let n = p.rank();
    let nodes: Vec<Complex<T>> = (0..grid)
        .map(|k| {
            let angle = T::TAU() * (T::lit(k as f64) + T::lit(0.5)) / T::lit(grid as f64);
            Complex::new(angle.cos(), angle.sin())
        })
        .collect();
    let total = grid
        .checked_pow(n as u32)
        .ok_or_else(|| Error::Domain("grid too large".into()))?;
    let mut idx = vec![0usize; n];
    let mut z = vec![Complex::new(T::one(), T::zero()); n];
    let mut sum = T::zero();
    let mut skipped = 0usize;
    let floor = T::lit(1e-14);
    for _ in 0..total {
        for (zi, &k) in z.iter_mut().zip(&idx) {
            *zi = nodes[k];
        }
        let v = p.eval_complex(&z).norm();
        if v < floor {
            skipped += 1;
        } else {
            sum = sum + v.ln();
        }
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < grid {
                break;
            }
            *slot = 0;
        }
    }
    if skipped * 100 > total {
        return Err(Error::Domain(format!(
            "{skipped} of {total} grid points hit zeros of p"
        )));
    }
    let mean = sum / T::lit((total - skipped) as f64);
    Ok(TorusEstimate {
        grid,
        value: mean.exp(),
        skipped,
    })
}

/// Torus estimates at `N`, `2N`, `4N`.
pub fn fk_det_torus_sequence<T: Real>(
    p: &LaurentPoly,
    grid: usize,
) -> Result<Vec<TorusEstimate<T>>> {
    [grid, 2 * grid, 4 * grid]
        .iter()
        .map(|&g| fk_det_torus(p, g))
        .collect()
}

/// Whether the coefficients are all integers (then `M(p) ≥ 1`).
pub fn has_integer_coefficients(p: &LaurentPoly) -> bool {
    p.terms().values().all(|c| c.is_integer() && !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::parse_poly;

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s, 1).unwrap()
    }

    #[test]
    fn jensen_examples() {
        assert!((mahler::<f64>(&p("z - 2")).unwrap() - 2.0).abs() < 1e-12);
        assert!((mahler::<f64>(&p("z^3")).unwrap() - 1.0).abs() < 1e-15);
        assert!((mahler::<f64>(&p("5")).unwrap() - 5.0).abs() < 1e-15);
        assert!((mahler::<f64>(&p("3*z^-2 - z^-1")).unwrap() - 3.0).abs() < 1e-12);
        assert!(mahler::<f64>(&LaurentPoly::zero(1)).is_err());
    }

    #[test]
    fn lehmer_polynomial() {
        let m = mahler::<f64>(&p("z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1")).unwrap();
        assert!((m - 1.17628).abs() < 5e-5, "{m}");
    }

    #[test]
    fn golden_ratio_from_mapping_torus() {
        let m = mahler::<f64>(&p("1 - 3*z + z^2")).unwrap();
        assert!((m - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn repeated_roots() {
        let m = mahler::<f64>(&p("(z - 1)^2 * (2*z^2 - 2*z + 3) * (2 - z)")).unwrap();
        assert!((m - 6.0).abs() < 1e-12, "{m}");
        let m = mahler::<f64>(&p("(z + 3)^4 * (z - 1)^3")).unwrap();
        assert!((m - 81.0).abs() < 1e-10, "{m}");
        let f: Vec<BigRational> = [-1i64, 1, 1, -1]
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        let fs = squarefree_factors(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(
            (fs[0].0.len(), fs[0].1, fs[1].0.len(), fs[1].1),
            (2, 1, 2, 2)
        );
    }

    #[test]
    fn single_precision() {
        let m = mahler::<f32>(&p("z - 2")).unwrap();
        assert!((m - 2.0).abs() < 1e-5);
    }

    #[test]
    fn torus_quadrature() {
        let est = fk_det_torus::<f64>(&p("z - 2"), 64).unwrap();
        assert!((est.value - 2.0).abs() < 1e-6);
        let c = fk_det_torus::<f64>(&p("5"), 8).unwrap();
        assert!((c.value - 5.0).abs() < 1e-12);
        let q = parse_poly("(z1 - 2)*(z2 - 3)", 2).unwrap();
        let est = fk_det_torus::<f64>(&q, 64).unwrap();
        let oracle = mahler::<f64>(&p("z - 2")).unwrap() * mahler::<f64>(&p("z - 3")).unwrap();
        assert!((est.value - oracle).abs() < 1e-4);
        assert!((est.value - 6.0).abs() < 1e-4);
    }

    #[test]
    fn torus_sequence_converges_to_mahler() {
        let poly = p("z^2 - z + 3");
        let seq = fk_det_torus_sequence::<f64>(&poly, 16).unwrap();
        let m = mahler::<f64>(&poly).unwrap();
        assert_eq!(
            seq.iter().map(|e| e.grid).collect::<Vec<_>>(),
            vec![16, 32, 64]
        );
        assert!((seq[2].value - m).abs() < 1e-8);
    }
}
