//! Dense eigenvalue solvers: cyclic Jacobi for Hermitian matrices and a
//! shifted complex QR iteration for general (Hessenberg-reducible) ones.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::Real;

/// Row-major square complex matrix.
pub type CMatrix<T> = Vec<Complex<T>>;

fn frobenius<T: Real>(a: &[Complex<T>]) -> T {
    a.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

fn off_diagonal<T: Real>(a: &[Complex<T>], n: usize) -> T {
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// All eigenvalues of a Hermitian matrix, ascending, with multiplicity.
pub fn hermitian_eigenvalues<T: Real>(m: &[Complex<T>], n: usize) -> Result<Vec<T>> {
    if m.len() != n * n {
        return Err(Error::Shape(format!(
            "{} entries for a {n}x{n} matrix",
            m.len()
        )));
    }
    let norm = frobenius(m);
    let mut defect = T::zero();
    for i in 0..n {
        for j in 0..n {
            defect = defect.max((m[i * n + j] - m[j * n + i].conj()).norm());
        }
    }
    if defect > T::tol(1e-12, 64.0) * norm.max(T::one()) {
        return Err(Error::NotHermitian(defect.to_f64().unwrap_or(f64::NAN)));
    }
    let mut a = m.to_vec();
    // symmetrize to remove rounding asymmetry
    for i in 0..n {
        a[i * n + i] = Complex::new(a[i * n + i].re, T::zero());
        for j in i + 1..n {
            let avg = (a[i * n + j] + a[j * n + i].conj()) * T::lit(0.5);
            a[i * n + j] = avg;
            a[j * n + i] = avg.conj();
        }
    }
    let target = T::tol(1e-13, 16.0) * norm;
    let mut sweeps = 0;
    while off_diagonal(&a, n) > target {
        sweeps += 1;
        if sweeps > 100 {
            return Err(Error::NoConvergence(format!(
                "Jacobi, {n}x{n} after 100 sweeps"
            )));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }
    let mut eig: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eig)
}

/// One Jacobi step annihilating `a[p][q]`: a diagonal phase makes the pivot
/// real, then a real plane rotation zeroes it.
fn rotate<T: Real>(a: &mut [Complex<T>], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    // D = diag(…, e^{-iφ} at q, …);  A ← Dᴴ A D
    let phase = apq / mag;
    for k in 0..n {
        a[k * n + q] = a[k * n + q] * phase.conj();
        a[q * n + k] = a[q * n + k] * phase;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let theta = (aqq - app) / (T::lit(2.0) * mag);
    let t = if theta == T::zero() {
        T::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    // columns: [p q] ← [p q]·[[c, s], [-s, c]]
    for k in 0..n {
        let kp = a[k * n + p];
        let kq = a[k * n + q];
        a[k * n + p] = kp * c - kq * s;
        a[k * n + q] = kp * s + kq * c;
    }
    // rows: [p; q] ← [[c, -s], [s, c]]·[p; q]
    for k in 0..n {
        let pk = a[p * n + k];
        let qk = a[q * n + k];
        a[p * n + k] = pk * c - qk * s;
        a[q * n + k] = pk * s + qk * c;
    }
    a[p * n + q] = Complex::new(T::zero(), T::zero());
    a[q * n + p] = Complex::new(T::zero(), T::zero());
}

/// Eigenvalues of a general complex matrix (unordered).
pub fn general_eigenvalues<T: Real>(m: &[Complex<T>], n: usize) -> Result<Vec<Complex<T>>> {
    if m.len() != n * n {
        return Err(Error::Shape(format!(
            "{} entries for a {n}x{n} matrix",
            m.len()
        )));
    }
    let mut h = m.to_vec();
    hessenberg(&mut h, n);
    hessenberg_qr(&mut h, n)
}

/// Householder reduction to upper Hessenberg form (similarity).
fn hessenberg<T: Real>(a: &mut [Complex<T>], n: usize) {
    let zero = Complex::new(T::zero(), T::zero());
    for k in 0..n.saturating_sub(2) {
        let alpha_norm: T = (k + 1..n)
            .map(|i| a[i * n + k].norm_sqr())
            .sum::<T>()
            .sqrt();
        if alpha_norm == T::zero() {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let phase = if x0.norm() == T::zero() {
            Complex::new(T::one(), T::zero())
        } else {
            x0 / x0.norm()
        };
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| a[i * n + k]).collect();
        v[0] = v[0] + phase * alpha_norm;
        let vnorm2: T = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == T::zero() {
            continue;
        }
        let two = T::lit(2.0);
        // A ← (I − 2vvᴴ/‖v‖²) A
        for j in 0..n {
            let mut s = zero;
            for (idx, vi) in v.iter().enumerate() {
                s = s + vi.conj() * a[(k + 1 + idx) * n + j];
            }
            let s = s * (two / vnorm2);
            for (idx, vi) in v.iter().enumerate() {
                a[(k + 1 + idx) * n + j] = a[(k + 1 + idx) * n + j] - *vi * s;
            }
        }
        // A ← A (I − 2vvᴴ/‖v‖²)
        for i in 0..n {
            let mut s = zero;
            for (idx, vi) in v.iter().enumerate() {
                s = s + a[i * n + k + 1 + idx] * *vi;
            }
            let s = s * (two / vnorm2);
            for (idx, vi) in v.iter().enumerate() {
                a[i * n + k + 1 + idx] = a[i * n + k + 1 + idx] - s * vi.conj();
            }
        }
        for i in k + 2..n {
            a[i * n + k] = zero;
        }
    }
}

/// Single-shift QR iteration on an upper Hessenberg matrix with Wilkinson
/// shifts and deflation from the bottom.
fn hessenberg_qr<T: Real>(h: &mut [Complex<T>], n: usize) -> Result<Vec<Complex<T>>> {
    let eps = T::epsilon();
    let mut eig = Vec::with_capacity(n);
    let mut hi = n;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        if hi == 1 {
            eig.push(h[0]);
            break;
        }
        // find the start of the active unreduced block
        let mut lo = hi - 1;
        while lo > 0 {
            let sub = h[lo * n + lo - 1].norm();
            let scale = h[lo * n + lo].norm() + h[(lo - 1) * n + lo - 1].norm();
            let scale = if scale == T::zero() { T::one() } else { scale };
            if sub <= eps * scale {
                h[lo * n + lo - 1] = Complex::new(T::zero(), T::zero());
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eig.push(h[(hi - 1) * n + hi - 1]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 100 * n.max(10) {
            return Err(Error::NoConvergence(format!(
                "QR iteration on a {n}x{n} matrix"
            )));
        }
        let a = h[(hi - 2) * n + hi - 2];
        let b = h[(hi - 2) * n + hi - 1];
        let c = h[(hi - 1) * n + hi - 2];
        let d = h[(hi - 1) * n + hi - 1];
        let mu = if iter % 11 == 10 {
            // exceptional shift
            d + Complex::new(h[(hi - 1) * n + hi - 2].norm() * T::lit(0.75), T::zero())
        } else {
            let half = T::lit(0.5);
            let tr = (a + d) * half;
            let disc = ((a - d) * (a - d) * T::lit(0.25) + b * c).sqrt();
            let (l1, l2) = (tr + disc, tr - disc);
            if (l1 - d).norm() < (l2 - d).norm() {
                l1
            } else {
                l2
            }
        };
        for k in lo..hi {
            h[k * n + k] = h[k * n + k] - mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi - 1 {
            let x = h[k * n + k];
            let y = h[(k + 1) * n + k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if r == T::zero() {
                (
                    Complex::new(T::one(), T::zero()),
                    Complex::new(T::zero(), T::zero()),
                )
            } else {
                (x / r, y / r)
            };
            for j in k..hi {
                let u = h[k * n + j];
                let v = h[(k + 1) * n + j];
                h[k * n + j] = cs.conj() * u + sn.conj() * v;
                h[(k + 1) * n + j] = -sn * u + cs * v;
            }
            rots.push((cs, sn));
        }
        for (idx, (cs, sn)) in rots.into_iter().enumerate() {
            let k = lo + idx;
            for i in lo..(k + 2).min(hi) {
                let u = h[i * n + k];
                let v = h[i * n + k + 1];
                h[i * n + k] = u * cs + v * sn;
                h[i * n + k + 1] = -u * sn.conj() + v * cs.conj();
            }
        }
        for k in lo..hi {
            h[k * n + k] = h[k * n + k] + mu;
        }
    }
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(v: &[f64]) -> Vec<Complex<f64>> {
        v.iter().map(|&x| Complex::new(x, 0.0)).collect()
    }

    #[test]
    fn hermitian_examples() {
        assert_eq!(
            hermitian_eigenvalues(&real(&[0.0, 0.0, 0.0, 4.0]), 2).unwrap(),
            vec![0.0, 4.0]
        );
        let e = hermitian_eigenvalues(&real(&[2.0, 1.0, 1.0, 2.0]), 2).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
        assert_eq!(hermitian_eigenvalues(&real(&[7.0]), 1).unwrap(), vec![7.0]);
    }

    #[test]
    fn complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let m = vec![
            Complex::new(2.0, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(0.0, -1.0),
            Complex::new(2.0, 0.0),
        ];
        let e = hermitian_eigenvalues::<f64>(&m, 2).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn non_hermitian_rejected() {
        assert!(matches!(
            hermitian_eigenvalues(&real(&[1.0, 2.0, 0.0, 1.0]), 2),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn single_precision_instantiation() {
        let m: Vec<Complex<f32>> = [2.0f32, 1.0, 1.0, 2.0]
            .iter()
            .map(|&x| Complex::new(x, 0.0))
            .collect();
        let e = hermitian_eigenvalues(&m, 2).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-5 && (e[1] - 3.0).abs() < 1e-5);
    }

    #[test]
    fn general_eigenvalues_of_rotation_and_companion() {
        // rotation by 90°: eigenvalues ±i
        let m = real(&[0.0, -1.0, 1.0, 0.0]);
        let mut e = general_eigenvalues(&m, 2).unwrap();
        e.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((e[0] - Complex::new(0.0, -1.0)).norm() < 1e-14);
        assert!((e[1] - Complex::new(0.0, 1.0)).norm() < 1e-14);
        // companion of (x-1)(x-2)(x-3) = x³ - 6x² + 11x - 6
        let c = real(&[6.0, -11.0, 6.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let mut e = general_eigenvalues(&c, 3).unwrap();
        e.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (z, t) in e.iter().zip([1.0, 2.0, 3.0]) {
            assert!((z - t).norm() < 1e-10, "{z}");
        }
    }

    proptest! {
        #[test]
        fn jacobi_preserves_trace_and_frobenius(vals in prop::collection::vec(-5.0f64..5.0, 32)) {
            let n = 4;
            let mut m = vec![Complex::new(0.0, 0.0); n * n];
            let mut it = vals.iter();
            for i in 0..n {
                m[i * n + i] = Complex::new(*it.next().unwrap(), 0.0);
                for j in i + 1..n {
                    let z = Complex::new(*it.next().unwrap(), *it.next().unwrap());
                    m[i * n + j] = z;
                    m[j * n + i] = z.conj();
                }
            }
            let e = hermitian_eigenvalues(&m, n).unwrap();
            let tr: f64 = (0..n).map(|i| m[i * n + i].re).sum();
            let fro: f64 = m.iter().map(|z| z.norm_sqr()).sum();
            prop_assert!((e.iter().sum::<f64>() - tr).abs() < 1e-10);
            prop_assert!((e.iter().map(|x| x * x).sum::<f64>() - fro).abs() < 1e-9);
            // and agree with the general solver
            let mut g: Vec<f64> = general_eigenvalues(&m, n).unwrap().iter().map(|z| z.re).collect();
            g.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in e.iter().zip(&g) {
                prop_assert!((a - b).abs() < 1e-8);
            }
        }
    }
}
