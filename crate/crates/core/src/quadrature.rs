//! Adaptive Gauss–Kronrod (7, 15) quadrature.

use crate::error::{Error, Result};
use crate::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = (b - a) / T::lit(2.0);
    let mid = (a + b) / T::lit(2.0);
    let fc = f(mid);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let s = f(mid - dx) + f(mid + dx);
        kronrod = kronrod + s * T::lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + s * T::lit(WG[j / 2]);
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// `∫_a^b f` to absolute tolerance `tol`, always bisecting the interval with
/// the largest error estimate, using at most `limit` subintervals.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T, limit: usize) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let tol = tol.max(T::epsilon() * T::lit(64.0));
    let (v, e) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    loop {
        let total: T = parts.iter().map(|p| p.2).sum();
        let err: T = parts.iter().map(|p| p.3).sum();
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::NoConvergence("non-finite integrand".into()));
        }
        if err <= tol.max(total.abs() * T::epsilon() * T::lit(50.0)) {
            return Ok(total);
        }
        if parts.len() >= limit {
            return Err(Error::NoConvergence(format!(
                "quadrature error {err} above {tol} after {limit} subintervals"
            )));
        }
        let worst = (0..parts.len())
            .max_by(|&i, &j| parts[i].3.partial_cmp(&parts[j].3).expect("finite"))
            .expect("nonempty");
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            return Err(Error::NoConvergence(format!(
                "interval [{lo}, {hi}] cannot be bisected further"
            )));
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// `∫_a^∞ f` through the substitution `t = a + (1 − s)/s`.
pub fn integrate_to_infinity<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    tol: T,
    limit: usize,
) -> Result<T> {
    let g = |s: T| {
        let t = a + (T::one() - s) / s;
        f(t) / (s * s)
    };
    integrate(g, T::zero(), T::one(), tol, limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = integrate(|x: f64| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12, 10).unwrap();
        assert!((v - 0.0).abs() < 1e-13);
    }

    #[test]
    fn log_singularity() {
        let v = integrate(|x: f64| x.ln(), 0.0, 1.0, 1e-10, 500).unwrap();
        assert!((v + 1.0).abs() < 1e-9);
    }

    #[test]
    fn half_line() {
        let v = integrate_to_infinity(|t: f64| (-t).exp(), 0.0, 1e-12, 500).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
        let v = integrate_to_infinity(|t: f64| 1.0 / (t * t), 1.0, 1e-12, 500).unwrap();
        assert!((v - 1.0).abs() < 1e-11);
    }

    #[test]
    fn single_precision() {
        let v = integrate(|x: f32| x.sin(), 0.0, std::f32::consts::PI, 1e-6, 20).unwrap();
        assert!((v - 2.0).abs() < 1e-5);
    }
}
