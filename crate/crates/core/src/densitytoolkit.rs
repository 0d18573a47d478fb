//! A family of density-like functions `f_n : [0,1] → [0,1]` that converge
//! pointwise to the identity while their envelope has a divergent
//! `∫ f/λ dλ`, together with the integrals of the logarithmic bounds.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_to_infinity};
use crate::Real;

const QUAD_TOL: f64 = 1e-11;
const QUAD_LIMIT: usize = 4000;

/// `f_n` with its four breakpoints `e^{−3n} < e^{−2n} < e^{−n} < 1/n + e^{−n}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PiecewiseDensity<T> {
    n: u32,
    breakpoints: [T; 4],
}

impl<T: Real> PiecewiseDensity<T> {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("family index n = {n} < 2")));
        }
        let nf = T::lit(n as f64);
        let c = (-nf).exp();
        let breakpoints = [
            (-T::lit(3.0) * nf).exp(),
            (-T::lit(2.0) * nf).exp(),
            c,
            nf.recip() + c,
        ];
        Ok(PiecewiseDensity { n, breakpoints })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn breakpoints(&self) -> [T; 4] {
        self.breakpoints
    }

    /// Value of the linear piece at its right end, `1/(2n) + e^{−2n}`.
    fn knee(&self) -> T {
        (T::lit(2.0) * T::lit(self.n as f64)).recip() + self.breakpoints[1]
    }

    /// Slope and intercept of the linear piece on `[e^{−3n}, e^{−2n}]`.
    fn linear_piece(&self) -> (T, T) {
        let [a, b, _, _] = self.breakpoints;
        let beta = (self.knee() - a) / (b - a);
        (beta, a - beta * a)
    }

    pub fn eval(&self, lambda: T) -> Result<T> {
        if !(lambda >= T::zero() && lambda <= T::one()) {
            return Err(Error::Domain(format!("λ = {lambda} outside [0, 1]")));
        }
        let [a, b, c, d] = self.breakpoints;
        Ok(if lambda <= a {
            lambda
        } else if lambda <= b {
            let (beta, alpha) = self.linear_piece();
            alpha + beta * lambda
        } else if lambda <= c {
            (-lambda.ln()).recip() + lambda
        } else if lambda <= d {
            d
        } else {
            lambda
        })
    }

    /// Left and right limits at each breakpoint.
    pub fn one_sided_limits(&self) -> [(T, T); 4] {
        let [a, b, c, d] = self.breakpoints;
        let (beta, alpha) = self.linear_piece();
        [
            (a, alpha + beta * a),
            (alpha + beta * b, (-b.ln()).recip() + b),
            ((-c.ln()).recip() + c, d),
            (d, d),
        ]
    }

    /// `∫ f_n/λ dλ` over each of the five pieces, in closed form.
    pub fn piece_integrals(&self) -> [T; 5] {
        let [a, b, c, d] = self.breakpoints;
        let (beta, alpha) = self.linear_piece();
        let nf = T::lit(self.n as f64);
        [
            a,
            alpha * nf + beta * (b - a),
            T::LN_2() + c - b,
            d * (d / c).ln(),
            T::one() - d,
        ]
    }

    /// `∫₀₊¹ f_n(λ)/λ dλ` from the closed-form pieces.
    pub fn integral(&self) -> T {
        self.piece_integrals().into_iter().sum()
    }

    /// The same integral by adaptive quadrature in `u = ln λ`, split at the breakpoints.
    pub fn integral_by_quadrature(&self) -> Result<T> {
        let tol = T::tol(QUAD_TOL, 256.0);
        let g = |u: T| self.eval(u.exp().min(T::one())).unwrap_or(T::nan());
        let logs: Vec<T> = self.breakpoints.iter().map(|x| x.ln()).collect();
        let mut total = integrate_to_infinity(|t: T| g(-t), -logs[0], tol, QUAD_LIMIT)?;
        for w in logs.windows(2) {
            total = total + integrate(g, w[0], w[1], tol, QUAD_LIMIT)?;
        }
        Ok(total + integrate(g, logs[3], T::zero(), tol, QUAD_LIMIT)?)
    }

    /// `∫_{e^{−2n}}^{e^{−n}} (f_n(λ) − λ)/λ dλ`, which equals `ln 2` for every `n`.
    pub fn middle_excess(&self) -> T {
        let [_, b, c, _] = self.breakpoints;
        (-b.ln()).ln() - (-c.ln()).ln()
    }
}

/// `f_n(λ)`.
pub fn f_eval<T: Real>(n: u32, lambda: T) -> Result<T> {
    PiecewiseDensity::new(n)?.eval(lambda)
}

/// `∫₀₊¹ f_n(λ)/λ dλ`.
pub fn f_integral<T: Real>(n: u32) -> Result<T> {
    Ok(PiecewiseDensity::<T>::new(n)?.integral())
}

fn check_envelope_domain<T: Real>(lambda: T) -> Result<()> {
    if lambda > T::zero() && lambda <= (-T::one()).exp() {
        Ok(())
    } else {
        Err(Error::Domain(format!("λ = {lambda} outside (0, 1/e]")))
    }
}

/// `sup_n f_n(λ) = 1/(−ln λ) + λ` on `(0, 1/e]`.
pub fn sup_envelope<T: Real>(lambda: T) -> Result<T> {
    check_envelope_domain(lambda)?;
    Ok((-lambda.ln()).recip() + lambda)
}

/// `∫_ε^{1/e} envelope(λ)/λ dλ = e^{−1} − ε + ln(−ln ε)` for each `ε`.
pub fn envelope_divergence<T: Real>(eps: &[T]) -> Result<Vec<T>> {
    eps.iter()
        .map(|&e| {
            if !(e > T::zero() && e < (-T::one()).exp()) {
                return Err(Error::Domain(format!("ε = {e} outside (0, 1/e)")));
            }
            Ok((-T::one()).exp() - e + (-e.ln()).ln())
        })
        .collect()
}

/// Quadrature counterpart of [`envelope_divergence`] for a single `ε`.
pub fn envelope_divergence_by_quadrature<T: Real>(eps: T) -> Result<T> {
    if !(eps > T::zero() && eps < (-T::one()).exp()) {
        return Err(Error::Domain(format!("ε = {eps} outside (0, 1/e)")));
    }
    integrate(
        |u: T| -u.recip() + u.exp(),
        eps.ln(),
        -T::one(),
        T::tol(QUAD_TOL, 256.0),
        QUAD_LIMIT,
    )
}

fn check_log_bound<T: Real>(c: T, delta: T, eps: T) -> Result<()> {
    if !(c > T::zero()) {
        return Err(Error::Domain(format!("C = {c} must be positive")));
    }
    if !(delta > T::zero()) {
        return Err(Error::Domain(format!("δ = {delta} must be positive")));
    }
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::Domain(format!("ε = {eps} outside (0, 1)")));
    }
    Ok(())
}

/// `∫₀₊^ε C/(λ(−ln λ)^{1+δ}) dλ = (C/δ)(−ln ε)^{−δ}`.
pub fn log_bound_integral<T: Real>(c: T, delta: T, eps: T) -> Result<T> {
    check_log_bound(c, delta, eps)?;
    Ok(c / delta * (-eps.ln()).powf(-delta))
}

/// Quadrature counterpart of [`log_bound_integral`], in `t = −ln λ`.
pub fn log_bound_integral_by_quadrature<T: Real>(c: T, delta: T, eps: T) -> Result<T> {
    check_log_bound(c, delta, eps)?;
    let exponent = -(T::one() + delta);
    integrate_to_infinity(
        |t: T| c * t.powf(exponent),
        -eps.ln(),
        T::tol(QUAD_TOL, 256.0),
        QUAD_LIMIT,
    )
}

/// `∫_x^ε C/(λ(−ln λ)) dλ = C(ln(−ln x) − ln(−ln ε))` for each `x`.
pub fn divergence_of_inverse_log<T: Real>(c: T, eps: T, xs: &[T]) -> Result<Vec<T>> {
    if !(c > T::zero()) {
        return Err(Error::Domain(format!("C = {c} must be positive")));
    }
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::Domain(format!("ε = {eps} outside (0, 1)")));
    }
    let base = (-eps.ln()).ln();
    xs.iter()
        .map(|&x| {
            if !(x > T::zero() && x < eps) {
                return Err(Error::Domain(format!("x = {x} outside (0, ε)")));
            }
            Ok(c * ((-x.ln()).ln() - base))
        })
        .collect()
}

/// Quadrature counterpart of [`divergence_of_inverse_log`] for a single `x`, in `u = ln λ`.
pub fn divergence_of_inverse_log_by_quadrature<T: Real>(c: T, eps: T, x: T) -> Result<T> {
    if !(c > T::zero() && eps > T::zero() && eps < T::one() && x > T::zero() && x < eps) {
        return Err(Error::Domain(
            "arguments outside 0 < x < ε < 1, C > 0".into(),
        ));
    }
    integrate(
        |u: T| -c / u,
        x.ln(),
        eps.ln(),
        T::tol(QUAD_TOL, 256.0),
        QUAD_LIMIT,
    )
}
