//! Batteries of property checks exposed through the command line.

use std::ops::RangeInclusive;

use crate::densitytoolkit::{envelope_divergence, sup_envelope, PiecewiseDensity};
use crate::error::Result;
use crate::torsionlab::{random_complex, torsion_report, RandomComplexParams};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn log_grid(lo: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), 0.0);
    (0..=n)
        .map(|k| (a + (b - a) * k as f64 / n as f64).exp().min(1.0))
        .collect()
}

/// The properties of the `f_n` family for every `n` in `ns`.
pub fn addendum_checks(ns: RangeInclusive<u32>) -> Result<Vec<Check>> {
    let mut continuity = 0.0f64;
    let mut endpoints = true;
    let mut monotone = true;
    let mut sandwich = true;
    let mut identity_tail = true;
    let (mut int_lo, mut int_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut quad = 0.0f64;
    let mut excess = 0.0f64;
    for n in ns.clone() {
        let f = PiecewiseDensity::<f64>::new(n)?;
        for (l, r) in f.one_sided_limits() {
            continuity = continuity.max((l - r).abs());
        }
        endpoints &= f.eval(0.0)? == 0.0 && f.eval(1.0)? == 1.0;
        let [a, _, _, d] = f.breakpoints();
        let mut grid = log_grid(a * 1e-3, 4000);
        grid.extend(f.breakpoints());
        grid.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        let values = grid
            .iter()
            .map(|&x| f.eval(x))
            .collect::<Result<Vec<_>>>()?;
        monotone &= values.windows(2).all(|w| w[1] >= w[0] - 1e-12);
        for (&x, &v) in grid.iter().zip(&values) {
            if x > 0.0 && x < 1.0 {
                sandwich &= x <= v + 1e-15 && v <= 2.0 / -x.ln() + 1e-15;
            }
            if x > d {
                identity_tail &= v == x;
            }
        }
        let integral = f.integral();
        int_lo = int_lo.min(integral);
        int_hi = int_hi.max(integral);
        quad = quad.max((integral - f.integral_by_quadrature()?).abs());
        excess = excess.max((f.middle_excess() - std::f64::consts::LN_2).abs());
    }
    let lambda = (-5f64).exp();
    let best = ns
        .clone()
        .map(|n| PiecewiseDensity::<f64>::new(n)?.eval(lambda))
        .collect::<Result<Vec<_>>>()?;
    let best = best.into_iter().fold(0.0, f64::max);
    let env = sup_envelope(lambda)?;
    let eps = (-(5f64.exp())).exp();
    let div = envelope_divergence(&[eps])?[0];
    let lower = 1.0 + std::f64::consts::LN_2;
    Ok(vec![
        Check::new(
            "continuity",
            continuity <= 1e-12,
            format!("max jump {continuity:e}"),
        ),
        Check::new("endpoints", endpoints, "f(0) = 0, f(1) = 1"),
        Check::new("monotone", monotone, "non-decreasing on a log grid"),
        Check::new("sandwich", sandwich, "λ ≤ f(λ) ≤ 2/(−ln λ)"),
        Check::new(
            "identity_tail",
            identity_tail,
            "f(λ) = λ beyond 1/n + e^{−n}",
        ),
        Check::new(
            "integral_bounds",
            int_lo >= lower && int_hi <= 4.0,
            format!("integrals in [{int_lo}, {int_hi}]"),
        ),
        Check::new(
            "quadrature",
            quad <= 1e-8,
            format!("max closed-form vs quadrature gap {quad:e}"),
        ),
        Check::new(
            "middle_excess",
            excess <= 1e-12,
            format!("max deviation from ln 2 {excess:e}"),
        ),
        Check::new(
            "envelope_attained",
            !(3..=5).any(|n| ns.contains(&n)) || (best - env).abs() <= 1e-15,
            format!("max_n f_n(e^-5) = {best}, envelope {env}"),
        ),
        Check::new(
            "envelope_divergence",
            div > 5.0,
            format!("partial integral at ε = e^(−e^5): {div}"),
        ),
    ])
}

/// `|ρ^ℤ − ρ⁽²⁾ − Σ(−1)ⁿRₙ|` and the Laplacian formula on random complexes.
pub fn identity_checks(count: u64, seed: u64) -> Result<Vec<Check>> {
    let mut worst_identity = 0.0f64;
    let mut worst_laplacian = 0.0f64;
    for s in seed..seed + count {
        let c = random_complex(s, RandomComplexParams::default())?;
        let r = torsion_report::<f64>(&c)?;
        worst_identity = worst_identity.max(r.identity_defect().abs());
        worst_laplacian = worst_laplacian.max((r.rho_l2 - r.rho_l2_from_laplacians).abs());
    }
    Ok(vec![
        Check::new(
            "torsion_regulator_identity",
            worst_identity <= 1e-8,
            format!("{count} complexes, max defect {worst_identity:e}"),
        ),
        Check::new(
            "laplacian_formula",
            worst_laplacian <= 1e-8,
            format!("{count} complexes, max defect {worst_laplacian:e}"),
        ),
    ])
}
