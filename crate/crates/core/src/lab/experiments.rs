//! Sweeps over towers of quotients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::report::{Cell, ExperimentReport, LimitReference, ReportRow};
use super::tower::{TowerSpec, DEFAULT_MAX_SIZE};
use crate::error::{Error, Result};
use crate::exactalg::rank::rank_mod_p;
use crate::exactalg::{ln_abs, Field, IntMatrix};
use crate::groupring::{push, trace_pushed, GroupRingMatrix, LaurentPoly, Quotient};
use crate::spectral::{ln_detprime, ln_mahler, normalized_logdet, spectrum_of, vn_kernel_dim};
use crate::torsionlab::{
    integral_torsion, mapping_torus_complex, mapping_torus_torsion, push_complex, wang_betti,
    GRChainComplex,
};

/// Mahler measure of Lehmer's polynomial as printed in the literature (5 decimals).
pub const LEHMER_MAHLER: f64 = 1.17628;

const LEHMER: [i64; 11] = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub max_size: usize,
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_size: DEFAULT_MAX_SIZE,
            parallel: true,
        }
    }
}

fn sweep<I, F>(items: Vec<I>, parallel: bool, f: F) -> Result<Vec<ReportRow>>
where
    I: Send + Sync,
    F: Fn(&I) -> Result<ReportRow> + Send + Sync,
{
    if parallel {
        items.par_iter().map(&f).collect()
    } else {
        items.iter().map(&f).collect()
    }
}

fn rational_cell(q: &BigRational) -> Cell {
    Cell::Text(q.to_string())
}

fn rational_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Whether `p` is `±zᵏ·L(z)` for Lehmer's polynomial `L`.
pub fn is_lehmer(p: &LaurentPoly) -> bool {
    let Ok((_, coeffs)) = p.univariate_coeffs() else {
        return false;
    };
    if coeffs.len() != LEHMER.len() {
        return false;
    }
    let sign = if coeffs[0] == BigRational::from_integer(1.into()) {
        1
    } else {
        -1
    };
    coeffs
        .iter()
        .zip(LEHMER)
        .all(|(c, l)| *c == BigRational::from_integer(BigInt::from(sign * l)))
}

/// `ln M(det A)` for a square matrix over ℚ[ℤ] with nonzero determinant.
fn det_limit(a: &GroupRingMatrix) -> LimitReference {
    if a.ambient_rank() != 1 || a.rows() != a.cols() || a.rows() == 0 {
        return LimitReference::none();
    }
    let Ok(det) = a.determinant() else {
        return LimitReference::none();
    };
    if det.is_zero() {
        return LimitReference::none();
    }
    if is_lehmer(&det) {
        return LimitReference {
            value: Some(LEHMER_MAHLER.ln()),
            source: "lehmer-constant".into(),
        };
    }
    match ln_mahler::<f64>(&det) {
        Ok(v) => LimitReference {
            value: Some(v),
            source: "mahler".into(),
        },
        Err(_) => LimitReference::none(),
    }
}

/// Per index: `ln det′(A pushed to Q)/|Q|` and the exact nullity.
pub fn run_det_approx(
    a: &GroupRingMatrix,
    tower: &TowerSpec,
    opts: RunOptions,
) -> Result<ExperimentReport> {
    let qs = tower.quotients(a.ambient_rank(), opts.max_size)?;
    let rows = sweep(qs, opts.parallel, |(i, q)| {
        log::info!("det-approx index {i}, |Q| = {}", q.size());
        let s = spectrum_of::<f64>(a, q)?;
        Ok(ReportRow {
            index: *i,
            quotient_size: q.size(),
            values: vec![
                Cell::Real(normalized_logdet(&s)?),
                Cell::Text(s.exact_nullity().to_string()),
            ],
        })
    })?;
    Ok(ExperimentReport::new(
        "det-approx",
        &["normalized_logdet", "exact_nullity"],
        rows,
        det_limit(a),
    ))
}

/// Per index: the normalized kernel dimension over ℚ (exact) and, for a
/// prime field, over `F_p`.
pub fn run_betti_approx(
    a: &GroupRingMatrix,
    tower: &TowerSpec,
    field: Field,
    opts: RunOptions,
) -> Result<ExperimentReport> {
    let qs = tower.quotients(a.ambient_rank(), opts.max_size)?;
    let rows = sweep(qs, opts.parallel, |(i, q)| {
        log::info!("betti-approx index {i}, |Q| = {}", q.size());
        let dim = vn_kernel_dim(a, q)?;
        let mut values = vec![Cell::Real(rational_f64(&dim)), rational_cell(&dim)];
        if let Field::Prime(p) = field {
            let reg = push::<f64>(a, q)?.regular_rep_int()?;
            let nullity = reg.cols() - rank_mod_p(&reg, p);
            let d = BigRational::new(nullity.into(), q.size().into());
            values.push(Cell::Real(rational_f64(&d)));
            values.push(rational_cell(&d));
        }
        Ok(ReportRow {
            index: *i,
            quotient_size: q.size(),
            values,
        })
    })?;
    let columns: &[&str] = match field {
        Field::Rationals => &["vn_kernel_dim", "vn_kernel_dim_exact"],
        Field::Prime(_) => &[
            "vn_kernel_dim",
            "vn_kernel_dim_exact",
            "kernel_dim_fp",
            "kernel_dim_fp_exact",
        ],
    };
    Ok(ExperimentReport::new(
        "betti-approx",
        columns,
        rows,
        LimitReference::none(),
    ))
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `ρ⁽²⁾` of `C ⊗ ℤ[Q]`, from the character spectra of the differentials.
pub fn rho2_pushed(c: &GRChainComplex, q: &Quotient) -> Result<f64> {
    let mut total = 0.0;
    for (k, d) in c.differentials().iter().enumerate() {
        total += sign(k + 1) * ln_detprime(&spectrum_of::<f64>(d, q)?)?;
    }
    Ok(-total)
}

/// Per index: `ρ^ℤ/|Q|`, `ρ⁽²⁾/|Q|` of the pushed complex and their difference.
pub fn run_torsion_growth(
    c: &GRChainComplex,
    tower: &TowerSpec,
    opts: RunOptions,
) -> Result<ExperimentReport> {
    if c.ambient_rank() != 1 {
        return Err(Error::Domain(format!(
            "torsion growth over Z^{} is not supported",
            c.ambient_rank()
        )));
    }
    let qs = tower.quotients(1, opts.max_size)?;
    let rows = sweep(qs, opts.parallel, |(i, q)| {
        log::info!("torsion-growth index {i}, |Q| = {}", q.size());
        let n = q.size() as f64;
        let (rz, _) = integral_torsion::<f64>(&push_complex(c, q)?)?;
        let rl2 = rho2_pushed(c, q)?;
        Ok(ReportRow {
            index: *i,
            quotient_size: q.size(),
            values: vec![
                Cell::Real(rz / n),
                Cell::Real(rl2 / n),
                Cell::Real((rz - rl2) / n),
            ],
        })
    })?;
    let limit = match c.differentials() {
        [d] => det_limit(d),
        _ => LimitReference::none(),
    };
    Ok(ExperimentReport::new(
        "torsion-growth",
        &["rho_z_normalized", "rho_l2_normalized", "difference"],
        rows,
        limit,
    ))
}

/// Per index and `j ≤ degree`: `tr(B^j)` over the group ring and the trace of
/// `B^j` pushed to the quotient, where `B = A*A`.
pub fn run_trace_approx(
    a: &GroupRingMatrix,
    tower: &TowerSpec,
    degree: u32,
    opts: RunOptions,
) -> Result<ExperimentReport> {
    let b = a.gram();
    let powers = (0..=degree).map(|j| b.pow(j)).collect::<Result<Vec<_>>>()?;
    let vn = powers
        .iter()
        .map(|p| p.trace_vn())
        .collect::<Result<Vec<_>>>()?;
    let qs = tower.quotients(a.ambient_rank(), opts.max_size)?;
    let rows = sweep(qs, opts.parallel, |(i, q)| {
        let mut values = Vec::new();
        for (p, t) in powers.iter().zip(&vn) {
            values.push(rational_cell(t));
            values.push(rational_cell(&trace_pushed(&push::<f64>(p, q)?)?));
        }
        Ok(ReportRow {
            index: *i,
            quotient_size: q.size(),
            values,
        })
    })?;
    let names: Vec<String> = (0..=degree)
        .flat_map(|j| [format!("trace_vn_{j}"), format!("trace_pushed_{j}")])
        .collect();
    let columns: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(ExperimentReport::new(
        "trace-approx",
        &columns,
        rows,
        LimitReference::none(),
    ))
}

/// Per `d ≤ d_max`: Betti numbers of the mapping torus of `M^d` divided by
/// `d`, `|tors coker(I − M^d)|` and its log divided by `d`.
pub fn run_mapping_torus(
    m: &IntMatrix,
    d_max: u32,
    field: Field,
    opts: RunOptions,
) -> Result<ExperimentReport> {
    let c = mapping_torus_complex(m)?;
    let ds: Vec<u32> = (1..=d_max).collect();
    let rows = sweep(ds, opts.parallel, |&d| {
        let mut values = Vec::new();
        for degree in 0..4 {
            values.push(Cell::Real(
                wang_betti(m, d, field, degree)? as f64 / d as f64,
            ));
        }
        let t = mapping_torus_torsion(m, d)?;
        values.push(Cell::Text(t.to_string()));
        values.push(Cell::Real(ln_abs(&t) / d as f64));
        Ok(ReportRow {
            index: d as usize,
            quotient_size: d as usize,
            values,
        })
    })?;
    Ok(ExperimentReport::new(
        "mapping-torus",
        &[
            "b0_normalized",
            "b1_normalized",
            "b2_normalized",
            "b3_normalized",
            "torsion_order",
            "ln_torsion_normalized",
        ],
        rows,
        det_limit(&c.differentials()[0]),
    ))
}
