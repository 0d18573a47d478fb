//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use l2lab::densitytoolkit::{
    envelope_divergence, log_bound_integral, log_bound_integral_by_quadrature, PiecewiseDensity,
};
use l2lab::exactalg::{homology, snf, Field, IntMatrix};
use l2lab::groupring::cyclotomic::cyclotomic_poly;
use l2lab::groupring::{parse_poly, push, trace_pushed, GroupRingMatrix, LaurentPoly, Quotient};
use l2lab::lab::{run_mapping_torus, RunOptions};
use l2lab::spectral::{
    general_eigenvalues, logdet_via_density, mahler, normalized_logdet, spectrum_of, vn_kernel_dim,
    Spectrum,
};
use l2lab::torsionlab::{
    integral_torsion, push_complex, random_complex, regulator_gram_det, rho2_finite,
    section9_complex, section9_e_complex, torsion_orders, torsion_report, wang_betti,
    RandomComplexParams, SimplicialComplex,
};
use l2lab::{Integer, Rational};
use num_complex::Complex;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(a: f64, b: f64, tol: f64, what: &str) -> Result<(), String> {
    ensure(
        (a - b).abs() <= tol,
        format!("{what}: {a} vs {b} (tolerance {tol:e})"),
    )
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn lehmer() -> LaurentPoly {
    parse_poly("z^10 + z^9 - z^7 - z^6 - z^5 - z^4 - z^3 + z + 1", 1).unwrap()
}

fn golden_example() -> Outcome {
    let start = Instant::now();
    let (a, b, k, l, g) = (2i64, 1, 3, 2, 5);
    let c = section9_complex(a, b, k, l, g).map_err(|e| e.to_string())?;
    let groups: Vec<String> = (0..4)
        .map(|n| homology(&c, n).unwrap().group.to_string())
        .collect();
    ensure(
        groups == ["0", "Z/5", "0", "0"],
        format!("homology {groups:?}"),
    )?;
    let r = torsion_report::<f64>(&c).map_err(|e| e.to_string())?;
    let (ab, kl, gf) = ((a * a + b * b) as f64, (k * k + l * l) as f64, g as f64);
    let expect_ln = [
        ab.ln() / 2.0,
        gf.ln() + (ab.ln() + kl.ln()) / 2.0,
        kl.ln() / 2.0,
    ];
    for (i, (x, y)) in r.ln_detprime.iter().zip(expect_ln).enumerate() {
        close(*x, y, 1e-9, &format!("ln det' c_{}", i + 1))?;
    }
    let g2 = gf * gf;
    let expect_lap = [ab, ab * ab * g2 * kl, ab * g2 * kl * kl, kl];
    ensure(
        expect_lap == [5.0, 8125.0, 21125.0, 13.0],
        "closed-form Laplacian values",
    )?;
    for (i, (x, y)) in r.laplacian_dets.iter().zip(expect_lap).enumerate() {
        close(*x, y, 1e-9, &format!("det' Δ_{i}"))?;
    }
    close(r.rho_l2, -5f64.ln(), 1e-9, "rho_l2")?;
    close(r.rho_z, -5f64.ln(), 1e-9, "rho_z")?;
    within(start, Duration::from_secs(1), "golden example")?;
    Ok(format!("rho_l2 = rho_z = {:.12}", r.rho_l2))
}

fn torsion_identity() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..100 {
        let c = random_complex(
            seed,
            RandomComplexParams {
                max_rank: 8,
                max_entry: 5,
            },
        )
        .map_err(|e| e.to_string())?;
        let r = torsion_report::<f64>(&c).map_err(|e| e.to_string())?;
        worst = worst.max(r.identity_defect().abs());
    }
    ensure(worst <= 1e-8, format!("max defect {worst:e}"))?;
    within(start, Duration::from_secs(30), "100 random complexes")?;
    Ok(format!("100 complexes, max defect {worst:e}"))
}

fn circle_regulators() -> Outcome {
    let s = SimplicialComplex::polygon(3).map_err(|e| e.to_string())?;
    let c = s.chains().map_err(|e| e.to_string())?.complex;
    let r1 = regulator_gram_det(&c, 1).map_err(|e| e.to_string())?;
    let r0 = regulator_gram_det(&c, 0).map_err(|e| e.to_string())?;
    let three = Rational::from_integer(Integer::from(3));
    ensure(r1 == three, format!("e^(2 R_1) = {r1}"))?;
    ensure(r0 == three.recip(), format!("e^(2 R_0) = {r0}"))?;
    Ok(format!("e^(2 R_1) = {r1}, e^(2 R_0) = {r0}"))
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let deg = rng.gen_range(0..=6);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
    if c[deg] == 0 {
        c[deg] = 1;
    }
    LaurentPoly::from_coeffs(&c)
}

fn mahler_measures() -> Outcome {
    close(
        mahler::<f64>(&parse_poly("z - 2", 1).unwrap()).unwrap(),
        2.0,
        1e-10,
        "M(z - 2)",
    )?;
    let ml = mahler::<f64>(&lehmer()).unwrap();
    close(ml, 1.17628, 5e-5, "M(Lehmer)")?;
    for d in 1..=12u64 {
        let coeffs: Vec<i64> = cyclotomic_poly(d)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        let m = mahler::<f64>(&LaurentPoly::from_coeffs(&coeffs)).map_err(|e| e.to_string())?;
        close(m, 1.0, 1e-10, &format!("M(Φ_{d})"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (p, q) = (random_poly(&mut rng), random_poly(&mut rng));
        let (mp, mq) = (mahler::<f64>(&p).unwrap(), mahler::<f64>(&q).unwrap());
        let mpq = mahler::<f64>(&p.mul(&q).unwrap()).unwrap();
        worst = worst.max((mpq - mp * mq).abs() / mpq);
    }
    ensure(
        worst <= 1e-9,
        format!("multiplicativity relative defect {worst:e}"),
    )?;
    Ok(format!(
        "M(Lehmer) = {ml:.8}, multiplicativity defect {worst:e}"
    ))
}

fn det_approximation() -> Outcome {
    let start = Instant::now();
    let a = GroupRingMatrix::scalar(parse_poly("z - 2", 1).unwrap());
    let mut last = 0.0;
    for n in 1..=30u64 {
        let q = Quotient::cyclic(n);
        let value = normalized_logdet(&spectrum_of::<f64>(&a, &q).unwrap()).unwrap();
        let reg = push::<f64>(&a, &q).unwrap().regular_rep_int().unwrap();
        let det: Integer = snf(&reg).diagonal.iter().product::<Integer>();
        let expected = Integer::from(2).pow(n as u32) - Integer::one();
        ensure(
            det.magnitude() == expected.magnitude(),
            format!("n = {n}: SNF determinant {det}"),
        )?;
        let exact = ((2f64).powi(n as i32) - 1.0).ln() / n as f64;
        close(value, exact, 1e-12, &format!("n = {n}"))?;
        last = value;
    }
    close(last, std::f64::consts::LN_2, 1e-6, "n = 30 vs ln 2")?;
    let l = GroupRingMatrix::scalar(lehmer());
    let v512 = normalized_logdet(&spectrum_of::<f64>(&l, &Quotient::cyclic(512)).unwrap()).unwrap();
    close(v512, 1.17628f64.ln(), 1e-2, "Lehmer at n = 512")?;
    within(start, Duration::from_secs(120), "determinant approximation")?;
    Ok(format!(
        "z - 2 at n = 30: {last:.10}; Lehmer at n = 512: {v512:.6}"
    ))
}

fn torsion_growth() -> Outcome {
    let m = IntMatrix::from_rows(&[&[2, 1], &[1, 1]]);
    let report = run_mapping_torus(&m, 40, Field::Rationals, RunOptions::default())
        .map_err(|e| e.to_string())?;
    let logs = report.column_f64("ln_torsion_normalized").unwrap();
    let data: Vec<Complex<f64>> = m
        .to_f64()
        .into_iter()
        .map(|x| Complex::new(x, 0.0))
        .collect();
    let eig = general_eigenvalues(&data, 2).unwrap();
    for (d, value) in (1..=40).zip(&logs) {
        let oracle: f64 = eig
            .iter()
            .map(|l| (Complex::new(1.0, 0.0) - l.powi(d)).norm().ln())
            .sum::<f64>()
            / d as f64;
        close(
            *value,
            oracle,
            1e-9,
            &format!("d = {d} vs eigenvalue product"),
        )?;
    }
    let limit = ((3.0 + 5f64.sqrt()) / 2.0).ln();
    close(logs[39], limit, 1e-3, "d = 40 vs ln((3+√5)/2)")?;
    Ok(format!("d = 40: {:.12}, limit {limit:.12}", logs[39]))
}

fn failure_case() -> Outcome {
    let e = section9_e_complex(2, 1, 3, 2, 5).map_err(|e| e.to_string())?;
    let (ln5, ln13) = (5f64.ln(), 13f64.ln());
    let l2_expected = ln5 + (ln5 + ln13) / 2.0;
    for n in 1..=20u64 {
        let c = push_complex(&e, &Quotient::cyclic(n)).map_err(|e| e.to_string())?;
        let orders = torsion_orders(&c).unwrap();
        let prod: Integer = orders.iter().product();
        ensure(
            prod == Integer::from(5).pow(n as u32),
            format!("n = {n}: torsion orders {orders:?}"),
        )?;
        let (rz, _) = integral_torsion::<f64>(&c).unwrap();
        close(rz / n as f64, ln5, 1e-12, &format!("rho_z / n at n = {n}"))?;
        let rl2 = rho2_finite::<f64>(&c).unwrap();
        close(
            rl2 / n as f64,
            l2_expected,
            1e-9,
            &format!("rho_l2 / n at n = {n}"),
        )?;
    }
    Ok(format!(
        "rho_z/n = ln 5, rho_l2/n = {l2_expected:.12} for n ≤ 20"
    ))
}

fn density_toolkit() -> Outcome {
    let lower = 1.0 + std::f64::consts::LN_2;
    let mut worst_jump = 0.0f64;
    let mut worst_quad = 0.0f64;
    for n in 2..=60 {
        let f = PiecewiseDensity::<f64>::new(n).unwrap();
        for (l, r) in f.one_sided_limits() {
            worst_jump = worst_jump.max((l - r).abs());
        }
        let v = f.integral();
        ensure(v >= lower && v <= 4.0, format!("n = {n}: integral {v}"))?;
        worst_quad = worst_quad.max((v - f.integral_by_quadrature().unwrap()).abs());
    }
    ensure(worst_jump <= 1e-12, format!("continuity {worst_jump:e}"))?;
    ensure(
        worst_quad <= 1e-8,
        format!("closed form vs quadrature {worst_quad:e}"),
    )?;
    let mut worst_log = 0.0f64;
    for c in [0.5, 1.0, 3.0] {
        for delta in [0.5, 1.0, 2.0] {
            for eps in [(-1f64).exp(), 0.1, 1e-3] {
                let a = log_bound_integral(c, delta, eps).unwrap();
                let b =
                    log_bound_integral_by_quadrature(c, delta, eps).map_err(|e| e.to_string())?;
                worst_log = worst_log.max((a - b).abs());
            }
        }
    }
    ensure(
        worst_log <= 1e-8,
        format!("log bound vs quadrature {worst_log:e}"),
    )?;
    let eps = (-(5f64.exp())).exp();
    let div = envelope_divergence(&[eps]).unwrap()[0];
    ensure(div > 5.0, format!("envelope partial integral {div}"))?;
    Ok(format!(
        "jump {worst_jump:e}, quadrature gaps {worst_quad:e} / {worst_log:e}, envelope {div:.6}"
    ))
}

fn spectral_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let len = rng.gen_range(1..=30);
        let nullity = rng.gen_range(0..=len / 3);
        let normalization = rng.gen_range(1..=len);
        let mut eig: Vec<f64> = (0..len - nullity)
            .map(|_| rng.gen_range(-10.0f64..5.0).exp())
            .collect();
        eig.extend(std::iter::repeat_n(0.0, nullity));
        let s = Spectrum::new(eig.clone(), normalization, nullity).unwrap();
        let k = s.max() * rng.gen_range(1.0..3.0);
        let via = logdet_via_density(&s, k).unwrap();
        let direct: f64 = eig
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|x| x.ln())
            .sum::<f64>()
            / normalization as f64;
        worst = worst.max((via - direct).abs());
        worst = worst.max((via - 2.0 * normalized_logdet(&s).unwrap()).abs());
    }
    ensure(worst <= 1e-10, format!("max gap {worst:e}"))?;
    Ok(format!("100 spectra, max gap {worst:e}"))
}

fn random_gr_matrix(rng: &mut ChaCha8Rng, size: usize) -> GroupRingMatrix {
    let entries = (0..size * size)
        .map(|_| {
            let shift = rng.gen_range(-2..=0);
            let coeffs: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            let mut p = LaurentPoly::zero(1);
            for (e, c) in coeffs.iter().enumerate() {
                p.add_term(vec![shift + e as i64], Rational::from_integer((*c).into()));
            }
            p
        })
        .collect();
    GroupRingMatrix::new(1, size, size, entries).unwrap()
}

fn trace_convergence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut checked = 0;
    for t in 0..20 {
        let a = random_gr_matrix(&mut rng, 1 + t % 2);
        let b = a.gram();
        for j in 1..=3u32 {
            let bj = b.pow(j).unwrap();
            let vn = bj.trace_vn().unwrap();
            let radius = bj.support_radius();
            for n in (2 * radius + 1)..=(2 * radius + 6) {
                let pushed =
                    trace_pushed(&push::<f64>(&bj, &Quotient::cyclic(n)).unwrap()).unwrap();
                ensure(
                    pushed == vn,
                    format!("matrix {t}, j = {j}, n = {n}: {pushed} vs {vn}"),
                )?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} pushed traces equal the group-ring trace"
    ))
}

fn betti_approximation() -> Outcome {
    let a = GroupRingMatrix::scalar(parse_poly("z - 1", 1).unwrap());
    for n in 1..=1024u64 {
        let d = vn_kernel_dim(&a, &Quotient::cyclic(n)).unwrap();
        ensure(
            d == Rational::new(1.into(), (n as i64).into()),
            format!("n = {n}: {d}"),
        )?;
    }
    let id = IntMatrix::identity(2);
    ensure(
        wang_betti(&id, 1, Field::Rationals, 1).unwrap() == 3,
        "b_1 of the 3-torus",
    )?;
    let mats = [
        id,
        IntMatrix::from_rows(&[&[2, 1], &[1, 1]]),
        IntMatrix::from_rows(&[&[0, -1], &[1, 0]]),
    ];
    for m in &mats {
        for d in 1..=6 {
            for field in [Field::Rationals, Field::prime(5).unwrap()] {
                ensure(wang_betti(m, d, field, 0).unwrap() == 1, "b_0")?;
                ensure(wang_betti(m, d, field, 3).unwrap() == 1, "b_3")?;
            }
        }
    }
    Ok("vn_kernel_dim(z - 1, Z/n) = 1/n for n ≤ 1024; b_1(T^3) = 3".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("golden example", golden_example),
        ("torsion-regulator identity", torsion_identity),
        ("circle regulators", circle_regulators),
        ("Mahler measures", mahler_measures),
        ("determinant approximation", det_approximation),
        ("torsion growth of mapping tori", torsion_growth),
        ("non-L2-acyclic failure case", failure_case),
        ("density toolkit", density_toolkit),
        ("spectral density identity", spectral_identity),
        ("trace convergence", trace_convergence),
        ("Betti approximation", betti_approximation),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({t:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({t:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
