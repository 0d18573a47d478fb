//! Exact ranks of pushed matrices over ℚ.
//!
//! `ℚ[Q] ≅ ⊕ ℚ(ζ_d)`, one summand per Galois orbit of characters of `Q`, where
//! `d` is the order of the character. The regular representation of a pushed
//! matrix therefore has `ℚ`-rank `Σ_orbits φ(d) · rank_{ℚ(ζ_d)}(A_χ)`, which is
//! computed here with exact arithmetic in `ℚ[x]/Φ_d(x)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::GroupRingMatrix;
use super::quotient::{gcd, Quotient};
use crate::error::{Error, Result};

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Coefficients of `Φ_d`, lowest degree first.
pub fn cyclotomic_poly(d: u64) -> Vec<BigInt> {
    assert!(d >= 1);
    // Φ_d = Π_{e | d} (x^e − 1)^{μ(d/e)}
    let mut num: Vec<BigInt> = vec![BigInt::one()];
    let mut dens: Vec<u64> = Vec::new();
    for e in 1..=d {
        if !d.is_multiple_of(e) {
            continue;
        }
        match mobius(d / e) {
            1 => {
                let mut out = vec![BigInt::zero(); num.len() + e as usize];
                for (i, c) in num.iter().enumerate() {
                    out[i + e as usize] += c;
                    out[i] -= c;
                }
                num = out;
            }
            -1 => dens.push(e),
            _ => {}
        }
    }
    for e in dens {
        // divide by x^e − 1: q_i = q_{i-e} − n_i  (from the bottom)
        let e = e as usize;
        let qlen = num.len() - e;
        let mut q = vec![BigInt::zero(); qlen];
        for i in 0..qlen {
            let prev = if i >= e {
                q[i - e].clone()
            } else {
                BigInt::zero()
            };
            q[i] = prev - &num[i];
        }
        num = q;
    }
    num
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The field `ℚ(ζ_d) = ℚ[x]/Φ_d`.
struct CyclotomicField {
    modulus: Poly,
    degree: usize,
}

impl CyclotomicField {
    fn new(d: u64) -> Self {
        let modulus: Poly = cyclotomic_poly(d)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let degree = modulus.len() - 1;
        CyclotomicField { modulus, degree }
    }

    /// Reduce modulo the monic `Φ_d`, touching only its nonzero coefficients.
    fn reduce(&self, mut p: Poly) -> Poly {
        let support: Vec<(usize, &BigRational)> = self.modulus[..self.degree]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        while p.len() > self.degree {
            let top = p.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - self.degree;
            for &(i, c) in &support {
                p[shift + i] -= &top * c;
            }
        }
        trim(&mut p);
        p
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.reduce(out)
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = a.clone();
        if out.len() < b.len() {
            out.resize(b.len(), BigRational::zero());
        }
        for (x, y) in out.iter_mut().zip(b) {
            *x -= y;
        }
        trim(&mut out);
        out
    }

    /// Inverse by the extended Euclidean algorithm over ℚ[x].
    fn inv(&self, a: &Poly) -> Poly {
        let (mut r0, mut r1) = (self.modulus.clone(), a.clone());
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let qt = poly_mul(&q, &t1);
            let t2 = self.sub(&t0, &qt);
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // r1 is a nonzero constant since Φ_d is irreducible
        let c = r1[0].recip();
        let scaled: Poly = t1.iter().map(|x| x * &c).collect();
        self.reduce(scaled)
    }

    /// Rank of a row-major matrix over the field.
    fn rank(&self, rows: usize, cols: usize, mut a: Vec<Poly>) -> usize {
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_empty()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    a.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = self.inv(&a[rank * cols + c]);
            for i in rank + 1..rows {
                if a[i * cols + c].is_empty() {
                    continue;
                }
                let f = self.mul(&a[i * cols + c], &inv);
                for j in c..cols {
                    let t = self.mul(&f, &a[rank * cols + j]);
                    a[i * cols + j] = self.sub(&a[i * cols + j], &t);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &r[i + b.len() - 1] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// Order of the character with residue vector `k`, and the integer weights
/// `w` with `⟨k, e⟩ = Σ wᵢ·eᵢ / d (mod 1)`.
fn character_order(q: &Quotient, k: &[u64]) -> (u64, Vec<u64>) {
    let mut d = 1u128;
    let mut reduced = Vec::with_capacity(k.len());
    for (&ki, &m) in k.iter().zip(q.moduli()) {
        let g = gcd(ki as u128, m as u128);
        let ord = m as u128 / g;
        reduced.push((ki as u128 / g, ord));
        d = super::quotient::lcm(d, ord);
    }
    let weights = reduced
        .iter()
        .map(|&(num, ord)| ((num * (d / ord)) % d) as u64)
        .collect();
    (d as u64, weights)
}

/// Exact `ℚ`-rank of the regular representation of `a` pushed to `q`.
pub fn exact_rank_regular(a: &GroupRingMatrix, q: &Quotient) -> Result<usize> {
    if q.rank() != a.ambient_rank() {
        return Err(Error::Dimension(format!(
            "quotient of rank {} for a matrix over Z^{}",
            q.rank(),
            a.ambient_rank()
        )));
    }
    let size = q.size();
    let mut visited = vec![false; size];
    let mut fields: HashMap<u64, CyclotomicField> = HashMap::new();
    let mut total = 0usize;
    for idx in 0..size {
        if visited[idx] {
            continue;
        }
        let k = q.residue(idx);
        let (d, weights) = character_order(q, &k);
        for u in 1..=d {
            if gcd(u as u128, d as u128) != 1 {
                continue;
            }
            let ku: Vec<u64> = k
                .iter()
                .zip(q.moduli())
                .map(|(&x, &m)| ((x as u128 * u as u128) % m as u128) as u64)
                .collect();
            visited[q.index_of(&ku)] = true;
        }
        let field = fields.entry(d).or_insert_with(|| CyclotomicField::new(d));
        let entries: Vec<Poly> = a
            .entries()
            .iter()
            .map(|p| {
                let mut poly: Poly = vec![BigRational::zero(); d as usize];
                for (e, c) in p.terms() {
                    let s = e.iter().zip(&weights).fold(0i128, |acc, (&ei, &w)| {
                        (acc + ei as i128 * w as i128).rem_euclid(d as i128)
                    });
                    poly[s as usize] += c;
                }
                trim(&mut poly);
                field.reduce(poly)
            })
            .collect();
        let r = field.rank(a.rows(), a.cols(), entries);
        total += r * euler_phi(d) as usize;
    }
    Ok(total)
}
