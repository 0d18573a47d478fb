//! Finite quotients ℤⁿ/L with L = ⊕ mᵢℤ and push-forward of group-ring matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::matrix::GroupRingMatrix;
use crate::error::{Error, Result};
use crate::exactalg::{IntMatrix, RatMatrix};
use crate::Real;

/// `ℤ/m₁ × … × ℤ/mₙ`. Residue vectors are enumerated lexicographically with the
/// last coordinate varying fastest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quotient {
    moduli: Vec<u64>,
}

impl Quotient {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::Invalid("quotient moduli must be >= 1".into()));
        }
        Ok(Quotient { moduli })
    }

    /// `ℤ/n`.
    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![n]).expect("n >= 1")
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn size(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn min_modulus(&self) -> u64 {
        self.moduli.iter().copied().min().unwrap_or(u64::MAX)
    }

    /// Residue vector of the element with the given index.
    pub fn residue(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        for (slot, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = (index % m as usize) as u64;
            index /= m as usize;
        }
        out
    }

    pub fn index_of(&self, residue: &[u64]) -> usize {
        residue
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&r, &m)| acc * m as usize + r as usize)
    }

    /// Image of an exponent vector, as an element index.
    pub fn reduce(&self, e: &[i64]) -> usize {
        let r: Vec<u64> = e
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| x.rem_euclid(m as i64) as u64)
            .collect();
        self.index_of(&r)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.residue(a), self.residue(b));
        let s: Vec<u64> = ra
            .iter()
            .zip(&rb)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect();
        self.index_of(&s)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.residue(a), self.residue(b));
        let s: Vec<u64> = ra
            .iter()
            .zip(&rb)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + m - y) % m)
            .collect();
        self.index_of(&s)
    }

    /// `⟨k, e⟩` as a fraction `num / lcm(moduli)` reduced into `[0, 1)`.
    pub fn pairing(&self, k: &[u64], e: &[i64]) -> (u128, u128) {
        let l = self
            .moduli
            .iter()
            .fold(1u128, |acc, &m| lcm(acc, m as u128));
        let mut num = 0u128;
        for ((&ki, &ei), &m) in k.iter().zip(e).zip(&self.moduli) {
            let er = ei.rem_euclid(m as i64) as u128;
            let t = (ki as u128 * er) % m as u128;
            num = (num + t * (l / m as u128)) % l;
        }
        (num, l)
    }

    /// `exp(2πi⟨k,e⟩)` with the angle reduced exactly before evaluation.
    pub fn character<T: Real>(&self, k: &[u64], e: &[i64]) -> Complex<T> {
        let (num, den) = self.pairing(k, e);
        if num == 0 {
            return Complex::new(T::one(), T::zero());
        }
        let angle = T::TAU() * T::lit(num as f64) / T::lit(den as f64);
        Complex::new(angle.cos(), angle.sin())
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

pub(crate) fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// A group-ring matrix pushed to `ℚ[Q]`, with its character blocks.
#[derive(Clone, Debug)]
pub struct PushedMatrix<T> {
    quotient: Quotient,
    rows: usize,
    cols: usize,
    /// Entry `(i, j)` as a map from quotient element index to coefficient.
    reduced: Vec<BTreeMap<usize, BigRational>>,
    /// One `rows × cols` row-major block per character, in residue order.
    blocks: Vec<Vec<Complex<T>>>,
}

/// Push `a` to `ℚ[Q]` and evaluate it at every character of `Q`.
pub fn push<T: Real>(a: &GroupRingMatrix, q: &Quotient) -> Result<PushedMatrix<T>> {
    if q.rank() != a.ambient_rank() {
        return Err(Error::Dimension(format!(
            "quotient of rank {} for a matrix over Z^{}",
            q.rank(),
            a.ambient_rank()
        )));
    }
    let reduced: Vec<BTreeMap<usize, BigRational>> = a
        .entries()
        .iter()
        .map(|p| {
            let mut m: BTreeMap<usize, BigRational> = BTreeMap::new();
            for (e, c) in p.terms() {
                *m.entry(q.reduce(e)).or_insert_with(BigRational::zero) += c;
            }
            m.retain(|_, c| !c.is_zero());
            m
        })
        .collect();
    let blocks = (0..q.size())
        .into_par_iter()
        .map(|idx| character_block(a, q, &q.residue(idx)))
        .collect();
    Ok(PushedMatrix {
        quotient: q.clone(),
        rows: a.rows(),
        cols: a.cols(),
        reduced,
        blocks,
    })
}

/// `A_χ` for the character indexed by residue vector `k`.
pub fn character_block<T: Real>(a: &GroupRingMatrix, q: &Quotient, k: &[u64]) -> Vec<Complex<T>> {
    a.entries()
        .iter()
        .map(|p| {
            p.terms()
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |acc, (e, c)| {
                    acc + q.character::<T>(k, e) * super::laurent::rational_to_real::<T>(c)
                })
        })
        .collect()
}

impl<T: Real> PushedMatrix<T> {
    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Character blocks in residue order.
    pub fn character_blocks(&self) -> &[Vec<Complex<T>>] {
        &self.blocks
    }

    /// Coefficients of entry `(i, j)` indexed by quotient element.
    pub fn reduced_entry(&self, i: usize, j: usize) -> &BTreeMap<usize, BigRational> {
        &self.reduced[i * self.cols + j]
    }

    /// Sum of the identity coefficients on the diagonal.
    pub fn trace(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.reduced_entry(i, i)
                    .get(&0)
                    .cloned()
                    .unwrap_or_else(BigRational::zero)
            })
            .sum())
    }

    /// Regular representation: `(rows·|Q|) × (cols·|Q|)`, block `(i, j)` is the
    /// matrix of multiplication by entry `(i, j)`, i.e. `[h, g] = a(h − g)`.
    pub fn regular_rep(&self) -> RatMatrix {
        let n = self.quotient.size();
        let mut out = RatMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for (&s, c) in self.reduced_entry(i, j) {
                    for g in 0..n {
                        let h = self.quotient.add(s, g);
                        out.set(i * n + h, j * n + g, c.clone());
                    }
                }
            }
        }
        out
    }

    /// Integer regular representation; fails on non-integral coefficients.
    pub fn regular_rep_int(&self) -> Result<IntMatrix> {
        self.regular_rep()
            .to_int()
            .ok_or_else(|| Error::Invalid("matrix has non-integral coefficients".into()))
    }
}

/// Trace of the pushed matrix, normalized by the quotient (identity coefficient).
pub fn trace_pushed<T: Real>(p: &PushedMatrix<T>) -> Result<BigRational> {
    p.trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupring::laurent::parse_poly;

    fn scalar(s: &str) -> GroupRingMatrix {
        GroupRingMatrix::scalar(parse_poly(s, 1).unwrap())
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn push_linear_to_z3() {
        let p = push::<f64>(&scalar("z - 2"), &Quotient::cyclic(3)).unwrap();
        let mags: Vec<f64> = p.character_blocks().iter().map(|b| b[0].norm()).collect();
        assert!((mags[0] - 1.0).abs() < 1e-14);
        assert!((mags[1] - 7f64.sqrt()).abs() < 1e-14);
        assert!((mags[2] - 7f64.sqrt()).abs() < 1e-14);
        let z3 = Complex::new(-0.5, 3f64.sqrt() / 2.0);
        assert!((p.character_blocks()[1][0] - (z3 - 2.0)).norm() < 1e-14);
    }

    #[test]
    fn constant_one_pushes_to_ones() {
        let qt = Quotient::new(vec![2, 3]).unwrap();
        let one = GroupRingMatrix::scalar(parse_poly("1", 2).unwrap());
        let p = push::<f64>(&one, &qt).unwrap();
        assert_eq!(p.character_blocks().len(), 6);
        assert!(p
            .character_blocks()
            .iter()
            .all(|b| (b[0] - 1.0).norm() < 1e-15));
    }

    #[test]
    fn shift_has_cyclic_permutation_regular_rep() {
        let p = push::<f64>(&scalar("z"), &Quotient::cyclic(3)).unwrap();
        let r = p.regular_rep_int().unwrap();
        assert_eq!(
            r,
            IntMatrix::from_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
        );
    }

    #[test]
    fn pushed_traces() {
        let a = scalar("z + z^-1");
        let t = |n| trace_pushed(&push::<f64>(&a, &Quotient::cyclic(n)).unwrap()).unwrap();
        assert_eq!(t(3), q(0));
        assert_eq!(t(1), q(2));
        assert_eq!(t(2), q(0));
    }

    #[test]
    fn rank_mismatch() {
        assert!(push::<f64>(&scalar("z"), &Quotient::new(vec![2, 2]).unwrap()).is_err());
    }

    #[test]
    fn push_commutes_with_involution() {
        let a = GroupRingMatrix::parse(
            2,
            &[
                &["z1 - 2*z2^2", "3"],
                &["z1^-1*z2", "1 + z2"],
                &["0", "z1^3"],
            ],
        )
        .unwrap();
        let qt = Quotient::new(vec![3, 4]).unwrap();
        let p = push::<f64>(&a, &qt).unwrap();
        let ps = push::<f64>(&a.involute(), &qt).unwrap();
        for (b, bs) in p.character_blocks().iter().zip(ps.character_blocks()) {
            for i in 0..3 {
                for j in 0..2 {
                    assert!((b[i * 2 + j].conj() - bs[j * 3 + i]).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn regular_rep_trace_matches_character_sum() {
        let a =
            GroupRingMatrix::parse(2, &[&["z1 + 2 - z2", "1"], &["z1*z2", "3 - z1^-2"]]).unwrap();
        let qt = Quotient::new(vec![2, 3]).unwrap();
        let p = push::<f64>(&a, &qt).unwrap();
        let reg = p.regular_rep();
        let block_trace: f64 = p.character_blocks().iter().map(|b| (b[0] + b[3]).re).sum();
        let reg_trace: f64 = {
            let t = reg.trace();
            crate::groupring::laurent::rational_to_real(&t)
        };
        assert!((block_trace - reg_trace).abs() < 1e-12);
        // and the identity-coefficient trace is the normalized one
        let tp: f64 = crate::groupring::laurent::rational_to_real(&p.trace().unwrap());
        assert!((tp * qt.size() as f64 - reg_trace).abs() < 1e-12);
    }
}
