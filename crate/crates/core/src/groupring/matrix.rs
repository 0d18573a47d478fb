use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::laurent::{parse_poly, LaurentPoly};
use crate::error::{Error, Result};

/// Matrix over ℚ[ℤⁿ].
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingMatrix {
    rank: usize,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl GroupRingMatrix {
    pub fn new(rank: usize, rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(p) = entries.iter().find(|p| p.rank() != rank) {
            return Err(Error::Dimension(format!(
                "entry of rank {} in a rank-{rank} matrix",
                p.rank()
            )));
        }
        Ok(GroupRingMatrix {
            rank,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rank: usize, rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rank,
            rows,
            cols,
            entries: vec![LaurentPoly::zero(rank); rows * cols],
        }
    }

    pub fn identity(rank: usize, n: usize) -> Self {
        let mut m = Self::zeros(rank, n, n);
        for i in 0..n {
            m.entries[i * n + i] = LaurentPoly::one(rank);
        }
        m
    }

    /// 1×1 matrix holding `p`.
    pub fn scalar(p: LaurentPoly) -> Self {
        GroupRingMatrix {
            rank: p.rank(),
            rows: 1,
            cols: 1,
            entries: vec![p],
        }
    }

    pub fn parse(rank: usize, rows: &[&[&str]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            for s in row.iter() {
                entries.push(parse_poly(s, rank)?);
            }
        }
        Self::new(rank, r, c, entries)
    }

    /// Constant matrix with integer entries.
    pub fn from_int(rank: usize, m: &crate::exactalg::IntMatrix) -> Self {
        let entries = m
            .entries()
            .iter()
            .map(|x| LaurentPoly::constant(rank, BigRational::from_integer(x.clone())))
            .collect();
        GroupRingMatrix {
            rank,
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert_eq!(p.rank(), self.rank);
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Conjugate transpose over the group ring.
    pub fn involute(&self) -> Self {
        let mut out = Self::zeros(self.rank, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).involute();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.rank != other.rank {
            return Err(Error::Dimension("ambient ranks differ".into()));
        }
        let mut out = Self::zeros(self.rank, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.rank);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                out.entries[i * other.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(
                "subtraction of differently shaped matrices".into(),
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.rank, self.rows, self.cols, entries)
    }

    pub fn scale(&self, p: &LaurentPoly) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|a| a.mul(p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.rank, self.rows, self.cols, entries)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut out = Self::identity(self.rank, self.rows);
        for _ in 0..k {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// `A* A`.
    pub fn gram(&self) -> Self {
        self.involute().matmul(self).expect("shapes agree")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_integral)
    }

    /// Largest absolute exponent coordinate over all entries.
    pub fn support_radius(&self) -> u64 {
        self.entries
            .iter()
            .map(LaurentPoly::support_radius)
            .max()
            .unwrap_or(0)
    }

    /// Von Neumann trace: sum of the identity coefficients on the diagonal.
    pub fn trace_vn(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.get(i, i).constant_term()).sum())
    }

    /// `rows · cols · max ‖a_ij‖₁`, an upper bound for the operator norm of
    /// right multiplication on ℓ²(ℤⁿ)^rows.
    pub fn l1_bound(&self) -> f64 {
        let max = self
            .entries
            .iter()
            .map(LaurentPoly::l1_norm)
            .max()
            .unwrap_or_else(BigRational::zero);
        let m = max.numer().to_f64().unwrap_or(f64::INFINITY) / max.denom().to_f64().unwrap_or(1.0);
        (self.rows * self.cols) as f64 * m
    }

    /// Determinant over the (commutative) group ring. Univariate entries use
    /// fraction-free elimination; other ranks expand by minors.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(self.rank));
        }
        if self.rank != 1 {
            return Ok(self.det_by_minors(&(0..n).collect::<Vec<_>>(), 0));
        }
        let mut a: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one(1);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(LaurentPoly::zero(1)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                    a[i][j] = v.div_exact(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    fn det_by_minors(&self, cols: &[usize], row: usize) -> LaurentPoly {
        if cols.is_empty() {
            return LaurentPoly::one(self.rank);
        }
        let mut acc = LaurentPoly::zero(self.rank);
        for (idx, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a
                .mul(&self.det_by_minors(&rest, row + 1))
                .expect("same rank");
            acc = if idx % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
            .expect("same rank");
        }
        acc
    }
}
