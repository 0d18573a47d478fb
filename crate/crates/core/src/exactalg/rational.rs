//! Exact linear algebra over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

pub type QVector = Vec<BigRational>;

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .entries()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }

    /// The integer matrix with the same entries, if every entry is integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let data: Option<Vec<BigInt>> = self
            .data
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect();
        IntMatrix::from_vec(self.rows, self.cols, data?).ok()
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<QVector> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        echelon_rank(&mut rows, self.cols)
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-reduce in place and return the rank.
fn echelon_rank(rows: &mut [QVector], cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].recip();
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = &*x - &f * y;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exact determinant by Gaussian elimination over ℚ.
pub fn rational_determinant(m: &[QVector]) -> Result<BigRational> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(
            "determinant of a non-square rational matrix".into(),
        ));
    }
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    Ok(det)
}

/// Solve `g · y = w` for symmetric positive definite `g` (exactly).
fn solve(g: &[QVector], w: &[BigRational]) -> Result<QVector> {
    let n = g.len();
    let mut aug: Vec<QVector> = g
        .iter()
        .zip(w)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    if echelon_rank(&mut aug, n) < n {
        return Err(Error::Singular("normal equations".into()));
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

/// Gram matrix of the orthogonal projections of `vectors` onto the
/// orthogonal complement of `span(subspace_generators)`.
///
/// The projection is obtained from the normal equations `SᵀS·y = Sᵀv`
/// for a maximal independent subset `S` of the generators.
pub fn rational_gram_projection(
    vectors: &[QVector],
    subspace_generators: &[QVector],
) -> Result<Vec<QVector>> {
    let dim = vectors
        .first()
        .or(subspace_generators.first())
        .map_or(0, |v| v.len());
    if vectors
        .iter()
        .chain(subspace_generators)
        .any(|v| v.len() != dim)
    {
        return Err(Error::Dimension(
            "vectors live in different ambient spaces".into(),
        ));
    }
    // maximal independent subset of the generators, in order
    let mut basis: Vec<QVector> = Vec::new();
    let mut reduced: Vec<QVector> = Vec::new();
    for g in subspace_generators {
        let mut rows = reduced.clone();
        rows.push(g.clone());
        if echelon_rank(&mut rows, dim) > reduced.len() {
            reduced = rows;
            basis.push(g.clone());
        }
    }
    let normal: Vec<QVector> = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let mut projected = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut h = v.clone();
        if !basis.is_empty() {
            let rhs: QVector = basis.iter().map(|b| dot(b, v)).collect();
            let y = solve(&normal, &rhs)?;
            for (coef, b) in y.iter().zip(&basis) {
                for (x, bx) in h.iter_mut().zip(b) {
                    *x = &*x - coef * bx;
                }
            }
        }
        projected.push(h);
    }
    Ok(projected
        .iter()
        .map(|a| projected.iter().map(|b| dot(a, b)).collect())
        .collect())
}

pub fn to_q(v: &[BigInt]) -> QVector {
    v.iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect()
}

/// `ln |q|` for a nonzero rational.
pub fn ln_abs_rational(q: &BigRational) -> f64 {
    super::matrix::ln_abs(q.numer()) - super::matrix::ln_abs(q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qv(v: &[i64]) -> QVector {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn projection_away_from_diagonal() {
        let g = rational_gram_projection(&[qv(&[1, 0])], &[qv(&[1, 1])]).unwrap();
        assert_eq!(g, vec![vec![q(1, 2)]]);
    }

    #[test]
    fn empty_subspace_keeps_gram() {
        let g = rational_gram_projection(&[qv(&[1, 2]), qv(&[3, 4])], &[]).unwrap();
        assert_eq!(g, vec![vec![q(5, 1), q(11, 1)], vec![q(11, 1), q(25, 1)]]);
    }

    #[test]
    fn vector_inside_subspace_vanishes() {
        let g = rational_gram_projection(&[qv(&[2, 2])], &[qv(&[1, 1]), qv(&[3, 3])]).unwrap();
        assert_eq!(g, vec![vec![q(0, 1)]]);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            rational_gram_projection(&[qv(&[1, 0])], &[qv(&[1, 1, 1])]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn gram_is_symmetric_psd() {
        let vs = [qv(&[1, 2, 3, 4]), qv(&[0, 1, -1, 2]), qv(&[5, 0, 1, 1])];
        let gens = [qv(&[1, 1, 0, 0]), qv(&[0, 0, 1, 1])];
        let g = rational_gram_projection(&vs, &gens).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g[i][j], g[j][i]);
            }
        }
        // leading principal minors are nonnegative
        for k in 1..=3 {
            let minor: Vec<QVector> = g[..k].iter().map(|r| r[..k].to_vec()).collect();
            assert!(rational_determinant(&minor).unwrap() >= q(0, 1));
        }
    }

    #[test]
    fn determinant_over_q() {
        let m = vec![vec![q(1, 2), q(1, 3)], vec![q(1, 4), q(1, 5)]];
        assert_eq!(rational_determinant(&m).unwrap(), q(1, 10) - q(1, 12));
    }
}
