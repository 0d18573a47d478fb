//! Smith normal form by gcd-driven elementary row and column reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `left · M · right = diag(diagonal)` with unimodular transforms.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult {
    /// Nonnegative, `d₁ | d₂ | …`, length `min(rows, cols)`; zeros trail.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `left`; needed to pull homology classes back to cycles.
    pub left_inverse: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }
}

struct Transforms {
    left: IntMatrix,
    left_inverse: IntMatrix,
    right: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    t: Option<Transforms>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.t {
            t.left.swap_rows(i, j);
            t.left_inverse.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.t {
            t.right.swap_cols(i, j);
        }
    }

    /// row[dst] += q · row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        if let Some(t) = &mut self.t {
            t.left.add_row_multiple(dst, src, q);
            let neg = -q;
            t.left_inverse.add_col_multiple(src, dst, &neg);
        }
    }

    /// col[dst] += q · col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        if let Some(t) = &mut self.t {
            t.right.add_col_multiple(dst, src, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = &mut self.t {
            t.left.negate_row(i);
            t.left_inverse.negate_col(i);
        }
    }

    /// Position of the smallest nonzero magnitude in the trailing submatrix.
    fn smallest(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in from..self.a.rows() {
            for j in from..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let m = x.abs();
                let better = match &best {
                    None => true,
                    Some((_, _, b)) => &m < b,
                };
                if better {
                    let is_unit = m == BigInt::from(1);
                    best = Some((i, j, m));
                    if is_unit {
                        break;
                    }
                }
            }
            if matches!(&best, Some((_, _, b)) if *b == BigInt::from(1)) {
                break;
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) -> Vec<BigInt> {
        let rows = self.a.rows();
        let cols = self.a.cols();
        let steps = rows.min(cols);
        let mut diagonal = Vec::with_capacity(steps);
        for t in 0..steps {
            loop {
                let Some((i, j)) = self.smallest(t) else {
                    break;
                };
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                let pivot = self.a[(t, t)].clone();
                let mut dirty = false;
                for r in t + 1..rows {
                    if self.a[(r, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(r, t)].div_floor(&pivot);
                    self.add_row(r, t, &-q);
                    dirty |= !self.a[(r, t)].is_zero();
                }
                for c in t + 1..cols {
                    if self.a[(t, c)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, c)].div_floor(&pivot);
                    self.add_col(c, t, &-q);
                    dirty |= !self.a[(t, c)].is_zero();
                }
                if dirty {
                    continue;
                }
                // pivot must divide the remaining block
                let mut offender = None;
                'scan: for r in t + 1..rows {
                    for c in t + 1..cols {
                        if !self.a[(r, c)].is_multiple_of(&pivot) {
                            offender = Some(r);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(r) => self.add_row(t, r, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            diagonal.push(self.a[(t, t)].clone());
        }
        diagonal
    }
}

/// Smith normal form with unimodular transforms.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let mut r = Reducer {
        a: m.clone(),
        t: Some(Transforms {
            left: IntMatrix::identity(m.rows()),
            left_inverse: IntMatrix::identity(m.rows()),
            right: IntMatrix::identity(m.cols()),
        }),
    };
    let diagonal = r.run();
    let t = r.t.expect("transforms tracked");
    SnfResult {
        diagonal,
        left: t.left,
        right: t.right,
        left_inverse: t.left_inverse,
    }
}

/// Diagonal of the Smith normal form without tracking transforms.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer {
        a: m.clone(),
        t: None,
    };
    r.run()
}
