//! Based free chain complexes over ℤ and over ℤ[ℤⁿ].

use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::groupring::{push, GroupRingMatrix, Quotient};

/// `0 → C_top → … → C_1 → C_0 → 0` with `differentials[k − 1] = c_k : C_k → C_{k−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntChainComplex {
    ranks: Vec<usize>,
    differentials: Vec<IntMatrix>,
}

impl IntChainComplex {
    /// `ranks[k]` is the rank of `C_k`; `differentials` lists `c_1, …, c_top`.
    pub fn new(ranks: Vec<usize>, differentials: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::MalformedComplex("no modules".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::MalformedComplex(format!(
                "{} modules need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (k, c) in differentials.iter().enumerate() {
            if c.rows() != ranks[k] || c.cols() != ranks[k + 1] {
                return Err(Error::MalformedComplex(format!(
                    "c_{} is {}x{}, expected {}x{}",
                    k + 1,
                    c.rows(),
                    c.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        for (k, pair) in differentials.windows(2).enumerate() {
            if !pair[0].mul(&pair[1])?.is_zero() {
                return Err(Error::MalformedComplex(format!(
                    "c_{} · c_{} ≠ 0",
                    k + 1,
                    k + 2
                )));
            }
        }
        Ok(IntChainComplex {
            ranks,
            differentials,
        })
    }

    /// Complex built from its differentials alone; `c_1` fixes `C_0`.
    pub fn from_differentials(differentials: Vec<IntMatrix>) -> Result<Self> {
        let Some(first) = differentials.first() else {
            return Err(Error::MalformedComplex("no differentials".into()));
        };
        let mut ranks = vec![first.rows()];
        ranks.extend(differentials.iter().map(|c| c.cols()));
        Self::new(ranks, differentials)
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of `C_k`, zero outside `0..=top`.
    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    /// `c_k` for `1 ≤ k ≤ top`.
    pub fn boundary(&self, k: usize) -> Option<&IntMatrix> {
        if k == 0 {
            None
        } else {
            self.differentials.get(k - 1)
        }
    }

    /// `c_k`, or the zero map when `k = 0` or `k > top`.
    pub fn boundary_or_zero(&self, k: usize) -> IntMatrix {
        self.boundary(k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank(k.wrapping_sub(1)), self.rank(k)))
    }

    /// Direct sum, degreewise.
    pub fn direct_sum(&self, other: &IntChainComplex) -> Result<IntChainComplex> {
        let top = self.top_degree().max(other.top_degree());
        let ranks: Vec<usize> = (0..=top).map(|k| self.rank(k) + other.rank(k)).collect();
        let differentials = (1..=top)
            .map(|k| {
                let (a, b) = (self.boundary_or_zero(k), other.boundary_or_zero(k));
                let mut m = IntMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m[(i, j)] = a[(i, j)].clone();
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m[(a.rows() + i, a.cols() + j)] = b[(i, j)].clone();
                    }
                }
                m
            })
            .collect();
        IntChainComplex::new(ranks, differentials)
    }
}

/// Based free chain complex over ℚ[ℤⁿ] (integral in all applications here).
#[derive(Clone, Debug, PartialEq)]
pub struct GRChainComplex {
    ambient_rank: usize,
    ranks: Vec<usize>,
    differentials: Vec<GroupRingMatrix>,
}

impl GRChainComplex {
    pub fn new(
        ambient_rank: usize,
        ranks: Vec<usize>,
        differentials: Vec<GroupRingMatrix>,
    ) -> Result<Self> {
        if ranks.is_empty() || differentials.len() + 1 != ranks.len() {
            return Err(Error::MalformedComplex(
                "module and differential counts disagree".into(),
            ));
        }
        for (k, c) in differentials.iter().enumerate() {
            if c.ambient_rank() != ambient_rank {
                return Err(Error::MalformedComplex(format!(
                    "c_{} has ambient rank {}",
                    k + 1,
                    c.ambient_rank()
                )));
            }
            if c.rows() != ranks[k] || c.cols() != ranks[k + 1] {
                return Err(Error::MalformedComplex(format!(
                    "c_{} is {}x{}, expected {}x{}",
                    k + 1,
                    c.rows(),
                    c.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        for (k, pair) in differentials.windows(2).enumerate() {
            if !pair[0].matmul(&pair[1])?.is_zero() {
                return Err(Error::MalformedComplex(format!(
                    "c_{} · c_{} ≠ 0",
                    k + 1,
                    k + 2
                )));
            }
        }
        Ok(GRChainComplex {
            ambient_rank,
            ranks,
            differentials,
        })
    }

    /// `D ⊗_ℤ ℤ[ℤⁿ]` for an integer complex `D`.
    pub fn from_int(ambient_rank: usize, c: &IntChainComplex) -> Self {
        GRChainComplex {
            ambient_rank,
            ranks: c.ranks().to_vec(),
            differentials: c
                .differentials()
                .iter()
                .map(|m| GroupRingMatrix::from_int(ambient_rank, m))
                .collect(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }
    pub fn differentials(&self) -> &[GroupRingMatrix] {
        &self.differentials
    }
}

/// `C ⊗ ℤ[Q]` as an integer complex through the regular representation.
pub fn push_complex(c: &GRChainComplex, q: &Quotient) -> Result<IntChainComplex> {
    let n = q.size();
    let differentials = c
        .differentials()
        .iter()
        .map(|d| push::<f64>(d, q)?.regular_rep_int())
        .collect::<Result<Vec<_>>>()?;
    IntChainComplex::new(c.ranks().iter().map(|r| r * n).collect(), differentials)
}
