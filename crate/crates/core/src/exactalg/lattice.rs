//! Saturated kernels, cokernels and homology of based free ℤ-complexes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::snf;
use crate::error::{Error, Result};
use crate::torsionlab::IntChainComplex;

/// `ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `2 ≤ d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub elementary_divisors: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            elementary_divisors: Vec::new(),
        }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.elementary_divisors.is_empty()
    }

    /// Group from an SNF diagonal of a presentation with `generators` generators.
    pub fn from_diagonal(generators: usize, diagonal: &[BigInt]) -> Self {
        let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
        FgAbelianGroup {
            free_rank: generators - rank,
            elementary_divisors: diagonal
                .iter()
                .filter(|d| !d.is_zero() && !d.is_one())
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.elementary_divisors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology group together with cycles lifting a basis of its free part.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyData {
    pub group: FgAbelianGroup,
    /// Cycles in `C_n` whose classes form a basis of `H_n(C)_f`.
    pub free_lifts: Vec<Vec<BigInt>>,
}

fn normalize_sign(v: &mut [BigInt]) {
    if v.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in v.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
}

fn content(v: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// ℤ-basis (as columns) of the saturated kernel of `m`.
pub fn kernel_basis_saturated(m: &IntMatrix) -> IntMatrix {
    let res = snf(m);
    let r = res.rank();
    let columns: Vec<Vec<BigInt>> = (r..m.cols())
        .map(|j| {
            let mut v = res.right.column(j);
            let c = content(&v);
            if !c.is_zero() && !c.is_one() {
                for x in v.iter_mut() {
                    *x = &*x / &c;
                }
            }
            normalize_sign(&mut v);
            v
        })
        .collect();
    IntMatrix::from_columns(m.cols(), &columns)
}

/// Isomorphism type of `ℤ^rows / (column span of m)`.
pub fn cokernel_structure(m: &IntMatrix) -> FgAbelianGroup {
    let res = snf(m);
    FgAbelianGroup::from_diagonal(m.rows(), &res.diagonal)
}

/// Solve `basis · x = target` for each column of `target`, where `basis` has
/// full column rank, saturated columns, and `target` lies in its span.
fn coordinates_in_saturated_basis(basis: &IntMatrix, target: &IntMatrix) -> Result<IntMatrix> {
    let k = basis.cols();
    if k == 0 {
        if !target.is_zero() {
            return Err(Error::MalformedComplex(
                "image not contained in kernel".into(),
            ));
        }
        return Ok(IntMatrix::zeros(0, target.cols()));
    }
    let res = snf(basis);
    if res.rank() != k || res.diagonal.iter().any(|d| !d.is_one()) {
        return Err(Error::Invalid("kernel basis is not saturated".into()));
    }
    // L·B·R = [I; 0]  ⇒  x = R · (first k rows of L·target)
    let lt = res.left.mul(target)?;
    for i in k..lt.rows() {
        if lt.row(i).iter().any(|x| !x.is_zero()) {
            return Err(Error::MalformedComplex(
                "image not contained in kernel".into(),
            ));
        }
    }
    let mut top = IntMatrix::zeros(k, target.cols());
    for i in 0..k {
        for j in 0..target.cols() {
            top[(i, j)] = lt[(i, j)].clone();
        }
    }
    res.right.mul(&top)
}

/// `H_n(C)` with free-part lifts.
pub fn homology(c: &IntChainComplex, n: usize) -> Result<HomologyData> {
    let rank_n = c.rank(n);
    let outgoing = c.boundary_or_zero(n);
    let incoming = c.boundary_or_zero(n + 1);
    let cycles = kernel_basis_saturated(&outgoing);
    let coords = coordinates_in_saturated_basis(&cycles, &incoming)?;
    debug_assert_eq!(cycles.rows(), rank_n);
    let res = snf(&coords);
    let group = FgAbelianGroup::from_diagonal(cycles.cols(), &res.diagonal);
    let r = res.rank();
    let free_lifts = (r..cycles.cols())
        .map(|i| {
            let x = res.left_inverse.column(i);
            cycles.mul_vec(&x).expect("shapes agree")
        })
        .collect();
    Ok(HomologyData { group, free_lifts })
}
