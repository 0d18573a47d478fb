//! Finite simplicial complexes given by their facets.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::complex::IntChainComplex;
use crate::error::{Error, Result};
use crate::exactalg::{kernel_basis_saturated, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

/// Simplicial chain complex with the simplices of each dimension in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialChains {
    pub complex: IntChainComplex,
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialChains {
    /// `s_n`, the number of `n`-simplices.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }
}

impl SimplicialComplex {
    pub fn new(vertices: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() || s.is_empty() {
                return Err(Error::Invalid(format!(
                    "facet {f:?} has repeated vertices or is empty"
                )));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices) {
                return Err(Error::Invalid(format!(
                    "vertex {v} out of range 0..{vertices}"
                )));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::Invalid(format!("facet {f:?} listed twice")));
            }
            normalized.push(s);
        }
        Ok(SimplicialComplex {
            vertices,
            facets: normalized,
        })
    }

    /// Boundary circle of an `n`-gon.
    pub fn polygon(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Invalid("a polygon needs at least 3 vertices".into()));
        }
        Self::new(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect())
    }

    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    fn all_simplices(&self) -> Vec<Vec<Vec<usize>>> {
        let top = self.dimension().unwrap_or(0);
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); top + 1];
        for v in 0..self.vertices {
            by_dim[0].insert(vec![v]);
        }
        for f in &self.facets {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }

    /// Chain complex with `∂[v₀…v_k] = Σ (−1)ⁱ [v₀…v̂ᵢ…v_k]`.
    pub fn chains(&self) -> Result<SimplicialChains> {
        let simplices = self.all_simplices();
        let index: Vec<BTreeMap<&Vec<usize>, usize>> = simplices
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, x)| (x, i)).collect())
            .collect();
        let mut differentials = Vec::new();
        for k in 1..simplices.len() {
            let mut m = IntMatrix::zeros(simplices[k - 1].len(), simplices[k].len());
            for (j, s) in simplices[k].iter().enumerate() {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let row = index[k - 1][&face];
                    m[(row, j)] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                }
            }
            differentials.push(m);
        }
        let ranks = simplices.iter().map(Vec::len).collect();
        Ok(SimplicialChains {
            complex: IntChainComplex::new(ranks, differentials)?,
            simplices,
        })
    }

    /// Signs `±1` on the top simplices forming a fundamental cycle, for a
    /// closed, connected, coherently oriented pseudo-manifold.
    pub fn fundamental_cycle(&self) -> Result<Vec<BigInt>> {
        let d = self
            .dimension()
            .ok_or_else(|| Error::Invalid("empty complex".into()))?;
        if d == 0 || self.facets.iter().any(|f| f.len() != d + 1) {
            return Err(Error::Invalid(
                "not a pure complex of positive dimension".into(),
            ));
        }
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for f in &self.facets {
            for i in 0..f.len() {
                let mut r = f.clone();
                r.remove(i);
                *ridges.entry(r).or_default() += 1;
            }
        }
        if let Some((r, n)) = ridges.iter().find(|(_, &n)| n != 2) {
            return Err(Error::Invalid(format!("ridge {r:?} lies in {n} facets")));
        }
        let chains = self.chains()?;
        let top = chains.complex.boundary(d).expect("positive dimension");
        let kernel = kernel_basis_saturated(top);
        if kernel.cols() != 1 {
            return Err(Error::Invalid(format!(
                "top homology has rank {}; no coherent orientation of a connected pseudo-manifold",
                kernel.cols()
            )));
        }
        let cycle = kernel.column(0);
        if cycle.iter().any(|x| !x.abs().is_one()) {
            return Err(Error::Invalid(
                "top cycle does not have unit coefficients".into(),
            ));
        }
        Ok(cycle)
    }
}
