//! Towers of finite quotients `ℤⁿ → ⊕ ℤ/mᵢ`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groupring::Quotient;

/// Default cap on quotient sizes in a sweep.
pub const DEFAULT_MAX_SIZE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerSpec {
    /// Moduli `base_j^i` in coordinate `j` for `i = 1..=max_index`; a single
    /// base is repeated over all coordinates.
    Power { base: Vec<u64>, max_index: u32 },
    /// Explicit moduli vectors; a single modulus is repeated over all coordinates.
    Explicit(Vec<Vec<u64>>),
}

fn parse_u64_list(s: &str, sep: char) -> Result<Vec<u64>> {
    s.split(sep)
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Invalid(format!("{t:?} is not a natural number")))
        })
        .collect()
}

impl FromStr for TowerSpec {
    type Err = Error;

    /// `pow:BASE:IMAX` with `BASE` like `2` or `2x3`, or `list:N1,N2,…` with
    /// entries like `100` or `4x8`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["pow", base, imax] => {
                let base = parse_u64_list(base, 'x')?;
                if base.iter().any(|&b| b < 2) {
                    return Err(Error::Invalid("tower bases must be at least 2".into()));
                }
                let max_index = imax
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad max index {imax:?}")))?;
                Ok(TowerSpec::Power { base, max_index })
            }
            ["list", items] => {
                let moduli = items
                    .split(',')
                    .map(|t| parse_u64_list(t, 'x'))
                    .collect::<Result<Vec<_>>>()?;
                if moduli.iter().flatten().any(|&m| m == 0) {
                    return Err(Error::Invalid("moduli must be positive".into()));
                }
                Ok(TowerSpec::Explicit(moduli))
            }
            _ => Err(Error::Invalid(format!(
                "tower {s:?} is not pow:BASE:IMAX or list:N1,N2,…"
            ))),
        }
    }
}

impl fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join("x");
        match self {
            TowerSpec::Power { base, max_index } => write!(f, "pow:{}:{max_index}", join(base)),
            TowerSpec::Explicit(ms) => {
                write!(
                    f,
                    "list:{}",
                    ms.iter().map(|m| join(m)).collect::<Vec<_>>().join(",")
                )
            }
        }
    }
}

fn spread(moduli: &[u64], rank: usize) -> Result<Vec<u64>> {
    match moduli.len() {
        1 => Ok(vec![moduli[0]; rank]),
        n if n == rank => Ok(moduli.to_vec()),
        n => Err(Error::Dimension(format!(
            "{n} moduli for ambient rank {rank}"
        ))),
    }
}

impl TowerSpec {
    /// `(index, quotient)` pairs of size at most `max_size`, for ambient rank `rank`.
    pub fn quotients(&self, rank: usize, max_size: usize) -> Result<Vec<(usize, Quotient)>> {
        let raw: Vec<(usize, Vec<u64>)> = match self {
            TowerSpec::Power { base, max_index } => {
                let base = spread(base, rank)?;
                (1..=*max_index)
                    .map_while(|i| {
                        let m: Option<Vec<u64>> = base.iter().map(|b| b.checked_pow(i)).collect();
                        m.map(|m| (i as usize, m))
                    })
                    .collect()
            }
            TowerSpec::Explicit(ms) => ms
                .iter()
                .enumerate()
                .map(|(i, m)| Ok((i + 1, spread(m, rank)?)))
                .collect::<Result<_>>()?,
        };
        let mut out = Vec::new();
        let mut last = 0usize;
        for (i, m) in raw {
            let size = m
                .iter()
                .try_fold(1usize, |acc, &x| acc.checked_mul(x as usize));
            let Some(size) = size else { continue };
            if size > max_size {
                continue;
            }
            if size <= last {
                return Err(Error::Invalid(format!(
                    "tower sizes must strictly increase (index {i})"
                )));
            }
            last = size;
            out.push((i, Quotient::new(m)?));
        }
        Ok(out)
    }
}
