//! Ranks over ℚ and 𝔽_p, and exact determinants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Coefficient field for ranks and Betti numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Checked constructor for a prime field.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    /// Accepts `Q`, `Fp:P`, `F_P` or a bare prime.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F_"))
            .or_else(|| s.strip_prefix("F"))
            .unwrap_or(s);
        let p: u64 = digits.parse().map_err(|_| {
            Error::Invalid(format!("unrecognised field '{s}' (expected Q or Fp:P)"))
        })?;
        Field::prime(p)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!(
            "determinant of {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign < 0 { -d } else { d })
}

/// Rank over ℚ by fraction-free row echelon form.
pub fn rank_over_q(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = &a[i][j] * &a[rank][c] - &a[i][c] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank over 𝔽_p; `p` is assumed prime.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.mod_floor(&pb).to_u64().expect("reduced below p"))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for j in c..cols {
            a[rank][j] = mul_mod(a[rank][j], inv, p);
        }
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, pivot_row[j], p)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of `m` over the given field.
pub fn rank_over_field(m: &IntMatrix, field: Field) -> Result<usize> {
    match field {
        Field::Rationals => Ok(rank_over_q(m)),
        Field::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            Ok(rank_mod_p(m, p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::snf::snf;

    #[test]
    fn rank_examples() {
        let two = IntMatrix::from_rows(&[&[2]]);
        assert_eq!(rank_over_field(&two, Field::Prime(2)).unwrap(), 0);
        assert_eq!(rank_over_field(&two, Field::Rationals).unwrap(), 1);
        let ones = IntMatrix::from_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(rank_over_field(&ones, Field::Rationals).unwrap(), 1);
    }

    #[test]
    fn non_prime_modulus_rejected() {
        let m = IntMatrix::identity(2);
        assert_eq!(
            rank_over_field(&m, Field::Prime(6)),
            Err(Error::NotPrime(6))
        );
        assert!("Fp:9".parse::<Field>().is_err());
        assert_eq!("Fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 3));
    }

    #[test]
    fn determinant_matches_hand_values() {
        let m = IntMatrix::from_rows(&[&[0, 2, 1], &[1, 0, 3], &[4, 1, 0]]);
        // 0·(0−3) − 2·(0−12) + 1·(1−0) = 25
        assert_eq!(determinant(&m).unwrap(), BigInt::from(25));
        let sing = IntMatrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&sing).unwrap(), BigInt::zero());
    }

    #[test]
    fn rank_agrees_with_snf() {
        let m = IntMatrix::from_rows(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 5], &[3, 7, 14]]);
        let r = snf(&m).rank();
        assert_eq!(rank_over_q(&m), r);
        assert_eq!(r, 2);
        // mod 2 the first row vanishes; row 2 and 3 remain independent
        assert_eq!(rank_mod_p(&m, 2), 2);
    }
}
