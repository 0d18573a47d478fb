//! Named complexes: the golden four-term example, its one-term companion over
//! ℤ[ℤ], and mapping-torus complexes.

use num_bigint::BigInt;
use num_integer::Integer;

use super::complex::{GRChainComplex, IntChainComplex};
use crate::error::{Error, Result};
use crate::exactalg::{cokernel_structure, rank_over_field, Field, IntMatrix};
use crate::groupring::{GroupRingMatrix, LaurentPoly};

fn check_params(a: i64, b: i64, k: i64, l: i64, g: i64) -> Result<()> {
    if a.gcd(&b) != 1 {
        return Err(Error::Invalid(format!("gcd({a}, {b}) ≠ 1")));
    }
    if k.gcd(&l) != 1 {
        return Err(Error::Invalid(format!("gcd({k}, {l}) ≠ 1")));
    }
    if g < 1 {
        return Err(Error::Invalid(format!("g = {g} < 1")));
    }
    Ok(())
}

/// `c₂ = [[gka, gla], [gkb, glb]]`.
pub fn section9_middle(a: i64, b: i64, k: i64, l: i64, g: i64) -> IntMatrix {
    IntMatrix::from_rows(&[&[g * k * a, g * l * a], &[g * k * b, g * l * b]])
}

/// `0 → ℤ --(−l, k)ᵀ--> ℤ² --c₂--> ℤ² --(−b, a)--> ℤ → 0`, with `H₁ = ℤ/g`.
pub fn section9_complex(a: i64, b: i64, k: i64, l: i64, g: i64) -> Result<IntChainComplex> {
    check_params(a, b, k, l, g)?;
    IntChainComplex::new(
        vec![1, 2, 2, 1],
        vec![
            IntMatrix::from_rows(&[&[-b, a]]),
            section9_middle(a, b, k, l, g),
            IntMatrix::from_rows(&[&[-l], &[k]]),
        ],
    )
}

/// `D ⊗ ℤ[ℤ]` where `D` has the single differential `c₂`; not L²-acyclic.
pub fn section9_e_complex(a: i64, b: i64, k: i64, l: i64, g: i64) -> Result<GRChainComplex> {
    check_params(a, b, k, l, g)?;
    let d = IntChainComplex::from_differentials(vec![section9_middle(a, b, k, l, g)])?;
    Ok(GRChainComplex::from_int(1, &d))
}

/// Two-term complex over ℤ[ℤ] with `d₁ = I − z·M`.
pub fn mapping_torus_complex(m: &IntMatrix) -> Result<GRChainComplex> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!(
            "{}x{} matrix is not square",
            m.rows(),
            m.cols()
        )));
    }
    let r = m.rows();
    let z = LaurentPoly::monomial(
        1,
        vec![1],
        num_rational::BigRational::from_integer(1.into()),
    );
    let zm = GroupRingMatrix::from_int(1, m).scale(&z)?;
    let d1 = GroupRingMatrix::identity(1, r).sub(&zm)?;
    GRChainComplex::new(1, vec![r, r], vec![d1])
}

fn one_minus_power(m: &IntMatrix, d: u32) -> Result<IntMatrix> {
    IntMatrix::identity(m.rows()).sub(&m.pow(d)?)
}

/// `|tors coker(I − M^d)|`.
pub fn mapping_torus_torsion(m: &IntMatrix, d: u32) -> Result<BigInt> {
    if m.rows() != m.cols() {
        return Err(Error::Shape("matrix is not square".into()));
    }
    Ok(cokernel_structure(&one_minus_power(m, d)?).torsion_order())
}

/// Betti number `b_degree` over `field` of the mapping torus of a surface
/// map acting on `H₁` by `M^d`.
pub fn wang_betti(m: &IntMatrix, d: u32, field: Field, degree: usize) -> Result<usize> {
    if m.rows() != m.cols() {
        return Err(Error::Shape("matrix is not square".into()));
    }
    if d == 0 {
        return Err(Error::Domain("power d must be at least 1".into()));
    }
    match degree {
        0 | 3 => Ok(1),
        1 | 2 => {
            let r = m.rows();
            Ok(r - rank_over_field(&one_minus_power(m, d)?, field)? + 1)
        }
        _ => Err(Error::Domain(format!("degree {degree} outside 0..=3"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::homology;
    use crate::groupring::Quotient;
    use crate::torsionlab::push_complex;

    #[test]
    fn golden_homology() {
        let c = section9_complex(2, 1, 3, 2, 5).unwrap();
        let groups: Vec<String> = (0..4)
            .map(|n| homology(&c, n).unwrap().group.to_string())
            .collect();
        assert_eq!(groups, vec!["0", "Z/5", "0", "0"]);
        let c = section9_complex(1, 0, 3, 2, 7).unwrap();
        assert_eq!(homology(&c, 1).unwrap().group.to_string(), "Z/7");
    }

    #[test]
    fn parameter_checks() {
        assert!(section9_complex(2, 4, 3, 2, 5).is_err());
        assert!(section9_complex(2, 1, 4, 2, 5).is_err());
        assert!(section9_complex(2, 1, 3, 2, 0).is_err());
        let c = section9_complex(2, 1, 3, 2, 1).unwrap();
        assert!((0..4).all(|n| homology(&c, n).unwrap().group.is_trivial()));
    }

    #[test]
    fn mapping_torus_torsion_values() {
        let two = IntMatrix::from_rows(&[&[2]]);
        for d in 1..10 {
            assert_eq!(
                mapping_torus_torsion(&two, d).unwrap(),
                BigInt::from((1i64 << d) - 1)
            );
        }
        let one = IntMatrix::from_rows(&[&[1]]);
        assert_eq!(mapping_torus_torsion(&one, 5).unwrap(), BigInt::from(1));
    }

    #[test]
    fn pushed_mapping_torus_matches_power() {
        let m = IntMatrix::from_rows(&[&[2, 1], &[1, 1]]);
        let c = mapping_torus_complex(&m).unwrap();
        for n in 1..8u32 {
            let p = push_complex(&c, &Quotient::cyclic(n as u64)).unwrap();
            let h0 = homology(&p, 0).unwrap().group;
            assert_eq!(
                h0.torsion_order(),
                mapping_torus_torsion(&m, n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn wang_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(wang_betti(&id, 1, Field::Rationals, 1).unwrap(), 3);
        let cat = IntMatrix::from_rows(&[&[2, 1], &[1, 1]]);
        for d in 1..6 {
            assert_eq!(wang_betti(&cat, d, Field::Rationals, 1).unwrap(), 1);
            assert_eq!(wang_betti(&cat, d, Field::Rationals, 0).unwrap(), 1);
            assert_eq!(wang_betti(&cat, d, Field::Rationals, 3).unwrap(), 1);
        }
        // I − M⁵ = [[−88, −55], [−55, −33]] vanishes mod 11
        assert_eq!(
            wang_betti(&cat, 5, Field::prime(11).unwrap(), 1).unwrap(),
            3
        );
        assert_eq!(wang_betti(&cat, 5, Field::prime(7).unwrap(), 1).unwrap(), 1);
        assert!(wang_betti(&cat, 1, Field::Rationals, 4).is_err());
    }
}
