//! Laurent polynomials in `n` commuting variables with rational coefficients,
//! i.e. elements of the group ring ℚ[ℤⁿ].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Exponent = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Exponent, BigRational>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: BigRational) -> Self {
        Self::monomial(rank, vec![0; rank], c)
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigRational::one())
    }

    pub fn monomial(rank: usize, exponent: Exponent, c: BigRational) -> Self {
        assert_eq!(exponent.len(), rank);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { rank, terms }
    }

    /// Univariate polynomial from integer coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero(1);
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![e as i64], BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i64]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.rank])
    }

    pub fn add_term(&mut self, e: Exponent, c: BigRational) {
        debug_assert_eq!(e.len(), self.rank);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::Dimension(format!(
                "ambient ranks {} and {} differ",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..k {
            out = out.mul(self).expect("same rank");
        }
        out
    }

    /// The involution `Σ c·zᵉ ↦ Σ c·z⁻ᵉ` (rational coefficients are real).
    pub fn involute(&self) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigRational {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Largest `|eᵢ|` over the support, 0 for the zero polynomial.
    pub fn support_radius(&self) -> u64 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().map(|x| x.unsigned_abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Coefficients of the associated univariate polynomial after stripping the
    /// monomial factor: `p = z^shift · Σ coeffs[i]·zⁱ` with `coeffs[0] ≠ 0`.
    pub fn univariate_coeffs(&self) -> Result<(i64, Vec<BigRational>)> {
        if self.rank != 1 {
            return Err(Error::Dimension(format!(
                "expected a univariate polynomial, rank {}",
                self.rank
            )));
        }
        let Some(lo) = self.terms.keys().next().map(|e| e[0]) else {
            return Ok((0, Vec::new()));
        };
        let hi = self.terms.keys().next_back().expect("nonempty")[0];
        let mut coeffs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e[0] - lo) as usize] = c.clone();
        }
        Ok((lo, coeffs))
    }

    pub fn from_univariate(shift: i64, coeffs: &[BigRational]) -> Self {
        let mut p = Self::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![shift + i as i64], c.clone());
        }
        p
    }

    /// Exact quotient `self / divisor` for univariate Laurent polynomials.
    /// Fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_rank(divisor)?;
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        let (s1, mut num) = self.univariate_coeffs()?;
        let (s2, den) = divisor.univariate_coeffs()?;
        if num.len() < den.len() {
            return Err(Error::Domain("inexact polynomial division".into()));
        }
        let lead = den.last().expect("nonzero").clone();
        let mut quot = vec![BigRational::zero(); num.len() - den.len() + 1];
        for i in (0..quot.len()).rev() {
            let q = &num[i + den.len() - 1] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, d) in den.iter().enumerate() {
                num[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        if num.iter().any(|c| !c.is_zero()) {
            return Err(Error::Domain("inexact polynomial division".into()));
        }
        Ok(Self::from_univariate(s1 - s2, &quot))
    }

    /// Evaluate at a point of `(ℂ*)ⁿ` given as complex coordinates.
    pub fn eval_complex<T: crate::Real>(
        &self,
        z: &[num_complex::Complex<T>],
    ) -> num_complex::Complex<T> {
        let mut acc = num_complex::Complex::new(T::zero(), T::zero());
        for (e, c) in &self.terms {
            let mut term = num_complex::Complex::new(rational_to_real::<T>(c), T::zero());
            for (zi, &ei) in z.iter().zip(e) {
                term = term * zi.powi(ei as i32);
            }
            acc = acc + term;
        }
        acc
    }
}

pub fn rational_to_real<T: crate::Real>(q: &BigRational) -> T {
    let v = q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN);
    let v = if v.is_finite() {
        v
    } else {
        (crate::exactalg::ln_abs(q.numer()) - crate::exactalg::ln_abs(q.denom())).exp()
            * if q.is_negative() { -1.0 } else { 1.0 }
    };
    T::lit(v)
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders in the accepted input grammar, highest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let var = |i: usize| {
            if self.rank == 1 {
                "z".to_string()
            } else {
                format!("z{}", i + 1)
            }
        };
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        var(i)
                    } else {
                        format!("{}^{}", var(i), x)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    rank: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits parse"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let at = self.pos;
        let v = self.digits()?;
        let v = v.to_i64().ok_or(Error::Parse {
            pos: at,
            msg: "exponent too large".into(),
        })?;
        Ok(if negative { -v } else { v })
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero(self.rank);
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let t = self.term()?;
            acc = acc.add(&if sign < 0 { t.neg() } else { t })?;
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let d = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(LaurentPoly::constant(self.rank, BigRational::new(n, d)))
            }
            Some(b'z') => {
                let at = self.pos;
                self.pos += 1;
                let index = if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    let i = self.digits()?.to_usize().unwrap_or(usize::MAX);
                    if i == 0 || i > self.rank {
                        return Err(Error::VariableOutOfRange {
                            index: i,
                            rank: self.rank,
                        });
                    }
                    i - 1
                } else {
                    if self.rank != 1 {
                        return Err(Error::Parse {
                            pos: at,
                            msg: format!(
                                "bare 'z' is only valid for ambient rank 1 (rank {})",
                                self.rank
                            ),
                        });
                    }
                    0
                };
                let e = if self.eat(b'^') {
                    self.signed_int()?
                } else {
                    1
                };
                let mut exp = vec![0; self.rank];
                exp[index] = e;
                Ok(LaurentPoly::monomial(self.rank, exp, BigRational::one()))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                if self.eat(b'^') {
                    let at = self.pos;
                    let k = self.signed_int()?;
                    if k < 0 {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "negative power of a sum".into(),
                        });
                    }
                    return Ok(inner.pow(k as u32));
                }
                Ok(inner)
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial such as `"z^10+z^9-z^7"` or `"3*z1^2*z2^-1"`.
pub fn parse_poly(text: &str, ambient_rank: usize) -> Result<LaurentPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        rank: ambient_rank,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;
    /// Univariate parse; use [`parse_poly`] for other ranks.
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s, 1)
    }
}
