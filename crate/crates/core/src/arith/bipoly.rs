//! Sparse bivariate integer polynomials in `a`, `b`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntPolynomial;
use crate::error::{Error, Result};

/// `Σ c_{ij} a^i b^j`, keyed by `(i, j)`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPolynomial {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl BiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::from(1), 0, 0)
    }

    pub fn monomial(c: BigInt, i: u32, j: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in terms {
            out.add_term(i, j, BigInt::from(c));
        }
        out
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    /// `Σ c_e (a/b)^e · b^total`, i.e. the homogenization of `P(a/b)` to
    /// total degree `total`. Fails if `deg P > total`.
    pub fn homogenize(p: &IntPolynomial, total: u32) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in p.coeffs().iter().enumerate() {
            let e = e as u32;
            if c.is_zero() {
                continue;
            }
            if e > total {
                return Err(Error::Internal(format!(
                    "homogenizing degree {e} term into total degree {total}"
                )));
            }
            out.add_term(e, total - e, c.clone());
        }
        Ok(out)
    }

    /// `P(ab)`.
    pub fn in_product(p: &IntPolynomial) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.coeffs().iter().enumerate() {
            out.add_term(e as u32, e as u32, c.clone());
        }
        out
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.coeffs.values().any(Signed::is_negative)
    }

    /// Exact division by `a^i b^j`.
    pub fn div_monomial(&self, i: u32, j: u32) -> Result<Self> {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.coeffs {
            if a < i || b < j {
                return Err(Error::InexactDivision);
            }
            out.add_term(a - i, b - j, c.clone());
        }
        Ok(out)
    }

    pub fn eval(&self, a: &BigRational, b: &BigRational) -> BigRational {
        use num_traits::pow::Pow;
        self.coeffs.iter().fold(BigRational::zero(), |acc, (&(i, j), c)| {
            acc + BigRational::from_integer(c.clone()) * Pow::pow(a, i) * Pow::pow(b, j)
        })
    }

    /// Specialize `b = 1`, giving a polynomial in `a`.
    pub fn at_b_one(&self) -> IntPolynomial {
        let deg = self.coeffs.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let mut v = vec![BigInt::zero(); deg + 1];
        for (&(i, _), c) in &self.coeffs {
            v[i as usize] += c;
        }
        IntPolynomial::new(v)
    }

    /// Terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(i, j), _)| i + j == k)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    pub fn max_exponent(&self) -> u32 {
        self.coeffs
            .keys()
            .map(|&(i, j)| i.max(j))
            .max()
            .unwrap_or(0)
    }

    /// Square coefficient grid: rows from the highest `b` exponent down to
    /// `b^0`, columns by increasing `a` exponent.
    pub fn to_array(&self) -> Vec<Vec<BigInt>> {
        let n = self.max_exponent();
        (0..=n)
            .rev()
            .map(|j| (0..=n).map(|i| self.coeff(i, j)).collect())
            .collect()
    }

    /// The grid of [`to_array`](Self::to_array), rows joined by `" / "`.
    pub fn array_string(&self) -> String {
        self.to_array()
            .iter()
            .map(|row| {
                row.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

impl<'a> Add<&'a BiPolynomial> for &'a BiPolynomial {
    type Output = BiPolynomial;
    fn add(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BiPolynomial> for &'a BiPolynomial {
    type Output = BiPolynomial;
    fn sub(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.coeffs {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl<'a> Mul<&'a BiPolynomial> for &'a BiPolynomial {
    type Output = BiPolynomial;
    fn mul(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = BiPolynomial::zero();
        for (&(i1, j1), c1) in &self.coeffs {
            for (&(i2, j2), c2) in &rhs.coeffs {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}
