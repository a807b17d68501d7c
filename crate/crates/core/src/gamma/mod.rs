//! Gamma lists and the factorial ratios they encode.
//!
//! A gamma list is a list of nonzero integers with zero sum, no pair
//! `γ_i + γ_j = 0`, content 1, and at least as many positive as negative
//! entries. It encodes
//!
//! ```text
//! c_n = Π_{γ_i<0} (−γ_i n)! / Π_{γ_i>0} (γ_i n)!
//! ```

mod hypergeom;
mod landau;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd};
use crate::error::GammaError;

pub use hypergeom::{hypergeom_data, HypergeomData};
pub use landau::{landau_check, landau_value, LandauResult};

/// A validated gamma list, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct GammaList {
    entries: Vec<i64>,
}

impl GammaList {
    pub fn new(mut entries: Vec<i64>) -> Result<Self, GammaError> {
        if entries.contains(&0) {
            return Err(GammaError::ZeroEntry);
        }
        if entries.iter().map(|&x| x as i128).sum::<i128>() != 0 {
            return Err(GammaError::NonzeroSum);
        }
        entries.sort_unstable();
        for (i, &a) in entries.iter().enumerate() {
            if entries[i + 1..].iter().any(|&b| a + b == 0) {
                return Err(GammaError::CancelingPair);
            }
        }
        let content = entries
            .iter()
            .fold(0u64, |acc, &x| gcd(acc, x.unsigned_abs()));
        if content > 1 {
            return Err(GammaError::CommonDivisor);
        }
        if entries.len() < 3 {
            return Err(GammaError::TooShort);
        }
        let r = entries.iter().filter(|&&x| x < 0).count();
        if entries.len() - r < r {
            return Err(GammaError::MoreNegative);
        }
        Ok(GammaList { entries })
    }

    /// Negate every entry before validating.
    pub fn new_flipped(entries: Vec<i64>) -> Result<Self, GammaError> {
        Self::new(entries.into_iter().map(|x| -x).collect())
    }

    /// Sorted entries `γ_1 ≤ … ≤ γ_l`.
    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// `l`
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of negative entries.
    pub fn r(&self) -> usize {
        self.entries.iter().filter(|&&x| x < 0).count()
    }

    /// Number of positive entries.
    pub fn s(&self) -> usize {
        self.len() - self.r()
    }

    /// Ambient dimension of the polytope, `l − 2`.
    pub fn dim(&self) -> usize {
        self.len() - 2
    }

    /// Dimension of the torus hypersurface, `l − 3`.
    pub fn kappa(&self) -> usize {
        self.len() - 3
    }

    /// `Σ_{γ_i>0} γ_i`, the normalized volume of the polytope.
    pub fn vol(&self) -> u64 {
        self.entries.iter().filter(|&&x| x > 0).map(|&x| x as u64).sum()
    }

    pub fn negatives(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries
            .iter()
            .filter(|&&x| x < 0)
            .map(|&x| x.unsigned_abs())
    }

    pub fn positives(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.iter().filter(|&&x| x > 0).map(|&x| x as u64)
    }

    /// `(m₋(N), m₊(N))`: how many negative / positive entries `N` divides.
    pub fn m_pm(&self, n: u64) -> (usize, usize) {
        let minus = self.negatives().filter(|&x| x % n == 0).count();
        let plus = self.positives().filter(|&x| x % n == 0).count();
        (minus, plus)
    }

    /// All `N ≥ 1` dividing at least one entry, ascending.
    pub fn relevant_moduli(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self
            .entries
            .iter()
            .flat_map(|&x| divisors(x.unsigned_abs()))
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Least common multiple of `|γ_i|`.
    pub fn lcm(&self) -> u64 {
        self.entries
            .iter()
            .fold(1u64, |acc, &x| crate::arith::lcm(acc, x.unsigned_abs()))
    }

    /// The gamma list as it is printed in the computer-algebra transcript
    /// format, `[*-30,-1,6,10,15*]`.
    pub fn transcript_form(&self) -> String {
        format!("[*{}*]", self.comma_form())
    }

    pub fn comma_form(&self) -> String {
        self.entries
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for GammaList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.comma_form())
    }
}

impl TryFrom<Vec<i64>> for GammaList {
    type Error = GammaError;
    fn try_from(v: Vec<i64>) -> Result<Self, GammaError> {
        GammaList::new(v)
    }
}

impl From<GammaList> for Vec<i64> {
    fn from(g: GammaList) -> Vec<i64> {
        g.entries
    }
}

/// Split a comma/space separated integer list, with optional `[…]`, `(…)` or
/// `[*…*]` brackets.
pub fn parse_integer_list(text: &str) -> Result<Vec<i64>, GammaError> {
    let t = text.trim();
    let t = t
        .strip_prefix("[*")
        .and_then(|s| s.strip_suffix("*]"))
        .or_else(|| t.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
        .or_else(|| t.strip_prefix('(').and_then(|s| s.strip_suffix(')')))
        .unwrap_or(t);
    let items: Vec<&str> = t
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(GammaError::Syntax);
    }
    items
        .into_iter()
        .map(|s| s.parse::<i64>().map_err(|_| GammaError::Syntax))
        .collect()
}

/// Parse and validate a gamma list.
pub fn parse_gamma(text: &str) -> Result<GammaList, GammaError> {
    GammaList::new(parse_integer_list(text)?)
}

impl FromStr for GammaList {
    type Err = GammaError;
    fn from_str(s: &str) -> Result<Self, GammaError> {
        parse_gamma(s)
    }
}

fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Exact `c_n` as a reduced rational.
pub fn factorial_ratio(g: &GammaList, n: u64) -> BigRational {
    let num: BigInt = g.negatives().map(|a| factorial(a * n)).product();
    let den: BigInt = g.positives().map(|a| factorial(a * n)).product();
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_parses() {
        let g = parse_gamma("-30,-1,6,10,15").unwrap();
        assert_eq!((g.r(), g.s(), g.dim(), g.kappa()), (2, 3, 3, 2));
        assert_eq!(g.vol(), 31);
        assert_eq!(parse_gamma("[*-30,-1,6,10,15*]").unwrap(), g);
        assert_eq!(parse_gamma(" 15 10 6 -1 -30 ").unwrap(), g);
        assert_eq!(g.transcript_form(), "[*-30,-1,6,10,15*]");
    }

    #[test]
    fn validation_errors() {
        assert_eq!(parse_gamma("-2,2"), Err(GammaError::CancelingPair));
        assert_eq!(parse_gamma("-4,-2,6"), Err(GammaError::CommonDivisor));
        assert_eq!(parse_gamma("-3,0,3"), Err(GammaError::ZeroEntry));
        assert_eq!(parse_gamma("-3,1,1"), Err(GammaError::NonzeroSum));
        assert_eq!(parse_gamma("-3,x,1"), Err(GammaError::Syntax));
        assert_eq!(parse_gamma(""), Err(GammaError::Syntax));
        assert_eq!(parse_gamma("-1,-1,-1,3"), Err(GammaError::MoreNegative));
        assert!(GammaList::new_flipped(vec![-1, -1, -1, 3]).is_ok());
    }

    #[test]
    fn m_pm_counts() {
        let g = parse_gamma("-30,-1,6,10,15").unwrap();
        assert_eq!(g.m_pm(1), (2, 3));
        assert_eq!(g.m_pm(30), (1, 0));
        assert_eq!(g.m_pm(7), (0, 0));
        assert_eq!(g.relevant_moduli(), vec![1, 2, 3, 5, 6, 10, 15, 30]);
    }

    #[test]
    fn factorial_ratios() {
        let g = parse_gamma("-30,-1,6,10,15").unwrap();
        assert!(factorial_ratio(&g, 0).is_one());
        let c1 = factorial_ratio(&g, 1);
        assert!(c1.is_integer());
        let expected = factorial(30) / (factorial(6) * factorial(10) * factorial(15));
        assert_eq!(c1.to_integer(), expected);

        let bad = parse_gamma("-5,-1,2,4").unwrap();
        assert_eq!(
            factorial_ratio(&bad, 1),
            BigRational::new(BigInt::from(5), BigInt::from(2))
        );
    }

    #[test]
    fn serde_validates() {
        let g: GammaList = serde_json::from_str("[-1,-30,6,10,15]").unwrap();
        assert_eq!(g.entries(), &[-30, -1, 6, 10, 15]);
        assert!(serde_json::from_str::<GammaList>("[-2,2]").is_err());
    }
}
