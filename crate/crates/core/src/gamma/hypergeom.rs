use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Pow;

use super::GammaList;
use crate::arith::{cyclotomic, gcd, IntPolynomial};

/// Local monodromy and hypergeometric parameters of a gamma list.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomData {
    /// `e_N = m₊(N) − m₋(N)`, nonzero values only.
    pub cyclotomic_exponents: BTreeMap<u64, i64>,
    /// Parameters `j/N`, `gcd(j, N) = 1`, from the `e_N < 0` factors.
    pub alpha: Vec<Rational64>,
    /// Parameters from the `e_N > 0` factors; `N = 1` contributes `1`.
    pub beta: Vec<Rational64>,
    /// Characteristic polynomial of monodromy at infinity.
    pub q_inf: IntPolynomial,
    /// Characteristic polynomial of the inverse monodromy at zero.
    pub q_zero: IntPolynomial,
    /// `Π_{γ_i<0} |γ_i|^{|γ_i|} / Π_{γ_i>0} γ_i^{γ_i}`
    pub m_constant: BigRational,
    pub vol: u64,
    pub degree: usize,
}

impl HypergeomData {
    /// `Φ_N^e` factors of `q_inf` (`inf = true`) or `q_zero`.
    pub fn factors(&self, inf: bool) -> Vec<(u64, u32)> {
        self.cyclotomic_exponents
            .iter()
            .filter(|(_, &e)| (e < 0) == inf)
            .map(|(&n, &e)| (n, e.unsigned_abs() as u32))
            .collect()
    }

    /// Render a factor list as `Φ_1^2·Φ_3`.
    pub fn factor_string(&self, inf: bool) -> String {
        self.factors(inf)
            .iter()
            .map(|&(n, e)| {
                if e == 1 {
                    format!("Φ_{n}")
                } else {
                    format!("Φ_{n}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

fn primitive_fractions(n: u64) -> impl Iterator<Item = Rational64> {
    (1..=n)
        .filter(move |&j| gcd(j, n) == 1)
        .map(move |j| Rational64::new(j as i64, n as i64))
}

pub fn hypergeom_data(g: &GammaList) -> HypergeomData {
    let mut exps = BTreeMap::new();
    for n in g.relevant_moduli() {
        let (minus, plus) = g.m_pm(n);
        let e = plus as i64 - minus as i64;
        if e != 0 {
            exps.insert(n, e);
        }
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut q_inf = IntPolynomial::one();
    let mut q_zero = IntPolynomial::one();
    for (&n, &e) in &exps {
        let phi = cyclotomic(n).pow(e.unsigned_abs() as u32);
        let (params, poly) = if e < 0 {
            (&mut alpha, &mut q_inf)
        } else {
            (&mut beta, &mut q_zero)
        };
        for _ in 0..e.unsigned_abs() {
            params.extend(primitive_fractions(n));
        }
        *poly = &*poly * &phi;
    }
    let power = |a: u64| Pow::pow(BigInt::from(a), a);
    let num: BigInt = g.negatives().map(power).product();
    let den: BigInt = g.positives().map(power).product();
    let degree = alpha.len();
    debug_assert_eq!(degree, beta.len());
    HypergeomData {
        cyclotomic_exponents: exps,
        alpha,
        beta,
        q_inf,
        q_zero,
        m_constant: BigRational::new(num, den),
        vol: g.vol(),
        degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;
    use crate::gamma::parse_gamma;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn sorted(mut v: Vec<Rational64>) -> Vec<Rational64> {
        v.sort();
        v
    }

    #[test]
    fn chebyshev_monodromy() {
        let h = hypergeom_data(&parse_gamma("-30,-1,6,10,15").unwrap());
        assert_eq!(h.q_inf, cyclotomic(30));
        let q0: IntPolynomial = [1, 2, 3, 5].into_iter().map(cyclotomic).product();
        assert_eq!(h.q_zero, q0);
        assert_eq!(h.degree, 8);
        let alpha: Vec<_> = [1, 7, 11, 13, 17, 19, 23, 29].iter().map(|&j| r(j, 30)).collect();
        assert_eq!(sorted(h.alpha.clone()), alpha);
        let beta = vec![r(1, 1), r(1, 2), r(1, 3), r(2, 3), r(1, 5), r(2, 5), r(3, 5), r(4, 5)];
        assert_eq!(sorted(h.beta.clone()), sorted(beta));
        let m = BigRational::new(
            Pow::pow(BigInt::from(30), 30u32),
            Pow::pow(BigInt::from(6), 6u32)
                * Pow::pow(BigInt::from(10), 10u32)
                * Pow::pow(BigInt::from(15), 15u32),
        );
        assert_eq!(h.m_constant, m);
        assert_eq!(h.vol, 31);
    }

    #[test]
    fn threefold_monodromy() {
        let h = hypergeom_data(&parse_gamma("-11,-2,1,3,4,5").unwrap());
        assert_eq!(h.q_inf, cyclotomic(11));
        assert_eq!(h.degree, 10);
        assert_eq!(h.vol, 13);
        // The N = 1 row has (m₋, m₊) = (2, 4), so Φ_1 enters squared.
        assert_eq!(h.factors(false), vec![(1, 2), (3, 1), (4, 1), (5, 1)]);
    }

    #[test]
    fn fivefold_monodromy() {
        let h = hypergeom_data(&parse_gamma("-63,-8,-2,1,4,16,21,31").unwrap());
        let q0: IntPolynomial = [1, 1, 4, 16, 31].into_iter().map(cyclotomic).product();
        assert_eq!(h.q_zero, q0);
        assert_eq!(h.degree, 42);
        assert_eq!(h.vol, 73);
        // N = 9 has (m₋, m₊) = (1, 0) and N = 3 has (1, 1): Φ_9, not Φ_3.
        assert_eq!(h.factors(true), vec![(9, 1), (63, 1)]);
    }

    #[test]
    fn degree_balance() {
        for s in ["-30,-1,6,10,15", "-5,-1,2,4", "-12,-7,1,2,3,13", "-9,-4,6,7"] {
            let h = hypergeom_data(&parse_gamma(s).unwrap());
            let total: i64 = h
                .cyclotomic_exponents
                .iter()
                .map(|(&n, &e)| e * euler_phi(n) as i64)
                .sum();
            assert_eq!(total, 0);
            assert_eq!(h.q_inf.degree(), h.q_zero.degree());
            assert!(h.alpha.iter().all(|a| !h.beta.contains(a)));
        }
    }
}
