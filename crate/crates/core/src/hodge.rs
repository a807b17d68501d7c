//! Closed forms for `δ_N^#`, `δ^#(Δ, T)`, `δ(Δ, T)` and the E-polynomial of
//! primitive cohomology of the generic torus hypersurface `Z_t`.
//!
//! Everything is a finite sum over the moduli `N` dividing some `|γ_i|`;
//! other `N` have `m₋ = m₊ = 0` and contribute nothing.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, BiPolynomial, IntPolynomial};
use crate::error::{Error, Result};
use crate::gamma::GammaList;

/// `(m₋(N), m₊(N))`.
pub fn m_pm(g: &GammaList, n: u64) -> (usize, usize) {
    g.m_pm(n)
}

/// Exponent `Σ_i {jγ_i/N}` of the `j`-th term of `δ_N^#`.
fn fractional_exponent(g: &GammaList, j: u64, n: u64) -> usize {
    let n = n as i128;
    let num: i128 = g
        .entries()
        .iter()
        .map(|&x| (j as i128 * x as i128).rem_euclid(n))
        .sum();
    assert_eq!(num % n, 0, "Σ{{jγ_i/N}} is an integer because Σγ_i = 0");
    (num / n) as usize
}

/// `δ_N^#(T) = Σ_{1≤j<N, gcd(j,N)=1} T^{Σ_i {jγ_i/N}}`, with `δ_1^# = 1`.
pub fn delta_n_sharp(g: &GammaList, n: u64) -> IntPolynomial {
    assert!(n >= 1);
    if n == 1 {
        return IntPolynomial::one();
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    for j in (1..n).filter(|&j| gcd(j, n) == 1) {
        let e = fractional_exponent(g, j, n);
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigInt::from(0));
        }
        coeffs[e] += 1;
    }
    IntPolynomial::new(coeffs)
}

/// One row of the per-modulus table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusRow {
    pub n: u64,
    pub m_minus: usize,
    pub m_plus: usize,
    pub delta_n_sharp: IntPolynomial,
}

pub fn per_modulus_table(g: &GammaList) -> Vec<ModulusRow> {
    g.relevant_moduli()
        .into_iter()
        .map(|n| {
            let (m_minus, m_plus) = g.m_pm(n);
            ModulusRow {
                n,
                m_minus,
                m_plus,
                delta_n_sharp: delta_n_sharp(g, n),
            }
        })
        .collect()
}

/// `δ^#(Δ, T) = Σ_{m₋>m₊} (T^{m₋} − T^{m₊})/(T − 1) · δ_N^#(T)`.
pub fn delta_sharp(g: &GammaList) -> IntPolynomial {
    delta_sharp_from_table(&per_modulus_table(g))
}

fn delta_sharp_from_table(table: &[ModulusRow]) -> IntPolynomial {
    table
        .iter()
        .filter(|r| r.m_minus > r.m_plus)
        .map(|r| {
            let ratio = IntPolynomial::geometric(r.m_minus - r.m_plus).shift(r.m_plus);
            &ratio * &r.delta_n_sharp
        })
        .sum()
}

/// `δ(Δ, T)` from `Σ_N (T^{m₋} − 1)/(T − 1)·δ_N^#` and from the same sum
/// with `m₊`; the two must agree.
pub fn delta_closed_form(g: &GammaList) -> Result<IntPolynomial> {
    delta_closed_form_from_table(&per_modulus_table(g))
}

fn delta_closed_form_from_table(table: &[ModulusRow]) -> Result<IntPolynomial> {
    let via = |pick: fn(&ModulusRow) -> usize| -> IntPolynomial {
        table
            .iter()
            .map(|r| &IntPolynomial::geometric(pick(r)) * &r.delta_n_sharp)
            .sum()
    };
    let minus = via(|r| r.m_minus);
    let plus = via(|r| r.m_plus);
    if minus != plus {
        return Err(Error::Internal(format!(
            "δ variants disagree: via m₋ {minus}, via m₊ {plus}"
        )));
    }
    Ok(minus)
}

/// `E(Δ; a, b) = (δ^#(Δ; a, b) + δ⁰(Δ; a, b) − 1) / (ab)`.
pub fn e_polynomial(g: &GammaList) -> Result<BiPolynomial> {
    e_polynomial_from_table(g, &per_modulus_table(g))
}

fn e_polynomial_from_table(g: &GammaList, table: &[ModulusRow]) -> Result<BiPolynomial> {
    let l = g.len() as u32;
    let mut sharp = BiPolynomial::zero();
    let mut zero_part = BiPolynomial::zero();
    for r in table {
        if r.m_minus > r.m_plus {
            // ((x^{m₋} − x^{m₊})/(x − 1))·δ_N^#(x) at x = a/b, times b^{l−1}
            let ratio = IntPolynomial::geometric(r.m_minus - r.m_plus).shift(r.m_plus);
            let p = &ratio * &r.delta_n_sharp;
            sharp = &sharp + &BiPolynomial::homogenize(&p, l - 1)?;
        }
        let lo = r.m_minus.min(r.m_plus);
        if lo > 0 {
            let geo = BiPolynomial::in_product(&IntPolynomial::geometric(lo));
            let free = l - (r.m_minus + r.m_plus) as u32;
            let hom = BiPolynomial::homogenize(&r.delta_n_sharp, free)?;
            zero_part = &zero_part + &(&geo * &hom);
        }
    }
    let numerator = &(&sharp + &zero_part) - &BiPolynomial::one();
    let e = numerator.div_monomial(1, 1)?;
    if e.has_negative_coeff() {
        return Err(Error::Internal("negative E-polynomial coefficient".into()));
    }
    Ok(e)
}

/// Hodge data of the weight-κ part of the middle cohomology of `Z_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeSummary {
    pub delta_sharp: IntPolynomial,
    pub delta: IntPolynomial,
    pub e_poly: BiPolynomial,
    /// `h^{j, κ−j}` for `j = 0..=κ`.
    pub hodge_vector: Vec<BigInt>,
    pub effective_weight: usize,
    pub per_n_table: Vec<ModulusRow>,
    pub criterion_b: bool,
    pub criterion_c: bool,
}

/// Spread between the highest and lowest nonzero Hodge slot.
pub fn effective_weight(hodge_vector: &[BigInt]) -> Result<usize> {
    let nz = |b: &&BigInt| *b != &BigInt::from(0);
    let lo = hodge_vector.iter().position(|b| nz(&b));
    let hi = hodge_vector.iter().rposition(|b| nz(&b));
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok(hi - lo),
        _ => Err(Error::Internal("all Hodge numbers vanish".into())),
    }
}

pub fn hodge_summary(g: &GammaList) -> Result<HodgeSummary> {
    let table = per_modulus_table(g);
    let delta_sharp = delta_sharp_from_table(&table);
    let delta = delta_closed_form_from_table(&table)?;
    let e_poly = e_polynomial_from_table(g, &table)?;
    let kappa = g.kappa();
    let hodge_vector: Vec<BigInt> = (0..=kappa).map(|j| delta_sharp.coeff(j + 1)).collect();
    if delta_sharp.coeff(0) != BigInt::from(0) || delta_sharp.degree() > Some(kappa + 1) {
        return Err(Error::Internal(format!(
            "δ^# = {delta_sharp} outside T..T^(κ+1)"
        )));
    }
    let w = effective_weight(&hodge_vector)?;
    let (r, s) = (g.r(), g.s());
    // h^{κ,0} = … = h^{κ−r+2, r−2} = 0, i.e. slots κ−r+2..=κ vanish.
    let top_vanish = (kappa + 2).saturating_sub(r)..=kappa;
    let criterion_b = s > r && top_vanish.clone().all(|j| hodge_vector[j] == BigInt::from(0));
    let criterion_c = s > r && w == s - r - 1;
    Ok(HodgeSummary {
        delta_sharp,
        delta,
        e_poly,
        hodge_vector,
        effective_weight: w,
        per_n_table: table,
        criterion_b,
        criterion_c,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusRowView {
    pub n: u64,
    pub m_minus: usize,
    pub m_plus: usize,
    pub delta_n_sharp: String,
}

impl From<&ModulusRow> for ModulusRowView {
    fn from(r: &ModulusRow) -> Self {
        ModulusRowView {
            n: r.n,
            m_minus: r.m_minus,
            m_plus: r.m_plus,
            delta_n_sharp: r.delta_n_sharp.to_string(),
        }
    }
}
