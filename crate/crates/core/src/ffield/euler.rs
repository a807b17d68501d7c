use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::field::{make_field_with_limit, DEFAULT_FIELD_LIMIT};
use super::trace::HgmTracer;
use crate::arith::IntPolynomial;
use crate::error::{Error, Result};
use crate::gamma::{hypergeom_data, GammaList};
use crate::hodge::hodge_summary;

/// `det(1 − F·x)` on the motive at a good `(p, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerFactor {
    pub poly: IntPolynomial,
    pub p: u64,
    pub t: BigRational,
    /// Weight `w` in `c_{D−k} = ε·p^{w(D/2−k)}·c_k`.
    pub weight: usize,
    pub sign: i8,
    /// `H(t)` over `F_{p^k}` for `k = 1, 2, …`.
    pub power_sums: Vec<i64>,
}

impl EulerFactor {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Complex roots with multiplicity.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let mut out = Vec::new();
        let mut rest = self.poly.clone();
        while rest.degree().unwrap_or(0) > 0 {
            let sf = rest.square_free_part()?;
            out.extend(simple_roots(&sf));
            rest = rest.exact_div(&sf)?;
        }
        Ok(out)
    }

    /// `max | |ρ|·p^{w/2} − 1 |` over roots `ρ`: zero when every inverse
    /// root has absolute value `p^{w/2}`.
    pub fn root_modulus_defect(&self) -> Result<f64> {
        let scale = (self.p as f64).powf(self.weight as f64 / 2.0);
        Ok(self
            .roots()?
            .iter()
            .map(|r| (r.norm() * scale - 1.0).abs())
            .fold(0.0, f64::max))
    }
}

/// Roots of a square-free integer polynomial: Durand–Kerner, then Newton
/// polishing.
fn simple_roots(poly: &IntPolynomial) -> Vec<Complex64> {
    let c: Vec<f64> = poly.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a);
    let deriv = |z: Complex64| {
        monic
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::zero(), |acc, (i, &a)| acc * z + a * i as f64)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..1000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = deriv(*r);
            if d.norm() > 0.0 {
                *r -= eval(*r) / d;
            }
        }
    }
    z
}

/// `k·c_k = −Σ_{i=1..k} p_i·c_{k−i}`.
fn newton_coefficients(power_sums: &[i64]) -> Result<Vec<BigInt>> {
    let mut c = vec![BigInt::from(1)];
    for k in 1..=power_sums.len() {
        let s: BigInt = (1..=k).map(|i| &c[k - i] * power_sums[i - 1]).sum();
        let (quot, rem) = (-s).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "Newton recursion not integral at k = {k}; traces are inconsistent"
            )));
        }
        c.push(quot);
    }
    Ok(c)
}

/// Signs `ε` for which the known coefficients satisfy
/// `c_j = ε·p^{w(2j−D)/2}·c_{D−j}` whenever `2j ≥ D`.
fn consistent_signs(c: &[BigInt], degree: usize, weight: usize, p: u64) -> Vec<i8> {
    let top = (c.len() - 1).min(degree);
    [1i8, -1]
        .into_iter()
        .filter(|&eps| {
            (degree.div_ceil(2)..=top).all(|j| {
                let e = (weight * (2 * j - degree) / 2) as u32;
                let rhs = &c[degree - j] * BigInt::from(p).pow(e) * eps;
                c[j] == rhs
            })
        })
        .collect()
}

pub fn euler_factor(g: &GammaList, t: &BigRational, p: u64) -> Result<EulerFactor> {
    euler_factor_with_limit(g, t, p, DEFAULT_FIELD_LIMIT)
}

/// Reconstruct the Euler factor from traces over `F_{p^k}`,
/// `k = 1..⌈D/2⌉+1`, extending `k` only while the sign stays ambiguous.
pub fn euler_factor_with_limit(
    g: &GammaList,
    t: &BigRational,
    p: u64,
    limit: u64,
) -> Result<EulerFactor> {
    let degree = hypergeom_data(g).degree;
    let weight = hodge_summary(g)?.effective_weight;
    if (weight * degree) % 2 == 1 {
        return Err(Error::Invalid(format!(
            "weight {weight} with odd degree {degree} has no integral functional equation"
        )));
    }
    let trace_at = |k: u32| -> Result<i64> {
        let ctx = make_field_with_limit(p, k, limit)?;
        Ok(HgmTracer::new(g, &ctx)?.trace(t)?.value)
    };
    let mut power_sums = Vec::new();
    for k in 1..=degree.div_ceil(2) as u32 + 1 {
        power_sums.push(trace_at(k)?);
    }
    let (c, sign) = loop {
        let c = newton_coefficients(&power_sums)?;
        match consistent_signs(&c, degree, weight, p)[..] {
            [eps] => break (c, eps),
            [] => return Err(Error::NoConsistentSign),
            _ if power_sums.len() < degree => {
                power_sums.push(trace_at(power_sums.len() as u32 + 1).map_err(|e| match e {
                    Error::FieldLimit { .. } => Error::NoConsistentSign,
                    other => other,
                })?);
            }
            _ => break (c, 1),
        }
    };
    let coeffs: Vec<BigInt> = (0..=degree)
        .map(|j| {
            if 2 * j <= degree || j < c.len() {
                c[j].clone()
            } else {
                let e = (weight * (2 * j - degree) / 2) as u32;
                &c[degree - j] * BigInt::from(p).pow(e) * sign
            }
        })
        .collect();
    let poly = IntPolynomial::new(coeffs);
    if poly.coeff(1) != BigInt::from(-power_sums[0]) {
        return Err(Error::Internal("x-coefficient differs from −H_p(t)".into()));
    }
    Ok(EulerFactor {
        poly,
        p,
        t: t.clone(),
        weight,
        sign,
        power_sums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::parse_gamma;

    fn two() -> BigRational {
        BigRational::from_integer(2.into())
    }

    #[test]
    fn newton_recursion() {
        // 1 − e1 x + e2 x² for roots 2, 3: p1 = 5, p2 = 13
        let c = newton_coefficients(&[5, 13]).unwrap();
        assert_eq!(c, vec![1, -5, 6].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert!(newton_coefficients(&[1, 0]).is_err());
    }

    #[test]
    fn chebyshev_p7() {
        let g = parse_gamma("-30,-1,6,10,15").unwrap();
        let e = euler_factor(&g, &two(), 7).unwrap();
        assert_eq!(e.poly.display_in("x"), "x^8 + x^5 + x^3 + 1");
        assert_eq!(e.power_sums.len(), 5);
        assert!(e.root_modulus_defect().unwrap() < 1e-9);
        assert_eq!(e.roots().unwrap().len(), 8);
    }

    #[test]
    fn sign_detection() {
        let c: Vec<BigInt> = [1, 0, 2, 0].into_iter().map(BigInt::from).collect();
        // degree 4, weight 0: c3 = ε c1 = 0 either way, c2 = ε c2 forces ε = 1
        assert_eq!(consistent_signs(&c, 4, 0, 7), vec![1]);
        let c: Vec<BigInt> = [1, 3, 0, -3].into_iter().map(BigInt::from).collect();
        assert_eq!(consistent_signs(&c, 4, 0, 7), vec![-1]);
    }
}
