use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::field::FiniteFieldCtx;
use super::gauss::{gauss_sums, CompensatedSum};
use crate::error::{Error, Result};
use crate::gamma::{hypergeom_data, GammaList};
use crate::hodge::hodge_summary;

/// Largest accepted distance from the nearest integer.
pub const ROUNDING_TOLERANCE: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceMethod {
    CharacterSum,
    PointCount,
}

impl TraceMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceMethod::CharacterSum => "character_sum",
            TraceMethod::PointCount => "point_count",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceResult {
    pub t: BigRational,
    pub q: u64,
    pub value: i64,
    pub method: TraceMethod,
    /// `t ≡ 1 (mod p)`: the fiber is singular there.
    pub singular_fiber: bool,
    /// `t` has a denominator; the calibration was fixed on integer `t` only.
    pub uncalibrated: bool,
    pub residual: f64,
    /// `|H| ≤ D·q^{w/2}` with `D` the motive degree and `w` the effective weight.
    pub within_weil_bound: bool,
}

/// How `t` enters the character `ω(·)^m`. The frozen choice is
/// `(−1)^{vol}·M·t^{−1}`; the other seven are kept for the calibration test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Convention {
    pub vol_sign: bool,
    pub m_inverse: bool,
    pub t_inverse: bool,
}

pub(crate) const CALIBRATED: Convention = Convention {
    vol_sign: true,
    m_inverse: false,
    t_inverse: true,
};

/// Precomputed per-`m` terms of the character sum for one gamma list and
/// one field; evaluating at a new `t` is then one pass over `m`.
pub struct HgmTracer<'a> {
    gamma: GammaList,
    ctx: &'a FiniteFieldCtx,
    weights: Vec<Complex64>,
    m_mod_p: u32,
    degree: usize,
    effective_weight: usize,
}

/// `M` reduced mod `p`, where `M = Π_{γ_i<0} |γ_i|^{|γ_i|} / Π_{γ_i>0} γ_i^{γ_i}`.
fn m_constant_mod(g: &GammaList, ctx: &FiniteFieldCtx) -> u32 {
    let pw = |a: u64| ctx.pow(ctx.from_int(a as i64), a);
    let num = g.negatives().fold(1, |acc, a| ctx.mul(acc, pw(a)));
    let den = g.positives().fold(1, |acc, a| ctx.mul(acc, pw(a)));
    ctx.mul(num, ctx.inv(den).expect("good prime divides no entry"))
}

fn reduce_mod(x: &BigInt, p: u64) -> u32 {
    x.mod_floor(&BigInt::from(p)).to_u32().expect("residue below p")
}

impl<'a> HgmTracer<'a> {
    pub fn new(g: &GammaList, ctx: &'a FiniteFieldCtx) -> Result<Self> {
        let p = ctx.p();
        if g.entries().iter().any(|&x| x.unsigned_abs() % p == 0) {
            return Err(Error::BadPrime(p));
        }
        let gauss = gauss_sums(ctx)?;
        let n = ctx.q() - 1;
        let q = ctx.q() as f64;
        let stratum = |m: u64| {
            let big_n = n / num_integer::gcd(m, n);
            let (minus, plus) = g.m_pm(big_n);
            minus.min(plus) as i32
        };
        let s0 = stratum(0);
        let sign = if g.len().is_multiple_of(2) { 1.0 } else { -1.0 };
        let scale = sign / (1.0 - q);
        let weights = (0..n)
            .map(|m| {
                let prod = g
                    .entries()
                    .iter()
                    .fold(Complex64::new(1.0, 0.0), |acc, &x| acc * gauss.get(x * m as i64));
                prod * (q.powi(stratum(m) - s0) * scale)
            })
            .collect();
        let hodge = hodge_summary(g)?;
        Ok(HgmTracer {
            gamma: g.clone(),
            ctx,
            weights,
            m_mod_p: m_constant_mod(g, ctx),
            degree: hypergeom_data(g).degree,
            effective_weight: hodge.effective_weight,
        })
    }

    pub fn field(&self) -> &FiniteFieldCtx {
        self.ctx
    }

    fn reduce_t(&self, t: &BigRational) -> Result<u32> {
        let p = self.ctx.p();
        let (a, b) = (reduce_mod(t.numer(), p), reduce_mod(t.denom(), p));
        if a == 0 || b == 0 {
            return Err(Error::BadReduction(p));
        }
        Ok(self.ctx.mul(a, self.ctx.inv(b).expect("nonzero")))
    }

    pub(crate) fn trace_with(&self, t: &BigRational, conv: Convention) -> Result<TraceResult> {
        let ctx = self.ctx;
        let t_red = self.reduce_t(t)?;
        let t_part = if conv.t_inverse { ctx.inv(t_red).expect("nonzero") } else { t_red };
        let m_part = if conv.m_inverse { ctx.inv(self.m_mod_p).expect("nonzero") } else { self.m_mod_p };
        let mut arg = ctx.mul(m_part, t_part);
        if conv.vol_sign && self.gamma.vol() % 2 == 1 {
            arg = ctx.neg(arg);
        }
        let log_arg = ctx.dlog(arg).expect("nonzero argument") as u64;
        let n = ctx.q() - 1;
        let mut acc = CompensatedSum::default();
        for (m, w) in self.weights.iter().enumerate() {
            let idx = (m as u64 * log_arg) % n;
            acc.add(w * Complex64::from_polar(1.0, TAU * idx as f64 / n as f64));
        }
        let z = acc.value();
        let value = z.re.round();
        let residual = (z.re - value).abs().max(z.im.abs());
        if residual > ROUNDING_TOLERANCE || !residual.is_finite() {
            return Err(Error::RoundingResidual { residual });
        }
        let value = value as i64;
        let bound = self.degree as f64 * (ctx.q() as f64).powf(self.effective_weight as f64 / 2.0);
        Ok(TraceResult {
            t: t.clone(),
            q: ctx.q(),
            value,
            method: TraceMethod::CharacterSum,
            singular_fiber: t_red == 1,
            uncalibrated: !t.denom().is_one(),
            residual,
            within_weil_bound: (value.abs() as f64) <= bound + 1e-9,
        })
    }

    pub fn trace(&self, t: &BigRational) -> Result<TraceResult> {
        self.trace_with(t, CALIBRATED)
    }
}

/// `H(t)` over `ctx`.
pub fn hgm_trace(g: &GammaList, t: &BigRational, ctx: &FiniteFieldCtx) -> Result<TraceResult> {
    HgmTracer::new(g, ctx)?.trace(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;
    use crate::gamma::parse_gamma;

    const Q7: [i64; 6] = [0, 0, 1, -1, -1, 0];
    const Q23: [i64; 22] = [
        0, 0, 1, -1, 0, 0, -1, 2, -1, 0, 1, 0, -2, -2, 0, 1, 0, 0, 1, 0, -1, 1,
    ];

    fn int(t: i64) -> BigRational {
        BigRational::from_integer(t.into())
    }

    fn traces(g: &GammaList, p: u64, conv: Convention) -> Option<Vec<i64>> {
        let f = make_field(p, 1).unwrap();
        let tr = HgmTracer::new(g, &f).unwrap();
        (1..p as i64)
            .map(|t| tr.trace_with(&int(t), conv).ok().map(|r| r.value))
            .collect()
    }

    #[test]
    fn calibration_is_unique_and_frozen() {
        let g = parse_gamma("-30,-1,6,10,15").unwrap();
        let mut matching = Vec::new();
        for bits in 0..8u8 {
            let conv = Convention {
                vol_sign: bits & 1 != 0,
                m_inverse: bits & 2 != 0,
                t_inverse: bits & 4 != 0,
            };
            if traces(&g, 7, conv).as_deref() == Some(&Q7[..])
                && traces(&g, 23, conv).as_deref() == Some(&Q23[..])
            {
                matching.push(conv);
            }
        }
        assert_eq!(matching, vec![CALIBRATED]);
    }

    #[test]
    fn chebyshev_transcripts() {
        let g = parse_gamma("-30,-1,6,10,15").unwrap();
        assert_eq!(traces(&g, 7, CALIBRATED).unwrap(), Q7);
        assert_eq!(traces(&g, 23, CALIBRATED).unwrap(), Q23);
    }

    #[test]
    fn flags_and_errors() {
        let g = parse_gamma("-30,-1,6,10,15").unwrap();
        let f = make_field(7, 1).unwrap();
        let r = hgm_trace(&g, &int(8), &f).unwrap();
        assert!(r.singular_fiber && !r.uncalibrated && r.within_weil_bound);
        let half = BigRational::new(1.into(), 2.into());
        assert!(hgm_trace(&g, &half, &f).unwrap().uncalibrated);
        assert!(matches!(hgm_trace(&g, &int(14), &f), Err(Error::BadReduction(7))));
        let f5 = make_field(5, 1).unwrap();
        assert!(matches!(hgm_trace(&g, &int(2), &f5), Err(Error::BadPrime(5))));
    }

    #[test]
    fn threefold_traces_are_weight_one() {
        let g = parse_gamma("-11,-2,1,3,4,5").unwrap();
        let f = make_field(13, 1).unwrap();
        let tr = HgmTracer::new(&g, &f).unwrap();
        for t in 1..13 {
            let r = tr.trace(&int(t)).unwrap();
            assert!(r.within_weil_bound, "t = {t}: {}", r.value);
        }
    }
}
