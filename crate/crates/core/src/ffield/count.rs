use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::field::FiniteFieldCtx;
use super::trace::{TraceMethod, TraceResult};
use crate::error::{Error, Result};
use crate::gamma::GammaList;

/// Above this many evaluation cells a count needs `allow_slow`.
pub const COUNT_BUDGET: u64 = 200_000_000;

/// The three explicit hypersurface families with known point-count identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `−M/t + xyz + x⁵ + y³ + z² = 0` in `A³`; `#Z = q² + qH(t) + 1`.
    ChebyshevSurface,
    /// `x0x1² + x1x2² + x2x3² − (t/M)x3x4² + x0²x4 + x1x2x3 = 0` in `P⁴`;
    /// `#Z = q³ + q² + q + 1 − qH(t)`.
    CubicThreefold,
    /// `x1²x3 + x0x1x2 + x1x2² − (t/M)x2x6² + x3²x5 + x4²x6 + x4x5² + x0³ = 0`
    /// in `P⁶`; `#Z = q⁵ + q⁴ + q³ + q² + q + 1 − q²H(t)`.
    CubicFivefold,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::ChebyshevSurface,
        Family::CubicThreefold,
        Family::CubicFivefold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ChebyshevSurface => "chebyshev_surface",
            Family::CubicThreefold => "cubic_threefold",
            Family::CubicFivefold => "cubic_fivefold",
        }
    }

    pub fn gamma(self) -> GammaList {
        let entries = match self {
            Family::ChebyshevSurface => vec![-30, -1, 6, 10, 15],
            Family::CubicThreefold => vec![-11, -2, 1, 3, 4, 5],
            Family::CubicFivefold => vec![-63, -8, -2, 1, 4, 16, 21, 31],
        };
        GammaList::new(entries).expect("family gamma lists are valid")
    }

    /// The family identity is asserted only for `p` above this.
    pub fn prime_bound(self) -> u64 {
        match self {
            Family::ChebyshevSurface => 5,
            Family::CubicThreefold => 11,
            Family::CubicFivefold => 31,
        }
    }

    /// Cells scanned by the count over `F_q`.
    pub fn cells(self, q: u64) -> u64 {
        match self {
            Family::ChebyshevSurface => q.saturating_pow(3),
            Family::CubicThreefold => q.saturating_pow(4),
            Family::CubicFivefold => q.saturating_pow(5),
        }
    }

    /// The fivefold count is always slow enough to need an explicit opt-in.
    pub fn always_slow(self) -> bool {
        matches!(self, Family::CubicFivefold)
    }

    /// `H(t)` from `#Z`, or `None` when the identity's division is inexact.
    pub fn implied_trace(self, count: u64, q: u64) -> Option<i64> {
        let (n, q) = (count as i128, q as i128);
        let (num, den) = match self {
            Family::ChebyshevSurface => (n - q * q - 1, q),
            Family::CubicThreefold => (q * q * q + q * q + q + 1 - n, q),
            Family::CubicFivefold => ((0..6).map(|i| q.pow(i)).sum::<i128>() - n, q * q),
        };
        (num % den == 0).then(|| (num / den) as i64)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointCount {
    pub family: Family,
    pub t: BigRational,
    pub q: u64,
    pub count: u64,
    pub implied_trace: TraceResult,
}

/// Number of `x ∈ F_q` with `ax² + bx + c = 0` (odd `q`).
fn quadratic_roots(ctx: &FiniteFieldCtx, a: u32, b: u32, c: u32) -> u64 {
    if a != 0 {
        let disc = ctx.sub(ctx.mul(b, b), ctx.mul(ctx.from_int(4), ctx.mul(a, c)));
        (1 + ctx.quadratic_char(disc)) as u64
    } else if b != 0 {
        1
    } else if c == 0 {
        ctx.q()
    } else {
        0
    }
}

/// Base-`q` digits of `idx`, little end first.
fn digits<const N: usize>(mut idx: u64, q: u64) -> [u32; N] {
    let mut out = [0u32; N];
    for d in out.iter_mut() {
        *d = (idx % q) as u32;
        idx /= q;
    }
    out
}

/// Affine count of `xyz + x⁵ + y³ + z² = c`, by brute force over `F_q³`.
pub(crate) fn count_chebyshev(ctx: &FiniteFieldCtx, c: u32) -> u64 {
    let q = ctx.q() as u32;
    (0..q)
        .into_par_iter()
        .map(|x| {
            let x5 = ctx.pow(x, 5);
            let mut n = 0u64;
            for y in 0..q {
                let base = ctx.add(x5, ctx.pow(y, 3));
                let xy = ctx.mul(x, y);
                for z in 0..q {
                    let v = ctx.add(base, ctx.add(ctx.mul(xy, z), ctx.mul(z, z)));
                    if v == c {
                        n += 1;
                    }
                }
            }
            n
        })
        .sum()
}

/// Projective count of the threefold with coefficient `c = t/M`, solving
/// the quadratic in `x4` over each `(x0, x1, x2, x3)`.
pub(crate) fn count_threefold(ctx: &FiniteFieldCtx, c: u32) -> u64 {
    let q = ctx.q();
    let minus_c = ctx.neg(c);
    let affine: u64 = (0..q.pow(4))
        .into_par_iter()
        .map(|idx| {
            let [x0, x1, x2, x3] = digits::<4>(idx, q);
            let a = ctx.mul(minus_c, x3);
            let b = ctx.mul(x0, x0);
            let x1x2 = ctx.mul(x1, x2);
            let rest = [
                ctx.mul(x0, ctx.mul(x1, x1)),
                ctx.mul(x1x2, x2),
                ctx.mul(x2, ctx.mul(x3, x3)),
                ctx.mul(x1x2, x3),
            ]
            .into_iter()
            .fold(0, |s, v| ctx.add(s, v));
            quadratic_roots(ctx, a, b, rest)
        })
        .sum();
    (affine - 1) / (q - 1)
}

/// Projective count of the fivefold with coefficient `c = t/M`. Points with
/// only `x5` nonzero contribute one; every other point is normalized by its
/// first nonzero coordinate among `x0..x4, x6`, and `x5` solves a quadratic.
pub(crate) fn count_fivefold(ctx: &FiniteFieldCtx, c: u32) -> u64 {
    let q = ctx.q();
    let minus_c = ctx.neg(c);
    let per_lead = |lead: usize| -> u64 {
        (0..q.pow(5 - lead as u32))
            .into_par_iter()
            .map(|idx| {
                // six coordinates (x0, x1, x2, x3, x4, x6)
                let free = digits::<5>(idx, q);
                let mut v = [0u32; 6];
                v[lead] = 1;
                v[lead + 1..].copy_from_slice(&free[..5 - lead]);
                let [x0, x1, x2, x3, x4, x6] = v;
                let m = |a, b| ctx.mul(a, b);
                let rest = [
                    m(m(x1, x1), x3),
                    m(m(x0, x1), x2),
                    m(x1, m(x2, x2)),
                    m(minus_c, m(x2, m(x6, x6))),
                    m(m(x4, x4), x6),
                    m(x0, m(x0, x0)),
                ]
                .into_iter()
                .fold(0, |s, t| ctx.add(s, t));
                quadratic_roots(ctx, x4, m(x3, x3), rest)
            })
            .sum()
    };
    1 + (0..6).map(per_lead).sum::<u64>()
}

fn reduce(t: &BigRational, ctx: &FiniteFieldCtx) -> Result<u32> {
    let p = BigInt::from(ctx.p());
    let red = |x: &BigInt| x.mod_floor(&p).to_u32().expect("below p");
    let (a, b) = (red(t.numer()), red(t.denom()));
    if a == 0 || b == 0 {
        return Err(Error::BadReduction(ctx.p()));
    }
    Ok(ctx.mul(a, ctx.inv(b).expect("nonzero")))
}

/// `M = Π_{γ_i<0} |γ_i|^{|γ_i|} / Π_{γ_i>0} γ_i^{γ_i}` in `F_p`.
fn m_constant(g: &GammaList, ctx: &FiniteFieldCtx) -> u32 {
    let pw = |a: u64| ctx.pow(ctx.from_int(a as i64), a);
    let num = g.negatives().fold(1, |acc, a| ctx.mul(acc, pw(a)));
    let den = g.positives().fold(1, |acc, a| ctx.mul(acc, pw(a)));
    ctx.mul(num, ctx.inv(den).expect("good prime"))
}

/// Exact point count of the fiber at `t`, and the trace it implies.
pub fn point_count_family(
    g: &GammaList,
    family: Family,
    t: &BigRational,
    ctx: &FiniteFieldCtx,
    allow_slow: bool,
) -> Result<PointCount> {
    if *g != family.gamma() {
        return Err(Error::FamilyMismatch(family.name()));
    }
    let p = ctx.p();
    if p <= family.prime_bound() {
        return Err(Error::FamilyPrime {
            p,
            bound: family.prime_bound(),
        });
    }
    let q = ctx.q();
    if !allow_slow && (family.always_slow() || family.cells(q) > COUNT_BUDGET) {
        return Err(Error::SlowRefused);
    }
    let t_red = reduce(t, ctx)?;
    let m = m_constant(g, ctx);
    let count = match family {
        Family::ChebyshevSurface => count_chebyshev(ctx, ctx.mul(m, ctx.inv(t_red).unwrap())),
        Family::CubicThreefold => count_threefold(ctx, ctx.mul(t_red, ctx.inv(m).unwrap())),
        Family::CubicFivefold => count_fivefold(ctx, ctx.mul(t_red, ctx.inv(m).unwrap())),
    };
    let value = family.implied_trace(count, q).ok_or_else(|| {
        Error::Internal(format!(
            "{family} count {count} over F_{q} does not fit the point-count identity"
        ))
    })?;
    Ok(PointCount {
        family,
        t: t.clone(),
        q,
        count,
        implied_trace: TraceResult {
            t: t.clone(),
            q,
            value,
            method: TraceMethod::PointCount,
            singular_fiber: t_red == 1,
            uncalibrated: !t.denom().is_one(),
            residual: 0.0,
            within_weil_bound: true,
        },
    })
}
