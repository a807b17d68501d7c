use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::field::FiniteFieldCtx;
use crate::error::{Error, Result};

/// Above this field size Gauss sums go through an FFT.
pub const DIRECT_GAUSS_LIMIT: u64 = 10_000;

/// Gauss sums `g[m] = Σ_{x≠0} ω^m(x) ψ(x)` for `m = 0..q−1`, where
/// `ω(g^a) = e^{2πi a/(q−1)}` for the field generator `g` and
/// `ψ(x) = e^{2πi Tr(x)/p}`.
#[derive(Clone, Debug)]
pub struct GaussSumTable {
    pub values: Vec<Complex64>,
    /// `max_m ||g[m]| − √q|` over `m ≠ 0`, together with `|g[0] + 1|`.
    pub error_bound: f64,
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

fn neumaier(acc: &mut (f64, f64), x: f64) {
    let t = acc.0 + x;
    if acc.0.abs() >= x.abs() {
        acc.1 += (acc.0 - t) + x;
    } else {
        acc.1 += (x - t) + acc.0;
    }
    acc.0 = t;
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, z.re);
        neumaier(&mut self.im, z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// `e^{2πi j/n}` for `j = 0..n`.
fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / n as f64))
        .collect()
}

/// The sequence `ψ(g^a)`, `a = 0..q−1`.
fn additive_along_generator(ctx: &FiniteFieldCtx) -> Vec<Complex64> {
    let zeta_p = roots_of_unity(ctx.p() as usize);
    (0..ctx.q() - 1)
        .map(|a| zeta_p[ctx.trace(ctx.exp(a)) as usize])
        .collect()
}

pub fn gauss_sums(ctx: &FiniteFieldCtx) -> Result<GaussSumTable> {
    let values = if ctx.q() <= DIRECT_GAUSS_LIMIT {
        gauss_direct(ctx)
    } else {
        gauss_fft(ctx)
    };
    let sqrt_q = (ctx.q() as f64).sqrt();
    let error_bound = values
        .iter()
        .skip(1)
        .map(|g| (g.norm() - sqrt_q).abs())
        .fold((values[0] + 1.0).norm(), f64::max);
    let tolerance = 1e-3 * sqrt_q;
    if error_bound > tolerance {
        return Err(Error::GaussSumAccuracy {
            bound: error_bound,
            tolerance,
        });
    }
    Ok(GaussSumTable {
        values,
        error_bound,
    })
}

/// `O(q²)` summation with a root-of-unity table and compensated sums.
pub fn gauss_direct(ctx: &FiniteFieldCtx) -> Vec<Complex64> {
    let n = (ctx.q() - 1) as usize;
    let psi = additive_along_generator(ctx);
    let zeta = roots_of_unity(n);
    (0..n)
        .map(|m| {
            let mut acc = CompensatedSum::default();
            for (a, &ps) in psi.iter().enumerate() {
                acc.add(zeta[(m * a) % n] * ps);
            }
            acc.value()
        })
        .collect()
}

/// Unnormalized inverse DFT of `ψ(g^a)`: `g[m] = Σ_a e^{+2πi ma/(q−1)} ψ(g^a)`.
pub fn gauss_fft(ctx: &FiniteFieldCtx) -> Vec<Complex64> {
    let mut buf = additive_along_generator(ctx);
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_inverse(buf.len()).process(&mut buf);
    buf
}

impl GaussSumTable {
    pub fn get(&self, m: i64) -> Complex64 {
        let n = self.values.len() as i64;
        self.values[m.rem_euclid(n) as usize]
    }

    /// Largest deviation in `g[m]·g[−m] = ω^m(−1)·q`, over `m ≢ 0`.
    pub fn reflection_defect(&self, ctx: &FiniteFieldCtx) -> f64 {
        let n = self.values.len() as i64;
        let log_minus_one = ctx.dlog(ctx.neg(1)).expect("−1 ≠ 0") as i64;
        let q = ctx.q() as f64;
        (1..n)
            .map(|m| {
                let sign = if (m * log_minus_one) % n == 0 {
                    1.0
                } else {
                    // ω^m(−1) = ±1; for odd q it is (−1)^m
                    -1.0
                };
                (self.get(m) * self.get(-m) - sign * q).norm()
            })
            .fold(0.0, f64::max)
    }
}
