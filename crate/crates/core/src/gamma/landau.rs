use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::GammaList;

/// Outcome of the floor-function test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LandauResult {
    pub integral: bool,
    /// Smallest breakpoint in `[0, 1)` at which `L` attains its minimum,
    /// present only when that minimum is negative.
    pub witness: Option<Rational64>,
    pub min_value: i64,
}

/// `L(x) = Σ_{γ_i<0} ⌊−γ_i x⌋ − Σ_{γ_i>0} ⌊γ_i x⌋` at a nonnegative rational.
pub fn landau_value(g: &GammaList, x: Rational64) -> i64 {
    let (num, den) = (*x.numer(), *x.denom());
    let floor = |a: u64| (a as i64 * num).div_euclid(den);
    g.negatives().map(floor).sum::<i64>() - g.positives().map(floor).sum::<i64>()
}

/// Evaluate `L` at every breakpoint `j/|γ_i|` in `[0, 1)`. `L` is a
/// right-continuous step function with period 1 that only jumps there, so
/// this decides `L ≥ 0` everywhere.
pub fn landau_check(g: &GammaList) -> LandauResult {
    let mut points: Vec<Rational64> = g
        .entries()
        .iter()
        .flat_map(|&x| {
            let den = x.abs();
            (0..den).map(move |j| Rational64::new(j, den))
        })
        .collect();
    points.sort_unstable();
    points.dedup();
    let (min_value, at) = points
        .iter()
        .map(|&x| (landau_value(g, x), x))
        .min()
        .expect("0 is always a breakpoint");
    LandauResult {
        integral: min_value >= 0,
        witness: (min_value < 0).then_some(at),
        min_value,
    }
}
