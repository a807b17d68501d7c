//! The circuit polytope of a gamma list and its Ehrhart data by direct
//! lattice-point enumeration.
//!
//! The `l = d + 2` vertices `m_i ∈ Z^d` satisfy the single affine relation
//! `Σ γ_i m_i = 0`. A point `y` lies in `kΔ` iff some `λ ≥ 0` solves
//! `Σ λ_i m_i = y`, `Σ λ_i = k`; the solutions form the line `λ⁰ + sγ`, so
//! membership reduces to the pairwise conditions
//! `|γ_j| λ⁰_i + γ_i λ⁰_j ≥ 0` for `γ_i > 0 > γ_j`, which are exactly the
//! facet inequalities. Interior points satisfy all of them strictly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{integer_kernel_basis, IntMatrix, IntPolynomial};
use crate::error::{Error, Result};
use crate::gamma::GammaList;

/// Default cap on the number of bounding-box cells one count may cover.
pub const DEFAULT_CELL_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_cells: u128,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_cells: DEFAULT_CELL_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Outside,
    Boundary,
    Interior,
}

/// An affine form `coeffs·y + k·k_coeff` on `Z^d × Z`.
#[derive(Clone, Debug)]
struct FacetForm {
    coeffs: Vec<i64>,
    k_coeff: i64,
}

impl FacetForm {
    fn eval(&self, y: &[i64], k: i64) -> i128 {
        self.coeffs
            .iter()
            .zip(y)
            .map(|(&c, &x)| c as i128 * x as i128)
            .sum::<i128>()
            + self.k_coeff as i128 * k as i128
    }
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    gamma: GammaList,
    /// `d × l`, column `i` is the vertex paired with `gamma.entries()[i]`.
    vertices: IntMatrix,
    columns: Vec<Vec<i64>>,
    facets: Vec<FacetForm>,
}

impl LatticePolytope {
    /// Wrap a labeled vertex matrix, checking the circuit relation and that
    /// the vertices affinely span `Z^d`.
    pub fn from_vertices(gamma: GammaList, vertices: IntMatrix) -> Result<Self> {
        let d = gamma.dim();
        let l = gamma.len();
        if vertices.rows() != d || vertices.cols() != l {
            return Err(Error::Invalid(format!(
                "expected a {d}x{l} vertex matrix, got {}x{}",
                vertices.rows(),
                vertices.cols()
            )));
        }
        for row in 0..d {
            let s: BigInt = (0..l)
                .map(|i| &vertices[(row, i)] * gamma.entries()[i])
                .sum();
            if !s.is_zero() {
                return Err(Error::Invalid("vertices violate the circuit relation".into()));
            }
        }
        let diffs: Vec<Vec<BigInt>> = (1..l)
            .map(|i| (0..d).map(|r| &vertices[(r, i)] - &vertices[(r, 0)]).collect())
            .collect();
        let hnf = IntMatrix::from_columns(&diffs).transpose().hermite_normal_form();
        if hnf != IntMatrix::identity(d) {
            return Err(Error::Invalid("vertices do not affinely span Z^d".into()));
        }
        let columns: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                vertices
                    .column(i)
                    .iter()
                    .map(|x| x.to_i64())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Invalid("vertex coordinates overflow i64".into()))?;
        let facets = facet_forms(&gamma, &vertices)?;
        Ok(LatticePolytope {
            gamma,
            vertices,
            columns,
            facets,
        })
    }

    pub fn gamma(&self) -> &GammaList {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn vertices(&self) -> &IntMatrix {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &[i64] {
        &self.columns[i]
    }

    /// Image under `y ↦ U·y + t`; `U` must be unimodular.
    pub fn transformed(&self, unimodular: &IntMatrix, translation: &[i64]) -> Result<Self> {
        if !unimodular.determinant().abs().is_one() {
            return Err(Error::Invalid("transform is not unimodular".into()));
        }
        let mut v = unimodular.mul(&self.vertices);
        for r in 0..v.rows() {
            for c in 0..v.cols() {
                v[(r, c)] += translation[r];
            }
        }
        Self::from_vertices(self.gamma.clone(), v)
    }

    /// Classify `y` with respect to `kΔ`.
    pub fn membership(&self, y: &[i64], k: i64) -> Membership {
        let mut strict = true;
        for f in &self.facets {
            let v = f.eval(y, k);
            if v < 0 {
                return Membership::Outside;
            }
            strict &= v > 0;
        }
        if strict {
            Membership::Interior
        } else {
            Membership::Boundary
        }
    }

    /// Per-coordinate `[min, max]` of the vertices.
    pub fn bounding_box(&self) -> Vec<(i64, i64)> {
        (0..self.dim())
            .map(|r| {
                let it = self.columns.iter().map(|c| c[r]);
                (it.clone().min().unwrap(), it.max().unwrap())
            })
            .collect()
    }
}

/// Facet inequalities from pairs of opposite-sign entries, scaled to integers.
fn facet_forms(gamma: &GammaList, vertices: &IntMatrix) -> Result<Vec<FacetForm>> {
    let d = gamma.dim();
    let l = gamma.len();
    let g = gamma.entries();
    // Drop the column with the smallest |γ|; the rest of [m_i; 1] is invertible.
    let skip = (0..l).min_by_key(|&i| g[i].abs()).unwrap();
    let kept: Vec<usize> = (0..l).filter(|&i| i != skip).collect();
    let mut a = IntMatrix::zeros(d + 1, d + 1);
    for (c, &i) in kept.iter().enumerate() {
        for r in 0..d {
            a[(r, c)] = vertices[(r, i)].clone();
        }
        a[(d, c)] = BigInt::one();
    }
    let inv = a
        .inverse_rational()
        .ok_or_else(|| Error::Internal("vertex system is singular".into()))?;
    let den = inv
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    // λ̃_i = den·λ_i as integer linear forms in (y, k).
    let mut lambda = vec![vec![BigInt::zero(); d + 1]; l];
    for (c, &i) in kept.iter().enumerate() {
        for j in 0..=d {
            let v: BigRational = &inv[c][j] * BigRational::from_integer(den.clone());
            lambda[i][j] = v.to_integer();
        }
    }
    let mut forms = Vec::new();
    for i in (0..l).filter(|&i| g[i] > 0) {
        for j in (0..l).filter(|&j| g[j] < 0) {
            let coeffs: Vec<BigInt> = (0..=d)
                .map(|t| &lambda[i][t] * (-g[j]) + &lambda[j][t] * g[i])
                .collect();
            let as_i64: Option<Vec<i64>> = coeffs.iter().map(ToPrimitive::to_i64).collect();
            let mut v = as_i64.ok_or_else(|| Error::Invalid("facet form overflows i64".into()))?;
            let content = v.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
            if content > 1 {
                v.iter_mut().for_each(|x| *x /= content);
            }
            let k_coeff = v.pop().unwrap();
            forms.push(FacetForm { coeffs: v, k_coeff });
        }
    }
    Ok(forms)
}

/// The circuit polytope: `m_1 = 0` and `m_2, …, m_l` the rows of a Z-basis
/// of the kernel of `(γ_2, …, γ_l)`, followed by an LLL reduction of the
/// coordinate rows to keep the bounding box small.
pub fn build_polytope(g: &GammaList) -> LatticePolytope {
    let tail: Vec<BigInt> = g.entries()[1..].iter().map(|&x| BigInt::from(x)).collect();
    let basis = integer_kernel_basis(&tail).expect("gamma entries are nonzero");
    let d = g.dim();
    let l = g.len();
    let mut v = IntMatrix::zeros(d, l);
    for i in 1..l {
        for r in 0..d {
            v[(r, i)] = basis[(i - 1, r)].clone();
        }
    }
    let v = v.lll_reduce_rows();
    LatticePolytope::from_vertices(g.clone(), v).expect("kernel basis yields a primitive circuit")
}

/// Number of lattice points in `kΔ` (or its interior).
pub fn count_lattice_points(
    p: &LatticePolytope,
    k: u64,
    interior: bool,
    budget: EnumerationBudget,
) -> Result<u64> {
    let k = k as i64;
    let d = p.dim();
    let bbox: Vec<(i64, i64)> = p
        .bounding_box()
        .into_iter()
        .map(|(lo, hi)| (lo * k, hi * k))
        .collect();
    let cells: u128 = bbox.iter().map(|&(lo, hi)| (hi - lo + 1) as u128).product();
    if cells > budget.max_cells {
        return Err(Error::BudgetExceeded {
            cells,
            limit: budget.max_cells,
        });
    }
    // Enumerate all but the last coordinate; solve for the last one.
    let strict = i128::from(interior);
    let count_line = |prefix: &[i64]| -> u64 {
        let (box_lo, box_hi) = bbox[d - 1];
        let (mut lo, mut hi) = (box_lo as i128, box_hi as i128);
        for f in &p.facets {
            let c = f.coeffs[d - 1] as i128;
            let rest = f
                .coeffs
                .iter()
                .zip(prefix)
                .map(|(&a, &x)| a as i128 * x as i128)
                .sum::<i128>()
                + f.k_coeff as i128 * k as i128
                - strict;
            // c·t + rest ≥ 0
            if c > 0 {
                lo = lo.max(div_ceil(-rest, c));
            } else if c < 0 {
                hi = hi.min(div_floor(rest, -c));
            } else if rest < 0 {
                return 0;
            }
            if lo > hi {
                return 0;
            }
        }
        (hi - lo + 1) as u64
    };
    if d == 1 {
        return Ok(count_line(&[]));
    }
    let (first_lo, first_hi) = bbox[0];
    let total = (first_lo..=first_hi)
        .into_par_iter()
        .map(|y0| {
            let mut prefix = vec![0i64; d - 1];
            prefix[0] = y0;
            for (j, &(lo, _)) in bbox.iter().enumerate().take(d - 1).skip(1) {
                prefix[j] = lo;
            }
            let mut sum = 0u64;
            loop {
                sum += count_line(&prefix);
                // odometer over coordinates 1..d-1
                let mut j = d - 2;
                loop {
                    if j == 0 {
                        return sum;
                    }
                    if prefix[j] < bbox[j].1 {
                        prefix[j] += 1;
                        break;
                    }
                    prefix[j] = bbox[j].0;
                    j -= 1;
                }
            }
        })
        .sum();
    Ok(total)
}

fn div_floor(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Ehrhart data of a circuit polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhrhartData {
    /// `#(kΔ)` for `k = 0..=d`.
    pub counts: Vec<u64>,
    /// Coefficients of `δ(Δ, T)`, constant term first.
    pub delta: Vec<i64>,
    /// Interior counts for `k = 1..=d+1`.
    pub interior_counts: Vec<u64>,
    pub codegree: usize,
}

impl EhrhartData {
    pub fn delta_poly(&self) -> IntPolynomial {
        IntPolynomial::from_i64(&self.delta)
    }
}

/// `δ(T) = (Σ_k counts[k]·T^k)·(1 − T)^{d+1}` truncated to degree `d`.
pub fn delta_from_counts(counts: &[u64], d: usize) -> IntPolynomial {
    let series = IntPolynomial::new(counts.iter().map(|&c| BigInt::from(c)).collect());
    let one_minus_t = IntPolynomial::from_i64(&[1, -1]);
    (&series * &one_minus_t.pow(d as u32 + 1)).truncate(d)
}

/// Evaluate the degree-`d` polynomial through `(k, counts[k])`, `k = 0..=d`,
/// at `x` by exact Lagrange interpolation.
pub fn ehrhart_polynomial_at(counts: &[u64], x: i64) -> BigRational {
    let n = counts.len() as i64;
    let mut total = BigRational::zero();
    for i in 0..n {
        let mut term = BigRational::from_integer(BigInt::from(counts[i as usize]));
        for j in 0..n {
            if j != i {
                term *= BigRational::new(BigInt::from(x - j), BigInt::from(i - j));
            }
        }
        total += term;
    }
    total
}

/// Codegree `d + 1 − deg δ`.
pub fn codegree_of(delta: &IntPolynomial, d: usize) -> usize {
    d + 1 - delta.degree().unwrap_or(0)
}

/// Counts for `k ≤ d`, δ, interior counts by reciprocity checked against
/// direct strict enumeration, and the codegree.
pub fn ehrhart_data(p: &LatticePolytope, budget: EnumerationBudget) -> Result<EhrhartData> {
    let d = p.dim();
    let counts = (0..=d as u64)
        .map(|k| count_lattice_points(p, k, false, budget))
        .collect::<Result<Vec<_>>>()?;
    let delta = delta_from_counts(&counts, d);
    let mut interior_counts = Vec::with_capacity(d + 1);
    for k in 1..=d as i64 {
        let mut v = ehrhart_polynomial_at(&counts, -k);
        if d % 2 == 1 {
            v = -v;
        }
        if !v.is_integer() || v.is_negative() {
            return Err(Error::Internal(format!("reciprocity gave {v} at k = {k}")));
        }
        let from_reciprocity = v.to_integer().to_u64().unwrap();
        let direct = count_lattice_points(p, k as u64, true, budget)?;
        if direct != from_reciprocity {
            return Err(Error::Internal(format!(
                "interior count at k = {k}: reciprocity {from_reciprocity}, enumeration {direct}"
            )));
        }
        interior_counts.push(direct);
    }
    let mut last = ehrhart_polynomial_at(&counts, -(d as i64 + 1));
    if d % 2 == 1 {
        last = -last;
    }
    let direct = count_lattice_points(p, d as u64 + 1, true, budget)?;
    if last != BigRational::from_integer(BigInt::from(direct)) {
        return Err(Error::Internal(format!(
            "interior count at k = {}: reciprocity {last}, enumeration {direct}",
            d + 1
        )));
    }
    interior_counts.push(direct);
    let codegree = codegree_of(&delta, d);
    let first_interior = interior_counts.iter().position(|&c| c > 0).map(|i| i + 1);
    if first_interior != Some(codegree) {
        return Err(Error::Internal(format!(
            "codegree {codegree} but first interior dilation {first_interior:?}"
        )));
    }
    Ok(EhrhartData {
        counts,
        delta: delta
            .to_i64()
            .ok_or_else(|| Error::Internal("δ coefficient overflow".into()))?,
        interior_counts,
        codegree,
    })
}

/// Whether two labeled point configurations (columns) differ by an affine
/// map `y ↦ U·y + t` with `U ∈ GL_d(Z)` sending column `i` to column `i`.
pub fn unimodular_equivalent(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let d = a.rows();
    let n = a.cols();
    let diff = |m: &IntMatrix, i: usize| -> Vec<BigInt> {
        (0..d).map(|r| &m[(r, i)] - &m[(r, 0)]).collect()
    };
    // Greedily pick d independent difference columns of a.
    let mut chosen: Vec<usize> = Vec::new();
    for i in 1..n {
        let mut cand = chosen.clone();
        cand.push(i);
        let cols: Vec<Vec<BigInt>> = cand.iter().map(|&c| diff(a, c)).collect();
        let rank = IntMatrix::from_columns(&cols).transpose().hermite_normal_form().rows();
        if rank == cand.len() {
            chosen = cand;
        }
        if chosen.len() == d {
            break;
        }
    }
    if chosen.len() != d {
        return false;
    }
    let sa = IntMatrix::from_columns(&chosen.iter().map(|&c| diff(a, c)).collect::<Vec<_>>());
    let sb = IntMatrix::from_columns(&chosen.iter().map(|&c| diff(b, c)).collect::<Vec<_>>());
    let Some(inv) = sa.inverse_rational() else {
        return false;
    };
    // U = sb · sa⁻¹
    let mut u = IntMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            let v: BigRational = (0..d)
                .map(|t| BigRational::from_integer(sb[(r, t)].clone()) * &inv[t][c])
                .sum();
            if !v.is_integer() {
                return false;
            }
            u[(r, c)] = v.to_integer();
        }
    }
    if !u.determinant().abs().is_one() {
        return false;
    }
    (0..n).all(|i| {
        let da = IntMatrix::from_columns(&[diff(a, i)]);
        u.mul(&da).column(0) == diff(b, i)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::parse_gamma;

    fn poly(g: &str) -> LatticePolytope {
        build_polytope(&parse_gamma(g).unwrap())
    }

    /// Reference membership: scan s over the exact interval endpoints.
    fn brute_membership(p: &LatticePolytope, y: &[i64], k: i64) -> Membership {
        let g = p.gamma().entries();
        let l = g.len();
        let d = p.dim();
        // Solve the square system with λ_{l−1} = 0 over Q.
        let mut a = IntMatrix::zeros(d + 1, l);
        for i in 0..l {
            for r in 0..d {
                a[(r, i)] = BigInt::from(p.vertex(i)[r]);
            }
            a[(d, i)] = BigInt::one();
        }
        let mut sq = IntMatrix::zeros(d + 1, d + 1);
        for c in 0..=d {
            for r in 0..=d {
                sq[(r, c)] = a[(r, c)].clone();
            }
        }
        let inv = sq.inverse_rational().unwrap();
        let rhs: Vec<BigRational> = y
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .chain([BigRational::from_integer(k.into())])
            .collect();
        let mut lam: Vec<BigRational> = (0..=d)
            .map(|r| (0..=d).map(|c| &inv[r][c] * &rhs[c]).sum())
            .collect();
        lam.push(BigRational::zero());
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for i in 0..l {
            let bound = -&lam[i] / BigRational::from_integer(g[i].into());
            if g[i] > 0 {
                lo = Some(lo.map_or(bound.clone(), |x| x.max(bound.clone())));
            } else {
                hi = Some(hi.map_or(bound.clone(), |x| x.min(bound.clone())));
            }
        }
        let (lo, hi) = (lo.unwrap(), hi.unwrap());
        if lo > hi {
            Membership::Outside
        } else if lo == hi {
            Membership::Boundary
        } else {
            Membership::Interior
        }
    }

    #[test]
    fn chebyshev_counts() {
        let p = poly("-30,-1,6,10,15");
        let b = EnumerationBudget::default();
        let counts: Vec<u64> = (0..=3)
            .map(|k| count_lattice_points(&p, k, false, b).unwrap())
            .collect();
        assert_eq!(counts, vec![1, 19, 85, 230]);
        assert_eq!(count_lattice_points(&p, 1, true, b).unwrap(), 0);
        let e = ehrhart_data(&p, b).unwrap();
        assert_eq!(e.delta, vec![1, 15, 15]);
        assert_eq!(e.codegree, 2);
    }

    #[test]
    fn segment_of_length_three() {
        let p = poly("-3,1,2");
        assert_eq!(p.dim(), 1);
        let e = ehrhart_data(&p, EnumerationBudget::default()).unwrap();
        assert_eq!(e.counts, vec![1, 4]);
        assert_eq!(e.delta, vec![1, 2]);
        assert_eq!(count_lattice_points(&p, 2, false, EnumerationBudget::default()).unwrap(), 7);
        assert_eq!(e.interior_counts, vec![2, 5]);
        assert_eq!(e.codegree, 1);
    }

    #[test]
    fn chebyshev_matches_printed_vertices() {
        // Columns labeled by (−30, −1, 6, 10, 15).
        let printed = IntMatrix::from_rows_i64(&[
            vec![1, 0, 5, 0, 0],
            vec![1, 0, 0, 3, 0],
            vec![1, 0, 0, 0, 2],
        ]);
        let p = poly("-30,-1,6,10,15");
        assert!(unimodular_equivalent(p.vertices(), &printed));
        let shuffled = IntMatrix::from_rows_i64(&[
            vec![1, 0, 0, 5, 0],
            vec![1, 0, 3, 0, 0],
            vec![1, 0, 0, 0, 2],
        ]);
        assert!(!unimodular_equivalent(p.vertices(), &shuffled));
    }

    #[test]
    fn membership_agrees_with_rational_solve() {
        let p = poly("-11,-2,1,3,4,5");
        let bbox = p.bounding_box();
        let k = 2;
        let mut checked = 0;
        for y0 in bbox[0].0 * k..=bbox[0].1 * k {
            for y1 in bbox[1].0 * k..=bbox[1].1 * k {
                for y2 in (bbox[2].0 * k..=bbox[2].1 * k).step_by(2) {
                    for y3 in bbox[3].0 * k..=bbox[3].1 * k {
                        let y = [y0, y1, y2, y3];
                        assert_eq!(p.membership(&y, k), brute_membership(&p, &y, k));
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn zero_dilation_is_a_point() {
        let p = poly("-12,-7,1,2,3,13");
        assert_eq!(count_lattice_points(&p, 0, false, EnumerationBudget::default()).unwrap(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let p = poly("-30,-1,6,10,15");
        let tiny = EnumerationBudget { max_cells: 10 };
        assert!(matches!(
            count_lattice_points(&p, 3, false, tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn rejects_non_primitive_vertices() {
        let g = parse_gamma("-3,1,2").unwrap();
        // 2·(segment) is not primitive.
        let v = IntMatrix::from_rows_i64(&[vec![0, 4, -2]]);
        assert!(LatticePolytope::from_vertices(g.clone(), v).is_err());
        let v = IntMatrix::from_rows_i64(&[vec![0, 1, 1]]);
        assert!(LatticePolytope::from_vertices(g, v).is_err());
    }
}
