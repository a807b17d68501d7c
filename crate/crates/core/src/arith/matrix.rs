//! Integer matrices: kernels over Z, Hermite normal form, LLL row reduction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<BigInt>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Entries as `i64`, row-major, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[dst] += c·row[src]`
    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self[(dst, j)] += v;
        }
    }

    /// Replace rows `(a, b)` by `(x·a + y·b, u·a + v·b)`.
    fn combine_rows(&mut self, a: usize, b: usize, coef: [&BigInt; 4]) {
        let [x, y, u, v] = coef;
        for j in 0..self.cols {
            let ra = self[(a, j)].clone();
            let rb = self[(b, j)].clone();
            self[(a, j)] = x * &ra + y * &rb;
            self[(b, j)] = u * &ra + v * &rb;
        }
    }

    /// Exact determinant of a square matrix (fraction-free elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * prev
    }

    /// Inverse over Q; `None` if singular.
    pub fn inverse_rational(&self) -> Option<Vec<Vec<BigRational>>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self[(i, j)].clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(p, k);
            let piv = a[k][k].clone();
            for x in a[k].iter_mut() {
                *x = &*x / &piv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let v = &f * &a[k][j];
                    a[i][j] -= v;
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Row-style Hermite normal form: upper echelon, positive pivots, entries
    /// above each pivot reduced into `[0, pivot)`, zero rows dropped.
    /// Canonical for the lattice spanned by the rows.
    pub fn hermite_normal_form(&self) -> IntMatrix {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            for i in pivot_row + 1..m.rows {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let a = m[(pivot_row, col)].clone();
                let b = m[(i, col)].clone();
                let e = a.extended_gcd(&b);
                let g = e.gcd;
                let (ag, bg) = (&a / &g, &b / &g);
                m.combine_rows(pivot_row, i, [&e.x, &e.y, &(-&bg), &ag]);
            }
            if m[(pivot_row, col)].is_zero() {
                continue;
            }
            if m[(pivot_row, col)].is_negative() {
                for j in 0..m.cols {
                    m[(pivot_row, j)] = -&m[(pivot_row, j)];
                }
            }
            let piv = m[(pivot_row, col)].clone();
            for i in 0..pivot_row {
                let q = m[(i, col)].div_floor(&piv);
                m.add_row_multiple(i, pivot_row, &(-q));
            }
            pivot_row += 1;
        }
        let cols = m.cols;
        m.entries.truncate(pivot_row * cols);
        m.rows = pivot_row;
        m
    }

    /// LLL-reduce the rows (δ = 3/4) with exact rational Gram–Schmidt.
    /// Only unimodular row operations are applied, so the row lattice is
    /// unchanged. Rows must be linearly independent.
    pub fn lll_reduce_rows(&self) -> IntMatrix {
        let n = self.rows;
        let mut b = self.clone();
        if n < 2 {
            return b;
        }
        let delta = BigRational::new(3.into(), 4.into());
        let half = BigRational::new(1.into(), 2.into());
        let mut k = 1;
        while k < n {
            for j in (0..k).rev() {
                let (mu, _) = gram_schmidt(&b);
                if mu[k][j].abs() > half {
                    let r = mu[k][j].round().to_integer();
                    b.add_row_multiple(k, j, &(-r));
                }
            }
            let (mu, norms) = gram_schmidt(&b);
            let bound = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
            if norms[k] >= bound {
                k += 1;
            } else {
                b.swap_rows(k, k - 1);
                k = (k - 1).max(1);
            }
        }
        b
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rational_rows(b: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..b.rows)
        .map(|i| {
            b.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// Gram–Schmidt coefficients `mu[i][j]` and squared norms of the
/// orthogonalized rows.
fn gram_schmidt(b: &IntMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let rows = rational_rows(b);
    let n = rows.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            let m = if norms[j] == BigRational::zero() {
                BigRational::zero()
            } else {
                dot(&rows[i], &star[j]) / &norms[j]
            };
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= &m * s;
            }
            mu[i][j] = m;
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (mu, norms)
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Columns forming a Z-basis of `{x ∈ Z^n : v·x = 0}`.
///
/// Column operations reduce the row `v` to `(±g, 0, …, 0)` by pairwise
/// extended gcds; the accumulated unimodular transform's trailing `n − 1`
/// columns are the kernel basis.
pub fn integer_kernel_basis(v: &[BigInt]) -> Result<IntMatrix> {
    if v.is_empty() {
        return Err(Error::Invalid("empty vector".into()));
    }
    if v.iter().any(Zero::is_zero) {
        return Err(Error::ZeroInKernelInput);
    }
    let (_, u) = unimodular_column_reduction(v);
    let n = v.len();
    let cols: Vec<Vec<BigInt>> = (1..n).map(|j| u.column(j)).collect();
    let mut basis = IntMatrix::zeros(n, n - 1);
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            basis[(i, j)] = x.clone();
        }
    }
    Ok(basis)
}

/// Unimodular `U` with `v·U = (g, 0, …, 0)`; returns `(g, U)`.
pub fn unimodular_column_reduction(v: &[BigInt]) -> (BigInt, IntMatrix) {
    let n = v.len();
    let mut row: Vec<BigInt> = v.to_vec();
    // Work on U^T so that column operations become row operations.
    let mut ut = IntMatrix::identity(n);
    for j in 1..n {
        if row[j].is_zero() {
            continue;
        }
        let a = row[0].clone();
        let b = row[j].clone();
        let e = a.extended_gcd(&b);
        let g = e.gcd.clone();
        let (ag, bg) = (&a / &g, &b / &g);
        // new col0 = x·c0 + y·cj ; new colj = (b/g)·c0 − (a/g)·cj
        ut.combine_rows(0, j, [&e.x, &e.y, &bg, &(-&ag)]);
        row[0] = g;
        row[j] = BigInt::zero();
    }
    (row[0].clone(), ut.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_kernel(v: &[i64]) -> IntMatrix {
        let vb = bi(v);
        let b = integer_kernel_basis(&vb).unwrap();
        assert_eq!(b.rows(), v.len());
        assert_eq!(b.cols(), v.len() - 1);
        let row = IntMatrix::from_rows_i64(&[v.to_vec()]);
        assert!(row.mul(&b).entries.iter().all(Zero::is_zero));
        b
    }

    #[test]
    fn kernel_of_one_minus_one() {
        let b = check_kernel(&[1, -1]);
        let c = b.column(0);
        assert_eq!(c[0], c[1]);
        assert!(c[0].abs().is_one());
    }

    #[test]
    fn kernel_is_saturated() {
        // A Z-basis of a saturated sublattice extends to a unimodular matrix:
        // the gcd of maximal minors is 1. Checked via HNF having unit pivots.
        let b = check_kernel(&[-1, 6, 10, 15]);
        let h = b.transpose().hermite_normal_form();
        assert_eq!(h.rows(), 3);
        let reference = check_kernel(&[-1, 6, 10, 15]);
        assert_eq!(h, reference.transpose().hermite_normal_form());
        let b2 = check_kernel(&[6, 10, 15]);
        let rank = b2.transpose().hermite_normal_form().rows();
        assert_eq!(rank, 2);
    }

    #[test]
    fn zero_entry_rejected() {
        assert!(matches!(
            integer_kernel_basis(&bi(&[1, 0, 2])),
            Err(Error::ZeroInKernelInput)
        ));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(m.determinant(), BigInt::from(18));
        let inv = m.inverse_rational().unwrap();
        let mr = rational_rows(&m);
        for i in 0..3 {
            for j in 0..3 {
                let s: BigRational = (0..3).map(|k| &mr[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { BigRational::one() } else { BigRational::zero() });
            }
        }
        let sing = IntMatrix::from_rows_i64(&[vec![1, 2], vec![2, 4]]);
        assert!(sing.determinant().is_zero());
        assert!(sing.inverse_rational().is_none());
    }

    #[test]
    fn lll_preserves_lattice() {
        let m = IntMatrix::from_rows_i64(&[
            vec![1, 0, 0, 1345],
            vec![0, 1, 0, 35],
            vec![0, 0, 1, 154],
        ]);
        let r = m.lll_reduce_rows();
        assert_eq!(r.hermite_normal_form(), m.hermite_normal_form());
        let max = |x: &IntMatrix| {
            x.entries.iter().map(|e| e.abs()).max().unwrap()
        };
        assert!(max(&r) < max(&m));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = IntMatrix::from_rows_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let u = IntMatrix::from_rows_i64(&[vec![1, 2, 0], vec![0, 1, 0], vec![3, 7, 1]]);
        assert_eq!(u.mul(&a).hermite_normal_form(), a.hermite_normal_form());
    }
}
