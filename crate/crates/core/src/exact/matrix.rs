//! Dense matrices over exact rings, with fraction-free elimination.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::scalar::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Clone> Matrix<R> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: R) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Build from row vectors; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<R>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn map<S, F: FnMut(&R) -> S>(&self, f: F) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

impl<R: Ring> Matrix<R> {
    /// Matrix product; panics on a dimension mismatch or an empty inner dimension.
    pub fn mul(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        assert!(self.cols > 0, "empty inner dimension");
        let zero = self.data[0].zero_like();
        let mut data = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = zero.clone();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(rhs.get(k, j)));
                    }
                }
                data.push(acc);
            }
        }
        Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                v.iter().enumerate().fold(v[0].zero_like(), |acc, (i, x)| {
                    acc.add(&x.mul(self.get(i, j)))
                })
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }
}

impl<F: Field> Matrix<F> {
    /// Exact rank over the field.
    pub fn rank(&self) -> usize {
        F::matrix_rank(self)
    }

    /// Exact determinant; the matrix must be square and nonempty.
    pub fn det(&self) -> F {
        F::matrix_det(self)
    }
}

/// Gaussian elimination rank over a field.
pub fn gauss_rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    let mut rank = 0;
    for c in 0..a.cols {
        let Some(p) = (rank..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        a.swap_rows(rank, p);
        let inv = a.get(rank, c).inv().expect("pivot is nonzero");
        for r in rank + 1..a.rows {
            let factor = a.get(r, c).mul(&inv);
            if factor.is_zero() {
                continue;
            }
            for cc in c..a.cols {
                let v = a.get(r, cc).sub(&factor.mul(a.get(rank, cc)));
                a.set(r, cc, v);
            }
        }
        rank += 1;
        if rank == a.rows {
            break;
        }
    }
    rank
}

/// Gaussian elimination determinant over a field.
pub fn gauss_det<F: Field>(m: &Matrix<F>) -> F {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    assert!(m.rows > 0, "determinant of an empty matrix");
    let mut a = m.clone();
    let n = a.rows;
    let mut det = a.data[0].one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
            return det.zero_like();
        };
        if p != c {
            a.swap_rows(c, p);
            det = det.neg();
        }
        let pivot = a.get(c, c).clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().expect("pivot is nonzero");
        for r in c + 1..n {
            let factor = a.get(r, c).mul(&inv);
            if factor.is_zero() {
                continue;
            }
            for cc in c..n {
                let v = a.get(r, cc).sub(&factor.mul(a.get(c, cc)));
                a.set(r, cc, v);
            }
        }
    }
    det
}

/// Fraction-free (Bareiss) determinant over an integral domain.
pub fn bareiss_det<R: Ring>(m: &Matrix<R>) -> R {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    assert!(m.rows > 0, "determinant of an empty matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev = a.data[0].one_like();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a.get(r, k).is_zero()) else {
            return prev.zero_like();
        };
        if p != k {
            a.swap_rows(k, p);
            sign_flip = !sign_flip;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let v = pivot
                    .mul(a.get(i, j))
                    .sub(&aik.mul(a.get(k, j)))
                    .div_exact(&prev)
                    .expect("Bareiss division is exact");
                a.set(i, j, v);
            }
            a.set(i, k, prev.zero_like());
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Fraction-free (Bareiss) rank over an integral domain, i.e. the rank over
/// its field of fractions.
pub fn bareiss_rank<R: Ring>(m: &Matrix<R>) -> usize {
    let mut a = m.clone();
    if a.data.is_empty() {
        return 0;
    }
    let mut prev = a.data[0].one_like();
    let mut rank = 0;
    for c in 0..a.cols {
        if rank == a.rows {
            break;
        }
        let Some(p) = (rank..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
            continue;
        };
        a.swap_rows(rank, p);
        let pivot = a.get(rank, c).clone();
        for i in rank + 1..a.rows {
            let aic = a.get(i, c).clone();
            for j in c + 1..a.cols {
                let v = pivot
                    .mul(a.get(i, j))
                    .sub(&aic.mul(a.get(rank, j)))
                    .div_exact(&prev)
                    .expect("Bareiss division is exact");
                a.set(i, j, v);
            }
            a.set(i, c, prev.zero_like());
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Cofactor expansion along the first row, skipping zero entries.
/// Exponential, but needs no division: used for symbolic matrices and as an
/// independent check on elimination.
pub fn laplace_det<R: Ring>(m: &Matrix<R>) -> R {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    assert!(m.rows > 0, "determinant of an empty matrix");
    let rows: Vec<usize> = (0..m.rows).collect();
    let cols: Vec<usize> = (0..m.cols).collect();
    laplace_rec(m, &rows, &cols)
}

fn laplace_rec<R: Ring>(m: &Matrix<R>, rows: &[usize], cols: &[usize]) -> R {
    if rows.len() == 1 {
        return m.get(rows[0], cols[0]).clone();
    }
    let r0 = rows[0];
    let mut acc = m.get(r0, cols[0]).zero_like();
    for (idx, &c) in cols.iter().enumerate() {
        let e = m.get(r0, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let sub = laplace_rec(m, &rows[1..], &rest);
        if sub.is_zero() {
            continue;
        }
        let term = e.mul(&sub);
        acc = if idx % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

// ---------------------------------------------------------------------------
// Integer fast paths: try i128 with overflow checks, fall back to BigInt.

fn to_i128(m: &Matrix<BigInt>) -> Option<Vec<i128>> {
    m.data.iter().map(|x| x.to_i128()).collect()
}

fn bareiss_det_i128(a: &mut [i128], n: usize) -> Option<i128> {
    let mut prev: i128 = 1;
    let mut negate = false;
    for k in 0..n {
        let p = (k..n).find(|&r| a[r * n + k] != 0);
        let Some(p) = p else {
            return Some(0);
        };
        if p != k {
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let aik = a[i * n + k];
            for j in k + 1..n {
                let v = pivot
                    .checked_mul(a[i * n + j])?
                    .checked_sub(aik.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = v / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    let d = a[n * n - 1];
    Some(if negate { -d } else { d })
}

fn bareiss_rank_i128(a: &mut [i128], rows: usize, cols: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for cc in 0..cols {
                a.swap(rank * cols + cc, p * cols + cc);
            }
        }
        let pivot = a[rank * cols + c];
        for i in rank + 1..rows {
            let aic = a[i * cols + c];
            for j in c + 1..cols {
                let v = pivot
                    .checked_mul(a[i * cols + j])?
                    .checked_sub(aic.checked_mul(a[rank * cols + j])?)?;
                a[i * cols + j] = v / prev;
            }
            a[i * cols + c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

pub(crate) fn bareiss_det_int(m: &Matrix<BigInt>) -> BigInt {
    if let Some(mut small) = to_i128(m) {
        if let Some(d) = bareiss_det_i128(&mut small, m.rows) {
            return BigInt::from(d);
        }
    }
    bareiss_det(m)
}

pub(crate) fn bareiss_rank_int(m: &Matrix<BigInt>) -> usize {
    if m.data.iter().all(Zero::is_zero) {
        return 0;
    }
    if let Some(mut small) = to_i128(m) {
        if let Some(r) = bareiss_rank_i128(&mut small, m.rows, m.cols) {
            return r;
        }
    }
    bareiss_rank(m)
}

// ---------------------------------------------------------------------------
// Subsets

/// All `k`-element subsets of `{0, .., n-1}` in colexicographic order:
/// subsets are compared by their largest element first.
pub fn colex_subsets(n: usize, k: usize) -> ColexSubsets {
    ColexSubsets {
        n,
        current: if k <= n { Some((0..k).collect()) } else { None },
    }
}

pub struct ColexSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for ColexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut advanced = false;
        for i in 0..k {
            let limit = if i + 1 < k { next[i + 1] } else { self.n };
            if next[i] + 1 < limit {
                next[i] += 1;
                for (j, slot) in next.iter_mut().enumerate().take(i) {
                    *slot = j;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(next);
        }
        Some(cur)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
