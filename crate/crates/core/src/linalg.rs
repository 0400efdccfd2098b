//! Dense matrices over [`Scalar`] and an incremental row reducer.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{max_abs, Backend, Scalar};

/// Row-major dense matrix. Operators act on column coordinate vectors.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// A linear map on algebra coordinates.
pub type Operator = Matrix;

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from row vectors; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Integer entries, handy for literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(rows.len(), cols, |r, c| Scalar::from_int(rows[r][c]))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<Scalar>]) -> Self {
        Matrix::from_fn(n, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major flattening.
    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> Scalar {
        max_abs(&self.data)
    }

    pub fn backend(&self) -> Backend {
        if self.data.iter().all(Scalar::is_exact) {
            Backend::Exact
        } else {
            Backend::Numeric
        }
    }

    pub fn to_numeric(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::to_numeric).collect() }
    }

    pub fn block_diagonal(a: &Matrix, b: &Matrix) -> Matrix {
        let (r, c) = (a.rows + b.rows, a.cols + b.cols);
        Matrix::from_fn(r, c, |i, j| {
            if i < a.rows && j < a.cols {
                a.get(i, j).clone()
            } else if i >= a.rows && j >= a.cols {
                b.get(i - a.rows, j - a.cols).clone()
            } else {
                Scalar::zero()
            }
        })
    }

    /// Block matrix `[[tl, tr], [bl, br]]` built from four n×n blocks.
    pub fn from_blocks(tl: &Matrix, tr: &Matrix, bl: &Matrix, br: &Matrix) -> Matrix {
        let n = tl.rows;
        Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => tl.get(i, j).clone(),
            (true, false) => tr.get(i, j - n).clone(),
            (false, true) => bl.get(i - n, j).clone(),
            (false, false) => br.get(i - n, j - n).clone(),
        })
    }

    pub fn rank(&self) -> usize {
        let mut ech = RowEchelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.rank()
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut ech = RowEchelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.nullspace()
    }

    /// Inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = select_pivot(&a, col, col)?;
            a.swap(col, pivot);
            let inv = a[col][col].recip()?;
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    axpy(row, &f, &pivot_row);
                }
            }
        }
        Some(Matrix::from_fn(n, n, |r, c| a[r][n + c].clone()))
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(pivot) = select_pivot(&a, col, col) else {
                return Scalar::zero();
            };
            if pivot != col {
                a.swap(col, pivot);
                det = -det;
            }
            det = &det * &a[col][col];
            let pivot_row = a[col].clone();
            for row in a.iter_mut().skip(col + 1) {
                if !row[col].is_zero() {
                    let f = &row[col] / &pivot_row[col];
                    axpy(row, &f, &pivot_row);
                }
            }
        }
        det
    }

    /// Checks that every leading principal minor is positive via elimination
    /// without pivoting. Returns the 1-based index of the first failing minor.
    pub fn check_leading_minors(&self) -> core::result::Result<(), usize> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.to_rows();
        for k in 0..n {
            // pivot k equals minor(k+1)/minor(k)
            if !a[k][k].is_positive() {
                return Err(k + 1);
            }
            let pivot_row = a[k].clone();
            for row in a.iter_mut().skip(k + 1) {
                if !row[k].is_zero() {
                    let f = &row[k] / &pivot_row[k];
                    axpy(row, &f, &pivot_row);
                }
            }
        }
        Ok(())
    }

    /// Bilinear evaluation `uᵀ·self·v`.
    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, &self.mul_vec(v))
    }

    /// Commutator `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }
}

/// Row pivot for column `col` at or below `start`: first nonzero on exact
/// rows, largest magnitude on numeric rows.
fn select_pivot(a: &[Vec<Scalar>], col: usize, start: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (r, row) in a.iter().enumerate().skip(start) {
        let v = &row[col];
        if v.is_zero() {
            continue;
        }
        if v.is_exact() {
            if best.is_none() {
                return Some(r);
            }
            continue;
        }
        match best {
            Some(b) if a[b][col].to_f64().abs() >= v.to_f64().abs() => {}
            _ => best = Some(r),
        }
    }
    best
}

/// `row -= f · other`, skipping zero entries; numeric round-off below the
/// tolerance is flushed to zero.
pub(crate) fn axpy(row: &mut [Scalar], f: &Scalar, other: &[Scalar]) {
    for (x, y) in row.iter_mut().zip(other) {
        if y.is_zero() {
            continue;
        }
        let v = &*x - &(f * y);
        *x = flush(v);
    }
}

fn flush(v: Scalar) -> Scalar {
    match v {
        Scalar::Numeric(x) if x.abs() <= crate::scalar::tolerance() => Scalar::Numeric(0.0),
        other => other,
    }
}

pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc + a * b;
        }
    }
    acc
}

pub fn vec_add(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(u: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    u.iter().map(|a| a * s).collect()
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vec_add(&self.data, &rhs.data) }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: vec_sub(&self.data, &rhs.data) }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// Incrementally maintained reduced row basis.
///
/// Every stored row has a `1` at its pivot column and zeros at all other
/// stored pivots, so nullspace extraction needs no back substitution.
/// Exact rows pivot on their first nonzero entry; numeric rows pivot on their
/// largest entry.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(cols: usize) -> Self {
        RowEchelon { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduce `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                axpy(v, &f, row);
                v[p] = Scalar::zero();
            }
        }
    }

    /// Whether `v` lies in the row span.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Add a row; returns `true` when it was independent of the stored ones.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        if v.iter().all(Scalar::is_zero) {
            return false;
        }
        self.reduce(&mut v);
        let pivot = pick_row_pivot(&v);
        let Some(p) = pivot else { return false };
        let inv = v[p].recip().expect("pivot is nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            } else if !x.is_exact() {
                *x = Scalar::Numeric(0.0);
            }
        }
        v[p] = if v[p].is_exact() { Scalar::one() } else { Scalar::Numeric(1.0) };
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                axpy(row, &f, &v);
                row[p] = Scalar::zero();
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Stored rows sorted by pivot column.
    pub fn rows_by_pivot(&self) -> Vec<(usize, Vec<Scalar>)> {
        let mut out: Vec<(usize, Vec<Scalar>)> =
            self.pivots.iter().copied().zip(self.rows.iter().cloned()).collect();
        out.sort_by_key(|(p, _)| *p);
        out
    }

    /// Basis of the orthogonal (dot-product) annihilator of the row span,
    /// i.e. the solution space of the homogeneous system.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -&row[f];
                    }
                }
                v
            })
            .collect()
    }
}

fn pick_row_pivot(v: &[Scalar]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if x.is_exact() {
            if best.is_none() {
                return Some(i);
            }
            continue;
        }
        match best {
            Some(b) if v[b].to_f64().abs() >= x.to_f64().abs() => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Canonical reduced row echelon form of a list of vectors: pivots are the
/// first nonzero entries, normalized to one, rows ordered by pivot.
pub fn rref(vectors: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut a: Vec<Vec<Scalar>> = vectors.to_vec();
    let mut out_rows = 0;
    for col in 0..cols {
        if out_rows == a.len() {
            break;
        }
        let Some(p) = select_pivot(&a, col, out_rows) else { continue };
        a.swap(out_rows, p);
        let inv = a[out_rows][col].recip().expect("pivot is nonzero");
        for x in a[out_rows].iter_mut() {
            *x = flush(&*x * &inv);
        }
        a[out_rows][col] = if a[out_rows][col].is_exact() { Scalar::one() } else { Scalar::Numeric(1.0) };
        let pivot_row = a[out_rows].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != out_rows && !row[col].is_zero() {
                let f = row[col].clone();
                axpy(row, &f, &pivot_row);
                row[col] = Scalar::zero();
            }
        }
        out_rows += 1;
    }
    a.truncate(out_rows);
    // flush stray numeric dust left in the pivot-free columns
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            if !x.is_exact() && x.is_zero() {
                *x = Scalar::Numeric(0.0);
            }
        }
    }
    a
}
