//! Lie algebras given by structure constants, Gram-matrix metrics, and
//! their basic invariants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{dot, vec_add, Matrix, RowEchelon};
use crate::scalar::{Backend, Scalar};
use crate::subspace::Subspace;

/// One nonzero bracket `[X_i, X_j] = Σ c·X_k` with `i < j` (zero-based).
#[derive(Debug, Clone, PartialEq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Scalar)>,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, terms: Vec<(usize, Scalar)>) -> Self {
        BracketEntry { i, j, terms }
    }
}

/// Structure constants of a finite-dimensional Lie algebra.
///
/// Only brackets with `i < j` are stored; `[X_j, X_i]` is the negation and
/// `[X_i, X_i] = 0`. A dense copy of the table is kept for fast evaluation.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    table: Vec<Vec<Scalar>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.table == other.table
    }
}

/// Result of evaluating the Jacobi identity on every basis triple.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiReport {
    pub max_residual: Scalar,
    pub worst_triple: Option<(usize, usize, usize)>,
    pub triples_checked: usize,
}

impl JacobiReport {
    pub fn passes(&self) -> bool {
        self.max_residual.is_zero()
    }
}

pub fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("X{i}")).collect()
}

impl LieAlgebra {
    /// Validated constructor: checks the table and the Jacobi identity.
    pub fn new(dim: usize, labels: Vec<String>, entries: Vec<BracketEntry>) -> Result<Self> {
        let alg = LieAlgebra::unchecked(dim, labels, entries)?;
        let report = alg.check_jacobi();
        if !report.passes() {
            return Err(Error::JacobiViolation {
                triple: report.worst_triple.unwrap_or((0, 0, 0)),
                residual: report.max_residual,
            });
        }
        Ok(alg)
    }

    /// Builds the table after structural checks only (index ranges,
    /// ordering, duplicates). The Jacobi identity is not verified.
    pub fn unchecked(dim: usize, labels: Vec<String>, entries: Vec<BracketEntry>) -> Result<Self> {
        if labels.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: labels.len() });
        }
        let mut brackets = BTreeMap::new();
        for e in entries {
            for idx in [e.i, e.j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if e.i == e.j {
                return Err(Error::DiagonalBracket { i: e.i });
            }
            if e.i > e.j {
                return Err(Error::UnorderedBracket { i: e.i, j: e.j });
            }
            let mut coeffs = vec![Scalar::zero(); dim];
            for (k, c) in e.terms {
                if k >= dim {
                    return Err(Error::IndexOutOfRange { index: k, dim });
                }
                coeffs[k] = &coeffs[k] + &c;
            }
            let terms: Vec<(usize, Scalar)> =
                coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if brackets.insert((e.i, e.j), terms).is_some() {
                return Err(Error::DuplicateBracket { i: e.i, j: e.j });
            }
        }
        let mut table = vec![vec![Scalar::zero(); dim]; dim * dim];
        for (&(i, j), terms) in &brackets {
            for (k, c) in terms {
                table[i * dim + j][*k] = c.clone();
                table[j * dim + i][*k] = -c;
            }
        }
        Ok(LieAlgebra { dim, labels, brackets, table })
    }

    /// The zero-dimensional algebra.
    pub fn zero() -> Self {
        LieAlgebra { dim: 0, labels: Vec::new(), brackets: BTreeMap::new(), table: Vec::new() }
    }

    /// Abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra::unchecked(dim, default_labels(dim), Vec::new()).expect("empty table is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Nonzero brackets with `i < j`, in index order.
    pub fn entries(&self) -> Vec<BracketEntry> {
        self.brackets
            .iter()
            .map(|(&(i, j), terms)| BracketEntry::new(i, j, terms.clone()))
            .collect()
    }

    pub fn backend(&self) -> Backend {
        if self.brackets.values().flatten().all(|(_, c)| c.is_exact()) {
            Backend::Exact
        } else {
            Backend::Numeric
        }
    }

    /// `[X_i, X_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim + j]
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        for w in [u, v] {
            if w.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: w.len() });
            }
        }
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (&(i, j), terms) in &self.brackets {
            let coeff = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k] = &out[*k] + &(&coeff * c);
            }
        }
        out
    }

    /// Matrix of `ad(X_i)`; column `j` is `[X_i, X_j]`.
    pub fn ad(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |r, c| self.basis_bracket(i, c)[r].clone())
    }

    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.dim;
        let mut max_residual = Scalar::zero();
        let mut worst = None;
        let mut count = 0;
        // [X_i,[X_j,X_k]] + [X_j,[X_k,X_i]] + [X_k,[X_i,X_j]]
        let apply = |i: usize, w: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); n];
            for (l, c) in w.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(self.basis_bracket(i, l)) {
                    if !x.is_zero() {
                        *o = &*o + &(c * x);
                    }
                }
            }
            out
        };
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    count += 1;
                    let a = apply(i, self.basis_bracket(j, k));
                    let b = apply(j, self.basis_bracket(k, i));
                    let c = apply(k, self.basis_bracket(i, j));
                    let sum = vec_add(&vec_add(&a, &b), &c);
                    let r = crate::scalar::max_abs(&sum);
                    if !r.is_zero() && (worst.is_none() || r.cmp_approx(&max_residual).is_gt()) {
                        max_residual = r;
                        worst = Some((i, j, k));
                    }
                }
            }
        }
        JacobiReport { max_residual, worst_triple: worst, triples_checked: count }
    }

    /// Center: common kernel of all adjoint maps.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut ech = RowEchelon::new(n);
        // row (j,k): Σ_i z_i c_{ij}^k
        for j in 0..n {
            for k in 0..n {
                let row: Vec<Scalar> = (0..n).map(|i| self.basis_bracket(i, j)[k].clone()).collect();
                ech.insert(row);
            }
        }
        Subspace::from_vectors(n, ech.nullspace())
    }

    /// Commutator subalgebra `[g, g]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        Subspace::from_vectors(self.dim, self.brackets.keys().map(|&(i, j)| self.basis_bracket(i, j).to_vec()))
    }

    /// True when the center is not contained in the commutator subalgebra,
    /// which is exactly when some metric factor is abelian and nonzero.
    pub fn has_abelian_factor(&self) -> bool {
        !self.derived_subalgebra().contains_subspace(&self.center())
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Whether `s` is closed under the bracket; returns a witness pair of
    /// basis indices of `s` otherwise.
    pub fn subalgebra_witness(&self, s: &Subspace) -> Option<(usize, usize)> {
        let b = s.basis();
        for a in 0..b.len() {
            for c in (a + 1)..b.len() {
                if !s.contains(&self.bracket_unchecked(&b[a], &b[c])) {
                    return Some((a, c));
                }
            }
        }
        None
    }

    /// Whether `s` is an ideal (bracket with the whole basis stays inside).
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| {
            (0..self.dim).all(|j| {
                let e = crate::linalg::unit_vector(self.dim, j);
                s.contains(&self.bracket_unchecked(v, &e))
            })
        })
    }

    /// Image of the bracket table under a change of backend.
    pub fn to_numeric(&self) -> LieAlgebra {
        let entries = self
            .entries()
            .into_iter()
            .map(|e| BracketEntry::new(e.i, e.j, e.terms.into_iter().map(|(k, c)| (k, c.to_numeric())).collect()))
            .collect();
        LieAlgebra::unchecked(self.dim, self.labels.clone(), entries).expect("same table")
    }
}

/// Positive definite symmetric Gram matrix `G_ij = <X_i, X_j>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    gram: Matrix,
}

impl Metric {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch { expected: gram.rows(), found: gram.cols() });
        }
        let n = gram.rows();
        for i in 0..n {
            for j in (i + 1)..n {
                if !(gram.get(i, j) - gram.get(j, i)).is_zero() {
                    return Err(Error::MetricNotSymmetric { i, j });
                }
            }
        }
        gram.check_leading_minors().map_err(|minor| Error::MetricNotPositiveDefinite { minor })?;
        Ok(Metric { gram })
    }

    pub fn identity(n: usize) -> Self {
        Metric { gram: Matrix::identity(n) }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn inner(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, &self.gram.mul_vec(v))
    }

    pub fn block_diagonal(a: &Metric, b: &Metric) -> Metric {
        Metric { gram: Matrix::block_diagonal(&a.gram, &b.gram) }
    }

    pub fn to_numeric(&self) -> Metric {
        Metric { gram: self.gram.to_numeric() }
    }
}

/// A Lie algebra together with an inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricLieAlgebra {
    name: String,
    algebra: LieAlgebra,
    metric: Metric,
}

impl MetricLieAlgebra {
    pub fn new(name: impl Into<String>, algebra: LieAlgebra, metric: Metric) -> Result<Self> {
        if metric.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: metric.dim() });
        }
        Ok(MetricLieAlgebra { name: name.into(), algebra, metric })
    }

    /// Same algebra with a different inner product.
    pub fn with_metric(&self, metric: Metric) -> Result<Self> {
        MetricLieAlgebra::new(self.name.clone(), self.algebra.clone(), metric)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn gram(&self) -> &Matrix {
        self.metric.gram()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn backend(&self) -> Backend {
        self.algebra.backend().join(self.metric.gram().backend())
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.algebra.bracket(u, v)
    }

    pub fn inner(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.metric.inner(u, v)
    }

    pub fn center(&self) -> Subspace {
        self.algebra.center()
    }

    pub fn derived_subalgebra(&self) -> Subspace {
        self.algebra.derived_subalgebra()
    }

    pub fn has_abelian_factor(&self) -> bool {
        self.algebra.has_abelian_factor()
    }

    pub fn check_jacobi(&self) -> JacobiReport {
        self.algebra.check_jacobi()
    }

    /// Orthogonal direct sum: block structure constants and block Gram.
    pub fn direct_sum(&self, other: &MetricLieAlgebra) -> MetricLieAlgebra {
        let n = self.dim();
        let mut entries = self.algebra.entries();
        entries.extend(other.algebra.entries().into_iter().map(|e| {
            BracketEntry::new(e.i + n, e.j + n, e.terms.into_iter().map(|(k, c)| (k + n, c)).collect())
        }));
        let mut labels = self.algebra.labels.clone();
        labels.extend(other.algebra.labels.iter().cloned());
        let algebra = LieAlgebra::unchecked(n + other.dim(), labels, entries).expect("block table is valid");
        let name = match (self.name.is_empty(), other.name.is_empty()) {
            (true, _) => other.name.clone(),
            (_, true) => self.name.clone(),
            _ => format!("{}+{}", self.name, other.name),
        };
        MetricLieAlgebra { name, algebra, metric: Metric::block_diagonal(&self.metric, &other.metric) }
    }

    /// Induced algebra on a subalgebra, in the canonical basis of `s`.
    pub fn restrict(&self, s: &Subspace) -> Result<MetricLieAlgebra> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: s.ambient_dim() });
        }
        let b = s.basis();
        let m = b.len();
        let mut entries = Vec::new();
        for a in 0..m {
            for c in (a + 1)..m {
                let w = self.algebra.bracket_unchecked(&b[a], &b[c]);
                let coords = s.coordinates(&w).ok_or(Error::NotASubalgebra { i: a, j: c })?;
                let terms: Vec<(usize, Scalar)> =
                    coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                if !terms.is_empty() {
                    entries.push(BracketEntry::new(a, c, terms));
                }
            }
        }
        let labels = b
            .iter()
            .enumerate()
            .map(|(a, v)| {
                let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                if nz.len() == 1 && v[nz[0]].is_one() {
                    self.algebra.labels[nz[0]].clone()
                } else {
                    format!("V{}", a + 1)
                }
            })
            .collect();
        let algebra = LieAlgebra::unchecked(m, labels, entries)?;
        let bm = s.basis_matrix();
        let gram = &(&bm * self.gram()) * &bm.transpose();
        let metric = Metric::new(gram)?;
        Ok(MetricLieAlgebra { name: format!("{}|sub", self.name), algebra, metric })
    }

    pub fn to_numeric(&self) -> MetricLieAlgebra {
        MetricLieAlgebra {
            name: self.name.clone(),
            algebra: self.algebra.to_numeric(),
            metric: self.metric.to_numeric(),
        }
    }
}
