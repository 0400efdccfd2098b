//! Subspaces of coordinate space held in a canonical basis.

use alloc::vec::Vec;

use crate::linalg::{dot, rref, Matrix, RowEchelon};
use crate::scalar::{Backend, Scalar};

/// A linear subspace of `F^n`.
///
/// The basis is the reduced row echelon form of any spanning set (pivots
/// normalized to one and ordered by pivot position), so two subspaces are
/// equal exactly when their bases are.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_vectors(ambient, (0..ambient).map(|i| crate::linalg::unit_vector(ambient, i)))
    }

    /// Span of the given vectors.
    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Self {
        let vs: Vec<Vec<Scalar>> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector length mismatch"))
            .filter(|v| !v.iter().all(Scalar::is_zero))
            .collect();
        Subspace { ambient, basis: rref(&vs, ambient) }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        Subspace::from_vectors(m.rows(), m.columns())
    }

    /// Kernel of a matrix.
    pub fn kernel(m: &Matrix) -> Self {
        Subspace::from_vectors(m.cols(), m.nullspace())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Basis vectors as the rows of a `dim × ambient` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim(), self.ambient, |r, c| self.basis[r][c].clone())
    }

    pub fn backend(&self) -> Backend {
        if self.basis.iter().flatten().all(Scalar::is_exact) {
            Backend::Exact
        } else {
            Backend::Numeric
        }
    }

    /// Pivot column of each basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero"))
            .collect()
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let coords: Vec<Scalar> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let recon = self.combine(&coords);
        if recon.iter().zip(v).all(|(a, b)| (a - b).is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// `Σ coords[a] · basis[a]`.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = alloc::vec![Scalar::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o = &*o + &(c * x);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_vectors(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j ; solve for (a, b)
        let (p, q) = (self.dim(), other.dim());
        let system = Matrix::from_fn(self.ambient, p + q, |r, c| {
            if c < p {
                self.basis[c][r].clone()
            } else {
                -&other.basis[c - p][r]
            }
        });
        let vectors = system.nullspace().into_iter().map(|sol| self.combine(&sol[..p]));
        Subspace::from_vectors(self.ambient, vectors)
    }

    /// Orthogonal complement with respect to the Gram matrix `gram`.
    pub fn orthogonal_complement(&self, gram: &Matrix) -> Subspace {
        let mut ech = RowEchelon::new(self.ambient);
        for b in &self.basis {
            ech.insert(gram.mul_vec(b));
        }
        Subspace::from_vectors(self.ambient, ech.nullspace())
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix) -> Subspace {
        Subspace::from_vectors(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)))
    }

    /// Whether every pair of vectors drawn from the two subspaces is
    /// orthogonal for `gram`.
    pub fn is_orthogonal_to(&self, other: &Subspace, gram: &Matrix) -> bool {
        self.basis
            .iter()
            .all(|u| other.basis.iter().all(|v| dot(u, &gram.mul_vec(v)).is_zero()))
    }

    /// Lexicographic comparison of the canonical bases.
    pub fn cmp_canonical(&self, other: &Subspace) -> core::cmp::Ordering {
        let flat_a = self.basis.iter().flatten();
        let flat_b = other.basis.iter().flatten();
        for (a, b) in flat_a.zip(flat_b) {
            let o = a.cmp_approx(b);
            if o != core::cmp::Ordering::Equal {
                return o;
            }
        }
        self.dim().cmp(&other.dim())
    }
}
