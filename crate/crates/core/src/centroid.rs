//! The centroid of a Lie algebra and its symmetric and skew parts.
//!
//! The centroid is the space of linear maps `f` with `f([X,Y]) = [f(X),Y]`
//! for all `X, Y`. It always contains the identity and is closed under
//! composition. Its elements that are symmetric for the metric and
//! idempotent are exactly the orthogonal projections onto factors.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{LieAlgebra, MetricLieAlgebra};
use crate::linalg::{rref, unit_vector, vec_sub, Matrix, Operator, RowEchelon};
use crate::scalar::{max_abs, Scalar};

/// Which linear condition an [`OperatorSubspace`] solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorCondition {
    Centroid,
    SymmetricCentroid,
    SkewCentroid,
}

/// A subspace of `n×n` operators, stored as a canonical basis (vectorized
/// row-major and row reduced).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSubspace {
    n: usize,
    condition: OperatorCondition,
    basis: Vec<Operator>,
}

impl OperatorSubspace {
    fn from_operators(n: usize, condition: OperatorCondition, ops: Vec<Operator>) -> Self {
        let flat: Vec<Vec<Scalar>> = ops.iter().map(|m| m.as_slice().to_vec()).collect();
        let basis = rref(&flat, n * n).into_iter().map(|v| Matrix::from_flat(n, n, v)).collect();
        OperatorSubspace { n, condition, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn condition(&self) -> OperatorCondition {
        self.condition
    }

    pub fn basis(&self) -> &[Operator] {
        &self.basis
    }

    /// `Σ coeffs[a]·basis[a]`.
    pub fn combine(&self, coeffs: &[Scalar]) -> Operator {
        let mut out = Matrix::zeros(self.n, self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    pub fn contains(&self, m: &Operator) -> bool {
        let mut ech = RowEchelon::new(self.n * self.n);
        for b in &self.basis {
            ech.insert(b.as_slice().to_vec());
        }
        ech.contains(m.as_slice())
    }
}

/// Largest entry of `f([X_i,X_j]) − [f(X_i),X_j]` over all ordered basis pairs.
pub fn centroid_residual(alg: &LieAlgebra, f: &Operator) -> Scalar {
    let n = alg.dim();
    let images: Vec<Vec<Scalar>> = f.columns();
    let mut residuals = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.mul_vec(alg.basis_bracket(i, j));
            let rhs = alg.bracket_unchecked(&images[i], &unit_vector(n, j));
            residuals.push(max_abs(&vec_sub(&lhs, &rhs)));
        }
    }
    max_abs(&residuals)
}

/// Largest entry of `f([X,Y]) − [f(X), f(Y)]` over basis pairs.
pub fn morphism_residual(alg: &LieAlgebra, f: &Operator) -> Scalar {
    let n = alg.dim();
    let images: Vec<Vec<Scalar>> = f.columns();
    let mut residuals = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = f.mul_vec(alg.basis_bracket(i, j));
            let rhs = alg.bracket_unchecked(&images[i], &images[j]);
            residuals.push(max_abs(&vec_sub(&lhs, &rhs)));
        }
    }
    max_abs(&residuals)
}

/// `G·f − fᵀ·G` (symmetric part test) or `G·f + fᵀ·G` (skew).
pub fn symmetry_residual(gram: &Matrix, f: &Operator, skew: bool) -> Scalar {
    let gf = gram * f;
    let ftg = &f.transpose() * gram;
    if skew {
        (&gf + &ftg).max_abs()
    } else {
        (&gf - &ftg).max_abs()
    }
}

/// Solution space of `M[X_i,X_j] = [M X_i, X_j]` over all ordered pairs,
/// including `i = j`.
pub fn centroid(alg: &LieAlgebra) -> OperatorSubspace {
    let n = alg.dim();
    let var = |r: usize, c: usize| r * n + c;
    let mut ech = RowEchelon::new(n * n);
    for i in 0..n {
        for j in 0..n {
            let bij = alg.basis_bracket(i, j);
            for k in 0..n {
                // Σ_l M[k][l]·c_ij^l − Σ_m M[m][i]·c_mj^k = 0
                let mut row = alloc::vec![Scalar::zero(); n * n];
                for (l, c) in bij.iter().enumerate() {
                    if !c.is_zero() {
                        row[var(k, l)] = &row[var(k, l)] + c;
                    }
                }
                for m in 0..n {
                    let c = &alg.basis_bracket(m, j)[k];
                    if !c.is_zero() {
                        row[var(m, i)] = &row[var(m, i)] - c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    ech.insert(row);
                }
            }
        }
    }
    let ops = ech.nullspace().into_iter().map(|v| Matrix::from_flat(n, n, v)).collect();
    OperatorSubspace::from_operators(n, OperatorCondition::Centroid, ops)
}

fn constrained_part(a: &MetricLieAlgebra, skew: bool) -> OperatorSubspace {
    let n = a.dim();
    let cent = centroid(a.algebra());
    let g = &integral_multiple(a.gram());
    let d = cent.dim();
    // one column per centroid basis element, one row per matrix entry
    let defects: Vec<Matrix> = cent
        .basis()
        .iter()
        .map(|c| {
            let gc = g * c;
            let ctg = &c.transpose() * g;
            if skew {
                &gc + &ctg
            } else {
                &gc - &ctg
            }
        })
        .collect();
    // the identity is always symmetric, so the symmetric system has rank < d
    let full_rank = if skew { d } else { d.saturating_sub(1) };
    let mut ech = RowEchelon::new(d);
    for idx in 0..n * n {
        if ech.rank() == full_rank {
            break;
        }
        let row: Vec<Scalar> = defects.iter().map(|m| m.as_slice()[idx].clone()).collect();
        if row.iter().any(|x| !x.is_zero()) {
            ech.insert(row);
        }
    }
    let ops = ech.nullspace().into_iter().map(|t| cent.combine(&t)).collect();
    let cond = if skew { OperatorCondition::SkewCentroid } else { OperatorCondition::SymmetricCentroid };
    OperatorSubspace::from_operators(n, cond, ops)
}

/// Positive multiple of an exact matrix with integer entries; both symmetry
/// conditions are homogeneous in the Gram matrix.
fn integral_multiple(g: &Matrix) -> Matrix {
    let mut lcm = BigInt::one();
    for x in g.as_slice() {
        match x.as_rational() {
            Some(q) => lcm = lcm.lcm(q.denom()),
            None => return g.clone(),
        }
    }
    g.scale(&Scalar::from(BigRational::from_integer(lcm)))
}

/// Centroid elements that are symmetric for the metric: `G·M = Mᵀ·G`.
pub fn symmetric_centroid(a: &MetricLieAlgebra) -> OperatorSubspace {
    constrained_part(a, false)
}

/// Centroid elements that are skew for the metric: `G·M = −Mᵀ·G`.
pub fn skew_centroid(a: &MetricLieAlgebra) -> OperatorSubspace {
    constrained_part(a, true)
}

/// Per-axiom residuals of the orthogonal projection test.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionCertificate {
    /// `p∘p − p`
    pub idempotent: Scalar,
    /// `p([X,Y]) − [p(X),Y]`
    pub centroid: Scalar,
    /// `G·p − pᵀ·G`
    pub symmetric: Scalar,
}

impl ProjectionCertificate {
    pub fn passes(&self) -> bool {
        self.idempotent.is_zero() && self.centroid.is_zero() && self.symmetric.is_zero()
    }

    pub fn max_residual(&self) -> Scalar {
        max_abs([&self.idempotent, &self.centroid, &self.symmetric])
    }
}

pub fn is_orthogonal_projection(a: &MetricLieAlgebra, p: &Operator) -> ProjectionCertificate {
    assert_eq!((p.rows(), p.cols()), (a.dim(), a.dim()), "operator shape mismatch");
    ProjectionCertificate {
        idempotent: (&(p * p) - p).max_abs(),
        centroid: centroid_residual(a.algebra(), p),
        symmetric: symmetry_residual(a.gram(), p, false),
    }
}
