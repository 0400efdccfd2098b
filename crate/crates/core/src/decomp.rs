//! Orthogonal decomposition into irreducible factors.
//!
//! A metric Lie algebra without abelian factor splits uniquely into
//! orthogonal irreducible ideals. The orthogonal projections onto factors
//! are the idempotents of the symmetric centroid, which is commutative, so
//! the eigenprojections of one generic symmetric centroid element already
//! separate factors. Each piece is restricted and split again until its
//! symmetric centroid is one-dimensional.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::MetricLieAlgebra;
use crate::centroid::{is_orthogonal_projection, symmetric_centroid, ProjectionCertificate};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Operator};
use crate::scalar::{max_abs, tolerance, Backend, Scalar};
use crate::spectral::{minimal_polynomial, symmetric_eigenvalues, RealRoot};
use crate::subspace::Subspace;

/// Largest absolute coefficient used when drawing a generic element.
pub const COEFFICIENT_RANGE: i64 = 7;
/// Default cap on non-separating draws before giving up.
pub const DEFAULT_MAX_RESAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecomposeOptions {
    pub seed: u64,
    pub max_resamples: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { seed: 0, max_resamples: DEFAULT_MAX_RESAMPLES }
    }
}

impl DecomposeOptions {
    pub fn with_seed(seed: u64) -> Self {
        DecomposeOptions { seed, ..Default::default() }
    }
}

/// Residuals backing the claim that a carrier is an irreducible factor.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorCertificate {
    pub projection: ProjectionCertificate,
    /// Dimension of the symmetric centroid of the induced algebra; `1`
    /// means irreducible.
    pub symmetric_centroid_dim: usize,
    pub is_ideal: bool,
}

impl FactorCertificate {
    pub fn passes(&self) -> bool {
        self.projection.passes() && self.is_ideal
    }

    pub fn irreducible(&self) -> bool {
        self.symmetric_centroid_dim == 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    carrier: Subspace,
    projection: Operator,
    induced: MetricLieAlgebra,
    certificate: FactorCertificate,
}

impl Factor {
    fn build(a: &MetricLieAlgebra, carrier: Subspace, projection: Operator) -> Result<Factor> {
        let induced = a.restrict(&carrier)?;
        let dim = symmetric_centroid(&induced).dim();
        Self::build_with(a, carrier, projection, induced, dim)
    }

    /// `symmetric_centroid_dim` is taken from an isometric copy of the factor.
    fn build_with(
        a: &MetricLieAlgebra,
        carrier: Subspace,
        projection: Operator,
        induced: MetricLieAlgebra,
        symmetric_centroid_dim: usize,
    ) -> Result<Factor> {
        let certificate = FactorCertificate {
            projection: is_orthogonal_projection(a, &projection),
            symmetric_centroid_dim,
            is_ideal: a.algebra().is_ideal(&carrier),
        };
        Ok(Factor { carrier, projection, induced, certificate })
    }

    pub fn carrier(&self) -> &Subspace {
        &self.carrier
    }

    pub fn projection(&self) -> &Operator {
        &self.projection
    }

    pub fn induced(&self) -> &MetricLieAlgebra {
        &self.induced
    }

    pub fn certificate(&self) -> &FactorCertificate {
        &self.certificate
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn backend(&self) -> Backend {
        self.carrier.backend().join(self.projection.backend())
    }
}

/// Irreducible factors sorted by dimension, then by canonical basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    factors: Vec<Factor>,
    /// `‖Σ p_j − I‖`
    pub projection_sum_residual: Scalar,
    /// Largest `|⟨u, v⟩|` for basis vectors of distinct carriers.
    pub orthogonality_residual: Scalar,
}

impl Decomposition {
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn carriers(&self) -> Vec<&Subspace> {
        self.factors.iter().map(Factor::carrier).collect()
    }

    pub fn backend(&self) -> Backend {
        self.factors.iter().fold(Backend::Exact, |b, f| b.join(f.backend()))
    }

    /// Every certificate passes and the factors are complete and orthogonal.
    pub fn passes(&self) -> bool {
        self.factors.iter().all(|f| f.certificate.passes() && f.certificate.irreducible())
            && self.projection_sum_residual.is_zero()
            && self.orthogonality_residual.is_zero()
    }
}

/// Orthogonal projection onto `carrier` along its `G`-orthogonal
/// complement: `Bᵀ (B G Bᵀ)⁻¹ B G` for basis rows `B`.
pub fn orthogonal_projection_onto(gram: &Matrix, carrier: &Subspace) -> Operator {
    let n = gram.rows();
    if carrier.is_zero() {
        return Matrix::zeros(n, n);
    }
    if carrier.dim() == n {
        return match gram.backend() {
            Backend::Exact => Matrix::identity(n),
            Backend::Numeric => Matrix::identity(n).to_numeric(),
        };
    }
    let b = carrier.basis_matrix();
    let bg = &b * gram;
    let inner = &bg * &b.transpose();
    let inv = inner.inverse().expect("restriction of a positive definite form is invertible");
    &(&b.transpose() * &inv) * &bg
}

/// Split along an orthogonal projection into image and kernel.
pub fn split_by_projection(a: &MetricLieAlgebra, p: &Operator) -> Result<(Factor, Factor)> {
    if p.rows() != a.dim() || p.cols() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: p.rows() });
    }
    if !is_orthogonal_projection(a, p).passes() {
        return Err(Error::NotAProjection);
    }
    let q = &Matrix::identity(a.dim()) - p;
    let image = Factor::build(a, Subspace::column_space(p), p.clone())?;
    let kernel = Factor::build(a, Subspace::column_space(&q), q)?;
    Ok((image, kernel))
}

/// Irreducibility criterion: no abelian factor and a one-dimensional
/// symmetric centroid.
pub fn is_irreducible(a: &MetricLieAlgebra) -> Result<bool> {
    if a.has_abelian_factor() {
        return Err(Error::AbelianFactorPresent);
    }
    Ok(symmetric_centroid(a).dim() == 1)
}

pub fn decompose(a: &MetricLieAlgebra) -> Result<Decomposition> {
    decompose_with(a, &DecomposeOptions::default())
}

pub fn decompose_with(a: &MetricLieAlgebra, options: &DecomposeOptions) -> Result<Decomposition> {
    if a.has_abelian_factor() {
        return Err(Error::AbelianFactorPresent);
    }
    let mut search = Search { rng: ChaCha8Rng::seed_from_u64(options.seed), failures: 0, max: options.max_resamples };
    let carriers = search.split(a)?;

    let mut factors = carriers
        .into_iter()
        .map(|(c, sym_dim)| {
            let p = orthogonal_projection_onto(a.gram(), &c);
            let induced = a.restrict(&c)?;
            Factor::build_with(a, c, p, induced, sym_dim)
        })
        .collect::<Result<Vec<_>>>()?;
    factors.sort_by(|x, y| match x.dim().cmp(&y.dim()) {
        Ordering::Equal => x.carrier.cmp_canonical(&y.carrier),
        o => o,
    });
    for (idx, f) in factors.iter_mut().enumerate() {
        f.induced = f.induced.clone().with_name(format!("{}#{}", a.name(), idx + 1));
        if !f.certificate.irreducible() {
            return Err(Error::InternalAssertion(format!(
                "factor {} has a symmetric centroid of dimension {}",
                idx + 1,
                f.certificate.symmetric_centroid_dim
            )));
        }
    }

    let n = a.dim();
    let mut sum = Matrix::zeros(n, n);
    for f in &factors {
        sum = &sum + &f.projection;
    }
    let projection_sum_residual = (&sum - &Matrix::identity(n)).max_abs();
    let mut cross = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for g in &factors[i + 1..] {
            let m = &(&f.carrier.basis_matrix() * a.gram()) * &g.carrier.basis_matrix().transpose();
            cross.push(m.max_abs());
        }
    }
    Ok(Decomposition { factors, projection_sum_residual, orthogonality_residual: max_abs(&cross) })
}

struct Search {
    rng: ChaCha8Rng,
    failures: usize,
    max: usize,
}

impl Search {
    fn coefficient(&mut self) -> i64 {
        let v = self.rng.gen_range(1..=COEFFICIENT_RANGE);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    /// Carriers of the irreducible factors, in the coordinates of `a`.
    /// Carriers of the irreducible factors, each with the dimension of its
    /// symmetric centroid.
    fn split(&mut self, a: &MetricLieAlgebra) -> Result<Vec<(Subspace, usize)>> {
        let n = a.dim();
        if n == 0 {
            return Ok(Vec::new());
        }
        let sym = symmetric_centroid(a);
        if sym.dim() <= 1 {
            return Ok(alloc::vec![(Subspace::full(n), sym.dim())]);
        }
        let projections = loop {
            let t: Vec<Scalar> = (0..sym.dim()).map(|_| Scalar::from_int(self.coefficient())).collect();
            let element = sym.combine(&t);
            match eigenprojections(a, &element)? {
                Some(ps) => break ps,
                None => {
                    self.failures += 1;
                    if self.failures > self.max {
                        return Err(Error::GenericityFailure { attempts: self.failures });
                    }
                }
            }
        };
        let mut out = Vec::new();
        for p in projections {
            let carrier = Subspace::column_space(&p);
            let sub = a.restrict(&carrier)?;
            for (inner, dim) in self.split(&sub)? {
                out.push((Subspace::from_vectors(n, inner.basis().iter().map(|v| carrier.combine(v))), dim));
            }
        }
        Ok(out)
    }
}

/// Eigenprojections of a symmetric centroid element, or `None` when the
/// element is a multiple of the identity.
fn eigenprojections(a: &MetricLieAlgebra, element: &Operator) -> Result<Option<Vec<Operator>>> {
    let n = a.dim();
    let projections = match minimal_polynomial(element) {
        Some(m) => {
            let degree = m.degree().unwrap_or(0);
            if degree <= 1 {
                return Ok(None);
            }
            let roots = m.real_roots();
            if roots.len() != degree {
                return Err(Error::InternalAssertion(format!(
                    "symmetric centroid element has {} real eigenvalues for a minimal polynomial of degree {}",
                    roots.len(),
                    degree
                )));
            }
            let mut ps = Vec::new();
            for r in &roots {
                match r {
                    RealRoot::Rational(r) => {
                        let (q, _) = m.div_linear(r);
                        let scale = Scalar::from(q.eval(r).recip());
                        ps.push(q.eval_matrix(element).scale(&scale));
                    }
                    RealRoot::Irrational { .. } => {
                        let approx: Vec<f64> = roots.iter().map(RealRoot::approx).collect();
                        ps.push(lagrange_projection(&element.to_numeric(), &approx, r.approx()));
                    }
                }
            }
            ps
        }
        None => {
            let ev = symmetric_eigenvalues(element, a.gram());
            let scale = ev.iter().fold(1.0f64, |m, x| m.max(x.abs()));
            let mut clusters: Vec<Vec<f64>> = Vec::new();
            for x in ev {
                match clusters.last_mut() {
                    Some(c) if x - c[c.len() - 1] <= tolerance() * scale => c.push(x),
                    _ => clusters.push(alloc::vec![x]),
                }
            }
            if clusters.len() <= 1 {
                return Ok(None);
            }
            let centers: Vec<f64> = clusters.iter().map(|c| c.iter().sum::<f64>() / c.len() as f64).collect();
            centers.iter().map(|&r| lagrange_projection(element, &centers, r)).collect()
        }
    };
    for p in &projections {
        if p.backend() == Backend::Numeric {
            let cert = is_orthogonal_projection(a, p);
            if !cert.passes() {
                return Err(Error::InternalAssertion(format!(
                    "numeric eigenprojection fails validation (residual {})",
                    cert.max_residual()
                )));
            }
        }
    }
    debug_assert!(projections.iter().all(|p| p.rows() == n));
    Ok(Some(projections))
}

/// `Π_{u ≠ r} (a − u·I) / (r − u)` in floating point.
fn lagrange_projection(a: &Operator, roots: &[f64], r: f64) -> Operator {
    let n = a.rows();
    let a = a.to_numeric();
    let mut out = Matrix::identity(n).to_numeric();
    for &u in roots {
        if u == r {
            continue;
        }
        let shifted = &a - &Matrix::identity(n).scale(&Scalar::Numeric(u));
        out = (&out * &shifted).scale(&Scalar::Numeric(1.0 / (r - u)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::unit_vector;

    #[test]
    fn h3h3_standard_metric_splits_in_two() {
        let d = decompose(&catalog::h3h3()).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.passes());
        assert_eq!(d.backend(), Backend::Exact);
        let first = Subspace::from_vectors(6, [0, 2, 4].map(|i| unit_vector(6, i)));
        let second = Subspace::from_vectors(6, [1, 3, 5].map(|i| unit_vector(6, i)));
        assert_eq!(d.factors()[0].carrier(), &second);
        assert_eq!(d.factors()[1].carrier(), &first);
    }

    #[test]
    fn glued_center_metric_is_irreducible() {
        let a = catalog::h3h3_paper_metric();
        assert_eq!(decompose(&a).unwrap().len(), 1);
        assert!(is_irreducible(&a).unwrap());
        assert!(!is_irreducible(&catalog::h3h3()).unwrap());
    }

    #[test]
    fn abelian_inputs_are_refused() {
        assert_eq!(decompose(&catalog::abelian2n()), Err(Error::AbelianFactorPresent));
        assert_eq!(is_irreducible(&catalog::abelian(2)), Err(Error::AbelianFactorPresent));
    }

    #[test]
    fn zero_algebra_has_no_factors() {
        let d = decompose(&catalog::abelian(0)).unwrap();
        assert!(d.is_empty());
        assert!(d.passes());
    }

    #[test]
    fn split_by_block_projection() {
        let a = catalog::h3h3();
        let mut p = Matrix::zeros(6, 6);
        for i in [0, 2, 4] {
            p.set(i, i, Scalar::one());
        }
        let (img, ker) = split_by_projection(&a, &p).unwrap();
        assert_eq!(img.dim(), 3);
        assert_eq!(ker.dim(), 3);
        assert!(img.carrier().is_orthogonal_to(ker.carrier(), a.gram()));
        assert_eq!(img.induced().algebra(), catalog::h3().algebra());

        let (all, none) = split_by_projection(&a, &Matrix::identity(6)).unwrap();
        assert_eq!(all.dim(), 6);
        assert_eq!(none.dim(), 0);

        let mut bad = Matrix::zeros(6, 6);
        bad.set(0, 0, Scalar::one());
        assert_eq!(split_by_projection(&a, &bad).unwrap_err(), Error::NotAProjection);
    }

    #[test]
    fn numeric_backend_matches_exact() {
        let exact = decompose(&catalog::h3h3()).unwrap();
        let numeric = decompose(&catalog::h3h3().to_numeric()).unwrap();
        assert_eq!(numeric.len(), 2);
        assert_eq!(numeric.backend(), Backend::Numeric);
        for (x, y) in exact.factors().iter().zip(numeric.factors()) {
            assert_eq!(x.carrier(), y.carrier());
        }
    }
}
