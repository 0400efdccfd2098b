//! Orthogonal bi-invariant complex structures and complexification.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{BracketEntry, LieAlgebra, Metric, MetricLieAlgebra};
use crate::centroid::{centroid_residual, skew_centroid, symmetry_residual};
use crate::decomp::{decompose_with, DecomposeOptions, Decomposition};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, vec_add, vec_sub, Matrix, Operator};
use crate::scalar::{max_abs, Backend, Scalar};
use crate::subspace::Subspace;

/// Residuals of the three defining conditions of an orthogonal
/// bi-invariant complex structure.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexCertificate {
    /// `J² + I`
    pub square: Scalar,
    /// `J[X,Y] − [JX,Y]`
    pub bi_invariance: Scalar,
    /// `G·J + Jᵀ·G`
    pub skew: Scalar,
}

impl ComplexCertificate {
    pub fn passes(&self) -> bool {
        self.is_bi_invariant_structure() && self.skew.is_zero()
    }

    /// `J² = −I` and bi-invariance, without the metric condition.
    pub fn is_bi_invariant_structure(&self) -> bool {
        self.square.is_zero() && self.bi_invariance.is_zero()
    }

    pub fn max_residual(&self) -> Scalar {
        max_abs([&self.square, &self.bi_invariance, &self.skew])
    }
}

pub fn verify_complex_structure(a: &MetricLieAlgebra, j: &Operator) -> ComplexCertificate {
    assert_eq!((j.rows(), j.cols()), (a.dim(), a.dim()), "operator shape mismatch");
    let n = a.dim();
    ComplexCertificate {
        square: (&(j * j) + &Matrix::identity(n)).max_abs(),
        bi_invariance: centroid_residual(a.algebra(), j),
        skew: symmetry_residual(a.gram(), j, true),
    }
}

fn require_structure(a: &MetricLieAlgebra, j: &Operator) -> Result<()> {
    if j.rows() != a.dim() || j.cols() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: j.rows() });
    }
    if verify_complex_structure(a, j).passes() {
        Ok(())
    } else {
        Err(Error::InvalidComplexStructure)
    }
}

/// One enumerated structure `±J₁ ⊕ … ⊕ ±J_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexStructure {
    j: Operator,
    signs: Vec<i8>,
    certificate: ComplexCertificate,
}

impl ComplexStructure {
    pub fn matrix(&self) -> &Operator {
        &self.j
    }

    /// Sign of each factor relative to the canonical `J_1 … J_k`.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn certificate(&self) -> &ComplexCertificate {
        &self.certificate
    }

    pub fn backend(&self) -> Backend {
        self.j.backend()
    }
}

pub fn enumerate_complex_structures(a: &MetricLieAlgebra) -> Result<Vec<ComplexStructure>> {
    enumerate_complex_structures_with(a, &DecomposeOptions::default())
}

/// All orthogonal bi-invariant complex structures, ordered by sign vector
/// (`+` before `−`, first factor most significant).
pub fn enumerate_complex_structures_with(
    a: &MetricLieAlgebra,
    options: &DecomposeOptions,
) -> Result<Vec<ComplexStructure>> {
    let decomposition = decompose_with(a, options)?;
    structures_on_factors(a, &decomposition)
}

/// Enumeration on an already computed decomposition of `a`.
pub fn structures_on_factors(a: &MetricLieAlgebra, decomposition: &Decomposition) -> Result<Vec<ComplexStructure>> {
    let n = a.dim();
    let mut pieces: Vec<Operator> = Vec::new();
    for (idx, factor) in decomposition.factors().iter().enumerate() {
        let skew = skew_centroid(factor.induced());
        match skew.dim() {
            0 => return Ok(Vec::new()),
            1 => {}
            d => {
                return Err(Error::InternalAssertion(format!(
                    "skew centroid of irreducible factor {} has dimension {}",
                    idx + 1,
                    d
                )))
            }
        }
        let k = &skew.basis()[0];
        let local = normalize(k).map_err(|e| match e {
            Error::InternalAssertion(msg) => Error::InternalAssertion(format!("factor {}: {}", idx + 1, msg)),
            other => other,
        })?;
        // ambient -> factor coordinates -> J -> ambient
        let carrier = factor.carrier();
        let basis = carrier.basis_matrix();
        let select = Matrix::from_fn(carrier.dim(), n, |r, c| {
            if carrier.pivots()[r] == c {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        pieces.push(&(&(&basis.transpose() * &local) * &select) * factor.projection());
    }

    let k = pieces.len();
    let mut out = Vec::with_capacity(1 << k);
    for m in 0u64..(1u64 << k) {
        let signs: Vec<i8> = (0..k).map(|j| if m >> (k - 1 - j) & 1 == 0 { 1 } else { -1 }).collect();
        let mut j = Matrix::zeros(n, n);
        for (s, p) in signs.iter().zip(&pieces) {
            j = if *s > 0 { &j + p } else { &j - p };
        }
        let certificate = verify_complex_structure(a, &j);
        if !certificate.passes() {
            return Err(Error::InternalAssertion(format!(
                "assembled structure {:?} fails verification (residual {})",
                signs,
                certificate.max_residual()
            )));
        }
        out.push(ComplexStructure { j, signs, certificate });
    }
    Ok(out)
}

/// `K / √(−λ)` where `K² = λ·I` with `λ < 0`.
fn normalize(k: &Operator) -> Result<Operator> {
    let d = k.rows();
    let sq = k * k;
    let lambda = sq.get(0, 0).clone();
    let scalar_residual = (&sq - &Matrix::identity(d).scale(&lambda)).max_abs();
    if !scalar_residual.is_zero() {
        return Err(Error::InternalAssertion(format!("K² is not scalar (residual {})", scalar_residual)));
    }
    if !lambda.is_negative() {
        return Err(Error::InternalAssertion(format!("K² = {}·I is not negative", lambda)));
    }
    let root = (-&lambda).sqrt().expect("positive");
    Ok(k.scale(&root.recip().expect("nonzero")))
}

/// Value of the Hermitian form `⟨u,v⟩_ℂ = (⟨u,v⟩ + i⟨u,Jv⟩)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianValue {
    pub re: Scalar,
    pub im: Scalar,
}

impl HermitianValue {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        HermitianValue { re, im }
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> HermitianValue {
        HermitianValue { re: -&self.im, im: self.re.clone() }
    }

    pub fn conj(&self) -> HermitianValue {
        HermitianValue { re: self.re.clone(), im: -&self.im }
    }
}

/// Normalization factor in the Hermitian form.
pub const HERMITIAN_CONVENTION: &str = "(<X,Y> + i<X,JY>)/2";

pub fn hermitian_form(a: &MetricLieAlgebra, j: &Operator, u: &[Scalar], v: &[Scalar]) -> Result<HermitianValue> {
    require_structure(a, j)?;
    if u.len() != a.dim() || v.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: if u.len() != a.dim() { u.len() } else { v.len() } });
    }
    let half = Scalar::ratio(1, 2);
    let re = &a.inner(u, v) * &half;
    let im = &a.inner(u, &j.mul_vec(v)) * &half;
    Ok(HermitianValue { re, im })
}

/// `g^ℂ` as a real algebra on pairs `(a, b) ↔ a + i·b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexifiedAlgebra {
    base_dim: usize,
    base_gram: Matrix,
    real_form: MetricLieAlgebra,
    i_op: Operator,
    sigma_op: Operator,
}

pub fn complexify(a: &MetricLieAlgebra) -> ComplexifiedAlgebra {
    let n = a.dim();
    let alg = a.algebra();
    let mut entries: Vec<BracketEntry> = Vec::new();
    let mut push = |i: usize, j: usize, terms: Vec<(usize, Scalar)>| {
        if !terms.is_empty() {
            entries.push(BracketEntry::new(i, j, terms));
        }
    };
    let nonzero = |i: usize, j: usize, offset: usize, negate: bool| -> Vec<(usize, Scalar)> {
        alg.basis_bracket(i, j)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k + offset, if negate { -c } else { c.clone() }))
            .collect()
    };
    // [(a,b),(c,d)] = ([a,c] − [b,d], [a,d] + [b,c])
    for i in 0..n {
        for j in (i + 1)..n {
            push(i, j, nonzero(i, j, 0, false));
            push(n + i, n + j, nonzero(i, j, 0, true));
        }
        for j in 0..n {
            push(i, n + j, nonzero(i, j, n, false));
        }
    }
    let mut labels: Vec<String> = alg.labels().to_vec();
    labels.extend(alg.labels().iter().map(|l| format!("i{}", l)));
    let algebra = LieAlgebra::unchecked(2 * n, labels, entries).expect("doubled table is well formed");
    let metric = Metric::block_diagonal(a.metric(), a.metric());
    let real_form = MetricLieAlgebra::new(format!("{}^C", a.name()), algebra, metric).expect("dimensions agree");

    let id = Matrix::identity(n);
    let zero = Matrix::zeros(n, n);
    ComplexifiedAlgebra {
        base_dim: n,
        base_gram: a.gram().clone(),
        real_form,
        i_op: Matrix::from_blocks(&zero, &-&id, &id, &zero),
        sigma_op: Matrix::block_diagonal(&id, &-&id),
    }
}

impl ComplexifiedAlgebra {
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn real_form(&self) -> &MetricLieAlgebra {
        &self.real_form
    }

    /// `(a, b) ↦ (−b, a)`
    pub fn i_op(&self) -> &Operator {
        &self.i_op
    }

    /// `(a, b) ↦ (a, −b)`
    pub fn sigma_op(&self) -> &Operator {
        &self.sigma_op
    }

    /// `v ↦ (v, 0)`
    pub fn embed(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.base_dim, "vector length mismatch");
        let mut out = v.to_vec();
        out.extend((0..self.base_dim).map(|_| Scalar::zero()));
        out
    }

    /// `⟨(a,b),(c,d)⟩^ℂ = aᵀGc + bᵀGd + i(bᵀGc − aᵀGd)`
    pub fn complex_inner(&self, u: &[Scalar], v: &[Scalar]) -> HermitianValue {
        let n = self.base_dim;
        let g = &self.base_gram;
        let (a, b) = u.split_at(n);
        let (c, d) = v.split_at(n);
        HermitianValue {
            re: &g.bilinear(a, c) + &g.bilinear(b, d),
            im: &g.bilinear(b, c) - &g.bilinear(a, d),
        }
    }

    /// `f^ℂ = diag(f, f)`.
    pub fn extend_operator(&self, f: &Operator) -> Result<Operator> {
        if f.rows() != self.base_dim || f.cols() != self.base_dim {
            return Err(Error::DimensionMismatch { expected: self.base_dim, found: f.rows() });
        }
        Ok(Matrix::block_diagonal(f, f))
    }
}

/// Checks attached to an eigenspace splitting.
#[derive(Debug, Clone, PartialEq)]
pub struct EigensplitCertificate {
    pub plus_is_ideal: bool,
    pub minus_is_ideal: bool,
    /// Largest `|⟨u, v⟩^ℂ|` (real or imaginary part) over basis pairs.
    pub orthogonality: Scalar,
    /// `σ(g₁) = g₋₁` as canonical subspaces.
    pub sigma_swaps: bool,
    /// `J^ℂ − i_op` on `g₁` and `J^ℂ + i_op` on `g₋₁`.
    pub eigen_residual: Scalar,
}

impl EigensplitCertificate {
    pub fn passes(&self) -> bool {
        self.plus_is_ideal
            && self.minus_is_ideal
            && self.orthogonality.is_zero()
            && self.sigma_swaps
            && self.eigen_residual.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigensplit {
    pub complexified: ComplexifiedAlgebra,
    /// Where `J^ℂ` acts as `i`.
    pub plus: Subspace,
    /// Where `J^ℂ` acts as `−i`.
    pub minus: Subspace,
    pub certificate: EigensplitCertificate,
}

pub fn eigensplit(a: &MetricLieAlgebra, j: &Operator) -> Result<Eigensplit> {
    require_structure(a, j)?;
    let ac = complexify(a);
    let jc = ac.extend_operator(j)?;
    let n2 = 2 * a.dim();
    let half = Scalar::ratio(1, 2);
    let ij = ac.i_op() * &jc;
    let id = Matrix::identity(n2);
    let plus = Subspace::column_space(&(&id - &ij).scale(&half));
    let minus = Subspace::column_space(&(&id + &ij).scale(&half));

    let alg = ac.real_form().algebra();
    let mut inner = Vec::new();
    for u in plus.basis() {
        for v in minus.basis() {
            let h = ac.complex_inner(u, v);
            inner.push(h.re.abs());
            inner.push(h.im.abs());
        }
    }
    let mut eigen = Vec::new();
    for u in plus.basis() {
        eigen.push(max_abs(&vec_sub(&jc.mul_vec(u), &ac.i_op().mul_vec(u))));
    }
    for u in minus.basis() {
        eigen.push(max_abs(&vec_add(&jc.mul_vec(u), &ac.i_op().mul_vec(u))));
    }
    let certificate = EigensplitCertificate {
        plus_is_ideal: alg.is_ideal(&plus),
        minus_is_ideal: alg.is_ideal(&minus),
        orthogonality: max_abs(&inner),
        sigma_swaps: plus.image(ac.sigma_op()) == minus,
        eigen_residual: max_abs(&eigen),
    };
    Ok(Eigensplit { complexified: ac, plus, minus, certificate })
}

/// Residuals for `Φ(a,b) = (a + Jb, a − Jb)` from `g^ℂ` onto `(g,J) ⊕ (g,−J)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoublingCertificate {
    /// `Φ[u,v] − [Φu,Φv]`
    pub bracket: Scalar,
    /// `Φ∘i_op − (J ⊕ −J)∘Φ`
    pub intertwining: Scalar,
    /// `h_J ⊕ h_{−J}` pulled back along `Φ`, minus `⟨·,·⟩^ℂ`.
    pub hermitian: Scalar,
    pub rank: usize,
    pub dim: usize,
}

impl DoublingCertificate {
    pub fn passes(&self) -> bool {
        self.bracket.is_zero() && self.intertwining.is_zero() && self.hermitian.is_zero() && self.rank == self.dim
    }
}

/// The doubling map `Φ` as a `2n × 2n` matrix `[[I, J], [I, −J]]`.
pub fn doubling_map(j: &Operator) -> Operator {
    let id = Matrix::identity(j.rows());
    Matrix::from_blocks(&id, j, &id, &-j)
}

pub fn verify_doubling_isometry(a: &MetricLieAlgebra, j: &Operator) -> Result<DoublingCertificate> {
    require_structure(a, j)?;
    let n = a.dim();
    let ac = complexify(a);
    let target = a.direct_sum(a);
    let phi = doubling_map(j);
    let images = phi.columns();

    let mut bracket = Vec::new();
    let src = ac.real_form().algebra();
    for p in 0..2 * n {
        for q in (p + 1)..2 * n {
            let lhs = phi.mul_vec(src.basis_bracket(p, q));
            let rhs = target.algebra().bracket(&images[p], &images[q])?;
            bracket.push(max_abs(&vec_sub(&lhs, &rhs)));
        }
    }

    let j_sum = Matrix::block_diagonal(j, &-j);
    let intertwining = (&(&phi * ac.i_op()) - &(&j_sum * &phi)).max_abs();

    let minus_j = -j;
    let mut hermitian = Vec::new();
    for p in 0..2 * n {
        for q in 0..2 * n {
            let (x1, x2) = images[p].split_at(n);
            let (y1, y2) = images[q].split_at(n);
            let h1 = hermitian_form(a, j, x1, y1)?;
            let h2 = hermitian_form(a, &minus_j, x2, y2)?;
            let want = ac.complex_inner(&unit_vector(2 * n, p), &unit_vector(2 * n, q));
            hermitian.push((&(&h1.re + &h2.re) - &want.re).abs());
            hermitian.push((&(&h1.im + &h2.im) - &want.im).abs());
        }
    }
    Ok(DoublingCertificate {
        bracket: max_abs(&bracket),
        intertwining,
        hermitian: max_abs(&hermitian),
        rank: phi.rank(),
        dim: 2 * n,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommuteReport {
    pub commute: bool,
    /// Largest entry of `J₁J₂ − J₂J₁`.
    pub commutator_norm: Scalar,
    /// Whether `(J₁J₂ − J₂J₁)(g) ⊆ Z(g)`.
    pub image_in_center: bool,
    pub first: ComplexCertificate,
    pub second: ComplexCertificate,
}

pub fn commute_check(a: &MetricLieAlgebra, j1: &Operator, j2: &Operator) -> CommuteReport {
    let c = j1.commutator(j2);
    let norm = c.max_abs();
    CommuteReport {
        commute: norm.is_zero(),
        image_in_center: a.center().contains_subspace(&Subspace::column_space(&c)),
        commutator_norm: norm,
        first: verify_complex_structure(a, j1),
        second: verify_complex_structure(a, j2),
    }
}

/// The family `J_λ` on abelian `R⁴`:
/// `(λ² + 1)^{-1/2} · [[0,1,−λ,0], [−1,0,0,λ], [λ,0,0,1], [0,−λ,−1,0]]`.
pub fn jlambda(lambda: &Scalar) -> Result<Operator> {
    let norm_sq = &(lambda * lambda) + &Scalar::one();
    let norm = if lambda.is_exact() {
        norm_sq.sqrt_exact().ok_or_else(|| Error::IrrationalNormalizer(norm_sq.clone()))?
    } else {
        norm_sq.sqrt().expect("positive")
    };
    let l = lambda.clone();
    let (o, z) = (Scalar::one(), Scalar::zero());
    let rows = alloc::vec![
        alloc::vec![z.clone(), o.clone(), -&l, z.clone()],
        alloc::vec![-&o, z.clone(), z.clone(), l.clone()],
        alloc::vec![l.clone(), z.clone(), z.clone(), o.clone()],
        alloc::vec![z.clone(), -&l, -&o, z],
    ];
    Ok(Matrix::from_rows(rows)?.scale(&norm.recip().expect("nonzero")))
}
