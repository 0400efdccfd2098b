//! Brute-force reference computations shared by the integration tests.
//!
//! Everything here works on plain `BigRational` tables with its own dense
//! elimination, so it does not share code paths with the library.

#![allow(dead_code)]

use metrilie::{catalog, BracketEntry, LieAlgebra, Matrix, Metric, MetricLieAlgebra, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(s: &Scalar) -> Q {
    s.as_rational().expect("oracle needs exact input").clone()
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `c[i][j][k]` with `[X_i, X_j] = Σ_k c[i][j][k] X_k`.
pub fn structure(a: &MetricLieAlgebra) -> Vec<Vec<Vec<Q>>> {
    let n = a.dim();
    (0..n)
        .map(|i| (0..n).map(|j| a.algebra().basis_bracket(i, j).iter().map(q).collect()).collect())
        .collect()
}

pub fn gram(a: &MetricLieAlgebra) -> Vec<Vec<Q>> {
    let g = a.gram();
    (0..a.dim()).map(|r| (0..a.dim()).map(|c| q(g.get(r, c))).collect()).collect()
}

/// Fully reduced rows, kept sorted by insertion.
struct Reducer {
    cols: usize,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Reducer {
    fn new(cols: usize) -> Self {
        Reducer { cols, rows: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<Q>) {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, r) in self.rows.iter_mut() {
            if !r[p].is_zero() {
                let f = r[p].clone();
                for (x, y) in r.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, v));
    }

    fn nullspace(&self) -> Vec<Vec<Q>> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Q::zero(); self.cols];
                v[free] = Q::one();
                for (p, r) in &self.rows {
                    v[*p] = -r[free].clone();
                }
                v
            })
            .collect()
    }
}

pub fn nullspace(rows: impl IntoIterator<Item = Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let mut r = Reducer::new(cols);
    for row in rows {
        r.insert(row);
    }
    r.nullspace()
}

/// Unknown `f[a][b]` (flattened `a*n + b`) is the `X_a` coordinate of `f(X_b)`.
fn centroid_rows(c: &[Vec<Vec<Q>>]) -> Vec<Vec<Q>> {
    let n = c.len();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // f([X_i,X_j])_k − [f(X_i), X_j]_k
                let mut row = vec![Q::zero(); n * n];
                for l in 0..n {
                    row[k * n + l] += &c[i][j][l];
                }
                for m in 0..n {
                    row[m * n + i] -= &c[m][j][k];
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// `(G f)_{rc} ± (fᵀ G)_{rc}`
fn symmetry_rows(g: &[Vec<Q>], skew: bool) -> Vec<Vec<Q>> {
    let n = g.len();
    let mut rows = Vec::new();
    for r in 0..n {
        for col in 0..n {
            let mut row = vec![Q::zero(); n * n];
            for a in 0..n {
                row[a * n + col] += &g[r][a];
                if skew {
                    row[a * n + r] += &g[a][col];
                } else {
                    row[a * n + r] -= &g[a][col];
                }
            }
            rows.push(row);
        }
    }
    rows
}

pub fn centroid_basis(a: &MetricLieAlgebra) -> Vec<Vec<Q>> {
    nullspace(centroid_rows(&structure(a)), a.dim() * a.dim())
}

pub fn symmetric_centroid_basis(a: &MetricLieAlgebra) -> Vec<Vec<Q>> {
    let mut rows = centroid_rows(&structure(a));
    rows.extend(symmetry_rows(&gram(a), false));
    nullspace(rows, a.dim() * a.dim())
}

pub fn skew_bi_invariant_basis(a: &MetricLieAlgebra) -> Vec<Vec<Q>> {
    let mut rows = centroid_rows(&structure(a));
    rows.extend(symmetry_rows(&gram(a), true));
    nullspace(rows, a.dim() * a.dim())
}

/// Common kernel of the adjoint maps.
pub fn center(a: &MetricLieAlgebra) -> Vec<Vec<Q>> {
    let c = structure(a);
    let n = a.dim();
    let mut rows = Vec::new();
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|i| c[i][j][k].clone()).collect());
        }
    }
    nullspace(rows, n)
}

/// Rank of a list of vectors.
pub fn rank(vs: &[Vec<Q>]) -> usize {
    let cols = vs.first().map_or(0, Vec::len);
    let mut r = Reducer::new(cols);
    for v in vs {
        r.insert(v.clone());
    }
    r.rows.len()
}

/// Determinant by fraction-exact elimination.
pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for r in c + 1..n {
            let f = m[r][c].clone() / m[c][c].clone();
            for k in c..n {
                let t = f.clone() * m[c][k].clone();
                m[r][k] -= t;
            }
        }
    }
    det
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Q>], v: &[Q]) -> bool {
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(basis)
}

fn mat_mul(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += &a[i * n + k] * &b[k * n + j];
            }
        }
    }
    out
}

/// A complex structure found by the oracle.
#[derive(Debug, Clone)]
pub struct OracleJ {
    /// Row-major entries when every coefficient is rational.
    pub exact: Option<Vec<Q>>,
    pub approx: Vec<f64>,
}

#[derive(Debug, Clone)]
pub enum OracleSet {
    Finite(Vec<OracleJ>),
    /// `J² = −I` leaves a coefficient undetermined: infinitely many.
    Continuum,
}

enum Coefficient {
    Exact(Q),
    Approx(f64),
}

/// Solve `J² = −I` over `J = Σ t_a K_a` by linearizing in the monomials
/// `t_a t_b`, then test every sign choice of `t_a = ±√(t_a²)`.
pub fn complex_structures(a: &MetricLieAlgebra) -> OracleSet {
    let n = a.dim();
    if n == 0 {
        return OracleSet::Finite(vec![OracleJ { exact: Some(Vec::new()), approx: Vec::new() }]);
    }
    let ks = skew_bi_invariant_basis(a);
    let d = ks.len();
    let mut monomials = Vec::new();
    for x in 0..d {
        for y in x..d {
            monomials.push((x, y));
        }
    }
    let products: Vec<Vec<Q>> = monomials
        .iter()
        .map(|&(x, y)| {
            let p = mat_mul(&ks[x], &ks[y], n);
            if x == y {
                p
            } else {
                let r = mat_mul(&ks[y], &ks[x], n);
                p.iter().zip(&r).map(|(u, v)| u + v).collect()
            }
        })
        .collect();
    let m = monomials.len();
    let mut red = Reducer::new(m + 1);
    for e in 0..n * n {
        let mut row: Vec<Q> = products.iter().map(|p| p[e].clone()).collect();
        row.push(if e / n == e % n { -Q::one() } else { Q::zero() });
        red.insert(row);
    }
    if red.rows.iter().any(|(p, _)| *p == m) {
        return OracleSet::Finite(Vec::new());
    }
    let pivots: Vec<usize> = red.rows.iter().map(|(p, _)| *p).collect();
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let value = |u: usize| -> Option<Q> {
        let (_, row) = red.rows.iter().find(|(p, _)| *p == u)?;
        if free.iter().any(|&f| !row[f].is_zero()) {
            return None;
        }
        Some(row[m].clone())
    };
    let mut roots = Vec::with_capacity(d);
    for x in 0..d {
        let idx = monomials.iter().position(|&mm| mm == (x, x)).expect("diagonal monomial");
        let Some(sq) = value(idx) else { return OracleSet::Continuum };
        if sq.is_negative() {
            return OracleSet::Finite(Vec::new());
        }
        let root = match (exact_sqrt(sq.numer()), exact_sqrt(sq.denom())) {
            (Some(p), Some(qq)) => Coefficient::Exact(Q::new(p, qq)),
            _ => Coefficient::Approx(sq.to_f64().unwrap().sqrt()),
        };
        roots.push(root);
    }

    let mut found: Vec<OracleJ> = Vec::new();
    for mask in 0u32..(1 << d) {
        let sign = |x: usize| if mask >> x & 1 == 0 { 1i32 } else { -1 };
        let all_exact = roots.iter().all(|r| matches!(r, Coefficient::Exact(_)));
        let candidate = if all_exact {
            let mut j = vec![Q::zero(); n * n];
            for (x, r) in roots.iter().enumerate() {
                let Coefficient::Exact(t) = r else { unreachable!() };
                let t = t * qi(i64::from(sign(x)));
                for (e, k) in j.iter_mut().zip(&ks[x]) {
                    *e += &t * k;
                }
            }
            let sq = mat_mul(&j, &j, n);
            let ok = (0..n * n).all(|e| sq[e] == if e / n == e % n { -Q::one() } else { Q::zero() });
            ok.then(|| OracleJ { approx: j.iter().map(|x| x.to_f64().unwrap()).collect(), exact: Some(j) })
        } else {
            let mut j = vec![0.0f64; n * n];
            for (x, r) in roots.iter().enumerate() {
                let t = match r {
                    Coefficient::Exact(t) => t.to_f64().unwrap(),
                    Coefficient::Approx(t) => *t,
                } * f64::from(sign(x));
                for (e, k) in j.iter_mut().zip(&ks[x]) {
                    *e += t * k.to_f64().unwrap();
                }
            }
            let ok = (0..n).all(|r| {
                (0..n).all(|c| {
                    let s: f64 = (0..n).map(|k| j[r * n + k] * j[k * n + c]).sum();
                    (s + if r == c { 1.0 } else { 0.0 }).abs() < 1e-9
                })
            });
            ok.then_some(OracleJ { exact: None, approx: j })
        };
        if let Some(c) = candidate {
            let dup = found.iter().any(|f| f.approx.iter().zip(&c.approx).all(|(x, y)| (x - y).abs() < 1e-12));
            if !dup {
                found.push(c);
            }
        }
    }
    OracleSet::Finite(found)
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Set equality: exact where both sides are exact, entrywise within `tol`
/// otherwise.
pub fn same_set(found: &[Matrix], oracle: &[OracleJ], tol: f64) -> bool {
    if found.len() != oracle.len() {
        return false;
    }
    let matches = |m: &Matrix, o: &OracleJ| -> bool {
        let exact_m: Option<Vec<Q>> = m.as_slice().iter().map(|s| s.as_rational().cloned()).collect();
        match (&exact_m, &o.exact) {
            (Some(x), Some(y)) => x == y,
            _ => m.as_slice().iter().zip(&o.approx).all(|(x, y)| (x.to_f64() - y).abs() <= tol),
        }
    };
    found.iter().all(|m| oracle.iter().filter(|o| matches(m, o)).count() == 1)
        && oracle.iter().all(|o| found.iter().filter(|m| matches(m, o)).count() == 1)
}

pub fn to_matrix(n: usize, v: &[Q]) -> Matrix {
    Matrix::from_fn(n, n, |r, c| Scalar::from(v[r * n + c].clone()))
}

/// Build from 1-based `(i, j, k, c)` rows, `[X_i, X_j] += c·X_k`.
pub fn algebra_from_table(name: &str, dim: usize, table: &[(usize, usize, usize, i64)], gram_diag: &[i64]) -> MetricLieAlgebra {
    let mut entries: Vec<BracketEntry> = Vec::new();
    for &(i, j, k, c) in table {
        let term = (k - 1, Scalar::from_int(c));
        match entries.iter_mut().find(|e| e.i == i - 1 && e.j == j - 1) {
            Some(e) => e.terms.push(term),
            None => entries.push(BracketEntry::new(i - 1, j - 1, vec![term])),
        }
    }
    let labels = (1..=dim).map(|i| format!("B{i}")).collect();
    let alg = LieAlgebra::new(dim, labels, entries).expect("Jacobi");
    let mut g = Matrix::zeros(dim, dim);
    for (i, &x) in gram_diag.iter().enumerate() {
        g.set(i, i, Scalar::from_int(x));
    }
    MetricLieAlgebra::new(name, alg, Metric::new(g).expect("positive definite")).expect("dims")
}

/// `h3 ⊗ Q(√2)` over Q with basis X, √2X, Y, √2Y, Z, √2Z and the trace
/// form. Over R it splits into two factors along the eigenvalues ±√2.
pub fn h3_sqrt2() -> MetricLieAlgebra {
    algebra_from_table("h3(Q(sqrt2))", 6, &[(1, 3, 5, 1), (1, 4, 6, 1), (2, 3, 6, 1), (2, 4, 5, 2)], &[2, 4, 2, 4, 2, 4])
}

/// `h3 ⊗ Q(√−2)` over Q with basis X, sX, Y, sY, Z, sZ (s² = −2). Its
/// complex structure is multiplication by `s/√2`.
pub fn h3_sqrt_minus2() -> MetricLieAlgebra {
    algebra_from_table("h3(Q(sqrt-2))", 6, &[(1, 3, 5, 1), (1, 4, 6, 1), (2, 3, 6, 1), (2, 4, 5, -2)], &[1, 2, 1, 2, 1, 2])
}

/// Bundled algebras with their own metrics plus the named variants.
pub fn all_examples() -> Vec<MetricLieAlgebra> {
    let mut v: Vec<MetricLieAlgebra> = catalog::ENTRIES.iter().map(|e| (e.build)()).collect();
    v.push(catalog::h3c_skewed_center_metric());
    v.push(catalog::h3c_double());
    v
}

/// Complex structure to hermitize random metrics with, when one is known.
pub fn known_structure(a: &MetricLieAlgebra) -> Option<Matrix> {
    match a.dim() {
        6 if a.algebra() == catalog::h3c().algebra() || a.algebra() == catalog::sl2c_real().algebra() => {
            Some(catalog::paired_complex_structure(6))
        }
        12 if a.algebra() == catalog::h3c_double().algebra() => Some(catalog::paired_complex_structure(12)),
        _ => None,
    }
}
