//! Eigenvalues of operators that are symmetric for a metric.
//!
//! Exact operators go through their minimal polynomial: real roots are
//! isolated with a Sturm chain and every rational root is recognised
//! exactly. Numeric operators are symmetrized with a Cholesky factor of the
//! Gram matrix and diagonalized by cyclic Jacobi rotations.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{Matrix, RowEchelon};
use crate::scalar::Scalar;

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading().clone();
        Poly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate at a square matrix (Horner).
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(n).scale(&Scalar::from(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::new(Vec::new()), self.clone());
        }
        let mut quot = alloc::vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let f = &rem[k + dd] / d.leading();
            if f.is_zero() {
                continue;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &f * c;
            }
            quot[k] = f;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Quotient by `x − r` (synthetic division) and the remainder `p(r)`.
    pub fn div_linear(&self, r: &BigRational) -> (Poly, BigRational) {
        if self.is_zero() {
            return (self.clone(), BigRational::zero());
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * r + c;
            out.push(acc.clone());
        }
        let rem = out.pop().expect("nonempty");
        out.reverse();
        (Poly::new(out), rem)
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&self.gcd(&self.derivative())).0.monic()
    }

    /// Scaled to integer coefficients with gcd 1 and the same leading sign.
    fn primitive(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = alloc::vec![self.clone(), self.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[k - 2].div_rem(&chain[k - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(Poly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        chain
    }

    /// Distinct real roots in increasing order, each rational root exact.
    pub fn real_roots(&self) -> Vec<RealRoot> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let p = self.squarefree_part();
        let chain = p.sturm_chain();
        // every root satisfies |x| < 1 + max |a_i / a_n|
        let bound = BigRational::one()
            + p.coeffs.iter().map(|c| (c / p.leading()).abs()).max().unwrap_or_else(BigRational::zero);
        let mut isolated = Vec::new();
        let mut stack = alloc::vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            match roots_in(&chain, &lo, &hi) {
                0 => {}
                1 => isolated.push((lo, hi)),
                _ => {
                    let mid = midpoint(&lo, &hi);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        isolated.sort_by(|a, b| a.0.cmp(&b.0));

        let prim = p.primitive();
        let lead = BigRational::from_integer(prim.last().expect("nonzero").abs());
        isolated.into_iter().map(|(lo, hi)| p.classify_root(&chain, lo, hi, &lead)).collect()
    }

    /// Narrow `(lo, hi]` (one root inside) until a rational root would be
    /// the only point of `(1/lead)·ℤ` left, then test that point.
    fn classify_root(&self, chain: &[Poly], mut lo: BigRational, mut hi: BigRational, lead: &BigRational) -> RealRoot {
        let target = lead.recip();
        while &hi - &lo >= target {
            if self.eval(&hi).is_zero() {
                return RealRoot::Rational(hi);
            }
            let mid = midpoint(&lo, &hi);
            if roots_in(chain, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let m = (&hi * lead).floor();
        let candidate = m / lead;
        if candidate > lo && self.eval(&candidate).is_zero() {
            return RealRoot::Rational(candidate);
        }
        // irrational: refine to double precision
        loop {
            let scale = BigRational::one().max(hi.abs());
            if (&hi - &lo) * BigRational::from_integer(BigInt::one() << 60u32) < scale {
                break;
            }
            let mid = midpoint(&lo, &hi);
            if roots_in(chain, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        RealRoot::Irrational { lo, hi }
    }
}

fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

fn sign_changes(chain: &[Poly], x: &BigRational) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Distinct roots in `(lo, hi]`.
fn roots_in(chain: &[Poly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_changes(chain, lo) - sign_changes(chain, hi)
}

/// A real root of a rational polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealRoot {
    Rational(BigRational),
    /// The unique root in `(lo, hi]`, an interval of relative width below 2⁻⁶⁰.
    Irrational { lo: BigRational, hi: BigRational },
}

impl RealRoot {
    pub fn approx(&self) -> f64 {
        match self {
            RealRoot::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            RealRoot::Irrational { lo, hi } => midpoint(lo, hi).to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealRoot::Rational(_))
    }
}

/// Minimal polynomial of an exact square matrix (monic). `None` when the
/// matrix has numeric entries.
pub fn minimal_polynomial(m: &Matrix) -> Option<Poly> {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    if m.backend() != crate::scalar::Backend::Exact {
        return None;
    }
    let n = m.rows();
    let mut powers: Vec<Matrix> = alloc::vec![Matrix::identity(n)];
    let mut ech = RowEchelon::new(n * n);
    ech.insert(powers[0].as_slice().to_vec());
    loop {
        let next = &powers[powers.len() - 1] * m;
        if ech.contains(next.as_slice()) {
            // the single relation Σ_{k≤d} v_k M^k = 0
            let d = powers.len();
            let system = Matrix::from_fn(n * n, d + 1, |r, c| {
                if c < d {
                    powers[c].as_slice()[r].clone()
                } else {
                    next.as_slice()[r].clone()
                }
            });
            let null = system.nullspace();
            let v = null.into_iter().next().expect("dependency exists");
            let lead = v[d].as_rational().expect("exact").clone();
            let coeffs = v.iter().map(|c| c.as_rational().expect("exact") / &lead).collect();
            return Some(Poly::new(coeffs));
        }
        ech.insert(next.as_slice().to_vec());
        powers.push(next);
    }
}

/// Eigenvalues (ascending) of a numeric matrix `a` that is symmetric for
/// the positive definite `gram`: `gram·a = aᵀ·gram`.
pub fn symmetric_eigenvalues(a: &Matrix, gram: &Matrix) -> Vec<f64> {
    let n = a.rows();
    let af: Vec<f64> = a.as_slice().iter().map(Scalar::to_f64).collect();
    let gf: Vec<f64> = gram.as_slice().iter().map(Scalar::to_f64).collect();
    let l = cholesky(&gf, n);
    // S = Lᵀ·a·L⁻ᵀ is symmetric when G = L·Lᵀ
    let lt: Vec<f64> = (0..n * n).map(|k| l[(k % n) * n + k / n]).collect();
    let lt_a = mat_mul(&lt, &af, n);
    let lt_inv = upper_inverse(&lt, n);
    let mut s = mat_mul(&lt_a, &lt_inv, n);
    for i in 0..n {
        for j in 0..i {
            let avg = (s[i * n + j] + s[j * n + i]) / 2.0;
            s[i * n + j] = avg;
            s[j * n + i] = avg;
        }
    }
    let mut ev = jacobi_eigenvalues(s, n);
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    ev
}

fn mat_mul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = alloc::vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0.0 {
                for j in 0..n {
                    out[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    out
}

/// Lower-triangular `L` with `g = L·Lᵀ`.
fn cholesky(g: &[f64], n: usize) -> Vec<f64> {
    let mut l = alloc::vec![0.0; n * n];
    for j in 0..n {
        let mut d = g[j * n + j];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        let d = libm::sqrt(d.max(0.0));
        l[j * n + j] = d;
        for i in (j + 1)..n {
            let mut s = g[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = if d == 0.0 { 0.0 } else { s / d };
        }
    }
    l
}

fn upper_inverse(u: &[f64], n: usize) -> Vec<f64> {
    let mut inv = alloc::vec![0.0; n * n];
    for col in 0..n {
        for i in (0..n).rev() {
            let mut s = if i == col { 1.0 } else { 0.0 };
            for k in (i + 1)..n {
                s -= u[i * n + k] * inv[k * n + col];
            }
            inv[i * n + col] = s / u[i * n + i];
        }
    }
    inv
}

fn jacobi_eigenvalues(mut s: Vec<f64>, n: usize) -> Vec<f64> {
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| s[i * n + j] * s[i * n + j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = s[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (s[q * n + q] - s[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let sn = t * c;
                for k in 0..n {
                    let akp = s[k * n + p];
                    let akq = s[k * n + q];
                    s[k * n + p] = c * akp - sn * akq;
                    s[k * n + q] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let apk = s[p * n + k];
                    let aqk = s[q * n + k];
                    s[p * n + k] = c * apk - sn * aqk;
                    s[q * n + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| s[i * n + i]).collect()
}
