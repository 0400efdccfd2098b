//! Inner products that change how an algebra decomposes.
//!
//! Every construction is seeded, verified with [`decompose`] after the
//! fact and retried with a derived seed when verification fails.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Metric, MetricLieAlgebra};
use crate::complex::{enumerate_complex_structures_with, structures_on_factors};
use crate::decomp::{decompose_with, DecomposeOptions, Decomposition};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{max_abs, Backend, Scalar};

/// Default entry bound for the perturbation matrix `R`.
pub const DEFAULT_SPREAD: i64 = 5;
/// Denominator of the perturbation scale `ε = 1/10`.
pub const EPSILON_DENOMINATOR: i64 = 10;
/// Attempts per construction before giving up.
pub const MAX_RETRIES: usize = 20;

/// Seed for sub-run `index` of a run seeded with `seed` (splitmix64).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `BᵀB` with `B = I + R/10` and integer entries of `R` in
/// `[−spread, spread]`. `BᵀB` is positive definite exactly when `B` is
/// invertible, so singular draws are caught by the metric check.
fn random_product(n: usize, rng: &mut ChaCha8Rng, spread: i64) -> Option<Metric> {
    let eps = Scalar::ratio(1, EPSILON_DENOMINATOR);
    let r = Matrix::from_fn(n, n, |_, _| Scalar::from_int(rng.gen_range(-spread..=spread)));
    let b = &Matrix::identity(n) + &r.scale(&eps);
    let g = &b.transpose() * &b;
    let orthogonal_pair = (0..n).any(|i| (i + 1..n).any(|j| g.get(i, j).is_zero()));
    if spread > 0 && orthogonal_pair {
        return None;
    }
    Metric::new(g).ok()
}

/// Generic Gram matrix `BᵀB`, redrawn until `B` is invertible. With
/// `spread > 0`, draws that make two basis vectors orthogonal are rejected
/// as well.
pub fn random_gram(n: usize, seed: u64, spread: i64) -> Metric {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(g) = random_product(n, &mut rng, spread) {
            return g;
        }
    }
}

/// `(H + JᵀHJ)/2`, the closest metric making `J` orthogonal.
pub fn hermitize(gram: &Matrix, j: &Matrix) -> Metric {
    let avg = &(gram + &(&(&j.transpose() * gram) * j)).scale(&Scalar::ratio(1, 2));
    Metric::new(avg.clone()).expect("average of positive definite forms")
}

/// Blocks of a direct sum, each assumed indecomposable.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpec {
    blocks: Vec<MetricLieAlgebra>,
    pub seed: u64,
    pub spread: i64,
}

impl BlockSpec {
    /// Fails with [`Error::AbelianBlock`] for a block with `[b, b] = 0`.
    pub fn new(blocks: Vec<MetricLieAlgebra>, seed: u64) -> Result<Self> {
        for (index, b) in blocks.iter().enumerate() {
            if b.derived_subalgebra().is_zero() {
                return Err(Error::AbelianBlock { index });
            }
        }
        Ok(BlockSpec { blocks, seed, spread: DEFAULT_SPREAD })
    }

    pub fn blocks(&self) -> &[MetricLieAlgebra] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn sum_of(blocks: &[MetricLieAlgebra]) -> MetricLieAlgebra {
        blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.direct_sum(b))
    }
}

/// A verified metric produced by the lab.
#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    /// Direct sum of the blocks carrying the new metric.
    pub algebra: MetricLieAlgebra,
    pub factor_count: usize,
    /// Attempts used, at least 1.
    pub attempts: usize,
    /// The verifying decomposition of `algebra`.
    pub decomposition: Decomposition,
}

impl Construction {
    pub fn metric(&self) -> &Metric {
        self.algebra.metric()
    }
}

fn retry<T>(seed: u64, mut attempt: impl FnMut(u64) -> Result<Option<T>>) -> Result<(T, usize)> {
    for i in 0..MAX_RETRIES {
        if let Some(t) = attempt(derive_seed(seed, i as u64))? {
            return Ok((t, i + 1));
        }
    }
    Err(Error::GenericityFailure { attempts: MAX_RETRIES })
}

/// Metric on the direct sum of all blocks with a single irreducible factor.
pub fn make_irreducible_metric(spec: &BlockSpec) -> Result<Construction> {
    make_metric_with_factor_count(spec, 1)
}

/// Blocks `1..l−1` keep their own metrics and stay orthogonal; blocks
/// `l..k` are glued by one generic metric into a single factor.
pub fn make_metric_with_factor_count(spec: &BlockSpec, l: usize) -> Result<Construction> {
    build_with_factor_count(spec, l, None)
}

/// Shared construction. With `structures`, every metric is made Hermitian
/// for the given per-block complex structures.
fn build_with_factor_count(spec: &BlockSpec, l: usize, structures: Option<&[Matrix]>) -> Result<Construction> {
    let k = spec.len();
    if l == 0 || l > k {
        return Err(Error::InvalidFactorCount { l, k });
    }
    let kept = &spec.blocks[..l - 1];
    let glued = BlockSpec::sum_of(&spec.blocks[l - 1..]);
    if glued.has_abelian_factor() {
        return Err(Error::AbelianFactorPresent);
    }
    let glued_j = structures.map(|js| {
        js[l - 1..].iter().skip(1).fold(js[l - 1].clone(), |acc, j| Matrix::block_diagonal(&acc, j))
    });
    let mut kept_grams: Vec<Matrix> = Vec::new();
    for (i, b) in kept.iter().enumerate() {
        let g = match structures {
            Some(js) => hermitize(b.gram(), &js[i]).gram().clone(),
            None => b.gram().clone(),
        };
        kept_grams.push(g);
    }
    let full = BlockSpec::sum_of(&spec.blocks);

    let (construction, attempts) = retry(spec.seed, |seed| {
        let mut g = random_gram(glued.dim(), seed, spec.spread);
        if let Some(j) = &glued_j {
            g = hermitize(g.gram(), j);
        }
        let gram = kept_grams.iter().rev().fold(g.gram().clone(), |acc, kg| Matrix::block_diagonal(kg, &acc));
        let candidate = full.with_metric(Metric::new(gram)?)?;
        let d = decompose_with(&candidate, &DecomposeOptions::with_seed(seed))?;
        Ok((d.len() == l).then(|| Construction { algebra: candidate, factor_count: l, attempts: 0, decomposition: d }))
    })?;
    Ok(Construction { attempts, ..construction })
}

/// Outcome of a complex-structure count on a constructed metric.
#[derive(Debug, Clone, PartialEq)]
pub struct JCountReport {
    pub l: usize,
    pub blocks: usize,
    pub factor_count: usize,
    pub count: usize,
    pub attempts: usize,
    pub construction: Construction,
}

impl JCountReport {
    pub fn expected(&self) -> usize {
        1 << self.l
    }
}

/// Build an `l`-factor metric Hermitian for each block's complex structure
/// and count the orthogonal bi-invariant complex structures.
pub fn jcount_experiment(spec: &BlockSpec, l: usize) -> Result<JCountReport> {
    let k = spec.len();
    if l == 0 || l > k {
        return Err(Error::InvalidFactorCount { l, k });
    }
    let mut structures = Vec::with_capacity(k);
    for (index, b) in spec.blocks.iter().enumerate() {
        let js = match enumerate_complex_structures_with(b, &DecomposeOptions::with_seed(spec.seed)) {
            Ok(js) => js,
            Err(Error::AbelianFactorPresent) => Vec::new(),
            Err(e) => return Err(e),
        };
        match js.into_iter().next() {
            Some(j) => structures.push(j.matrix().clone()),
            None => return Err(Error::NoComplexStructureOnBlock { index }),
        }
    }
    let construction = build_with_factor_count(spec, l, Some(&structures))?;
    let js = structures_on_factors(&construction.algebra, &construction.decomposition)?;
    let report = JCountReport {
        l,
        blocks: k,
        factor_count: construction.factor_count,
        count: js.len(),
        attempts: construction.attempts,
        construction,
    };
    if report.count != report.expected() {
        return Err(Error::InternalAssertion(format!(
            "{} complex structures on an {}-factor Hermitian metric, expected {}",
            report.count,
            l,
            report.expected()
        )));
    }
    Ok(report)
}

/// FNV-1a hash of the Gram entries in row-major order.
pub fn gram_hash(gram: &Matrix) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for x in gram.as_slice() {
        for byte in format!("{};", x).bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions {
    pub trials: usize,
    pub seed: u64,
    pub spread: i64,
    /// Metrics used for the first trials before random sampling starts.
    pub leading: Vec<Metric>,
}

impl ScanOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        ScanOptions { trials, seed, spread: DEFAULT_SPREAD, leading: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub trial: usize,
    /// `None` for leading metrics.
    pub seed: Option<u64>,
    pub gram_hash: u64,
    /// `None` when the trial was skipped.
    pub factors: Option<usize>,
    pub jcount: Option<usize>,
    pub backend: Backend,
    pub max_residual: Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    /// Number of trials per J-count.
    pub histogram: BTreeMap<usize, usize>,
    pub skipped: usize,
    pub spread: i64,
}

/// Count complex structures across sampled metrics on a fixed algebra.
/// Trials refused for an abelian factor are counted as skipped.
pub fn metric_scan(a: &MetricLieAlgebra, options: &ScanOptions) -> Result<ScanReport> {
    let mut rows = Vec::with_capacity(options.trials);
    let mut histogram = BTreeMap::new();
    let mut skipped = 0;
    for trial in 0..options.trials {
        let (metric, seed) = match options.leading.get(trial) {
            Some(m) => (m.clone(), None),
            None => {
                let s = derive_seed(options.seed, trial as u64);
                (random_gram(a.dim(), s, options.spread), Some(s))
            }
        };
        let gram_hash = gram_hash(metric.gram());
        let candidate = a.with_metric(metric)?;
        let opts = DecomposeOptions::with_seed(seed.unwrap_or(options.seed));
        let outcome = decompose_with(&candidate, &opts)
            .and_then(|d| structures_on_factors(&candidate, &d).map(|js| (d, js)));
        match outcome {
            Ok((d, js)) => {
                let mut residuals = Vec::new();
                for f in d.factors() {
                    residuals.push(f.certificate().projection.max_residual());
                }
                for j in &js {
                    residuals.push(j.certificate().max_residual());
                }
                *histogram.entry(js.len()).or_insert(0) += 1;
                rows.push(ScanRow {
                    trial,
                    seed,
                    gram_hash,
                    factors: Some(d.len()),
                    jcount: Some(js.len()),
                    backend: d.backend(),
                    max_residual: max_abs(&residuals),
                });
            }
            Err(Error::AbelianFactorPresent) => {
                skipped += 1;
                rows.push(ScanRow {
                    trial,
                    seed,
                    gram_hash,
                    factors: None,
                    jcount: None,
                    backend: candidate.backend(),
                    max_residual: Scalar::zero(),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ScanReport { rows, histogram, skipped, spread: options.spread })
}
