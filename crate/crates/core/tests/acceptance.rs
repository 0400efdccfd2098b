//! End-to-end acceptance run: one line per criterion, nonzero exit on any
//! failure. Numeric comparisons use `TAU`; everything else is exact.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::OracleSet;
use metrilie::centroid::symmetric_centroid;
use metrilie::complex::{
    commute_check, eigensplit, enumerate_complex_structures, verify_complex_structure,
    verify_doubling_isometry,
};
use metrilie::decomp::{decompose, decompose_with, DecomposeOptions};
use metrilie::lab::{self, jcount_experiment, make_metric_with_factor_count, BlockSpec};
use metrilie::linalg::unit_vector;
use metrilie::{catalog, Error, Matrix, MetricLieAlgebra, Subspace};

const TAU: f64 = 1e-9;
const RANDOM_METRICS: u64 = 5;

fn variants(base: &MetricLieAlgebra, salt: u64) -> Vec<MetricLieAlgebra> {
    let mut out = vec![base.clone()];
    for s in 0..RANDOM_METRICS {
        let g = lab::random_gram(base.dim(), lab::derive_seed(salt, s), lab::DEFAULT_SPREAD);
        if let Some(j) = common::known_structure(base) {
            out.push(base.with_metric(lab::hermitize(g.gram(), &j)).unwrap());
        }
        out.push(base.with_metric(g).unwrap());
    }
    out
}

fn oracle_set(a: &MetricLieAlgebra) -> Vec<common::OracleJ> {
    match common::complex_structures(a) {
        OracleSet::Finite(s) => s,
        OracleSet::Continuum => panic!("{}: oracle reports a continuum", a.name()),
    }
}

fn matrices(a: &MetricLieAlgebra) -> Vec<Matrix> {
    enumerate_complex_structures(a).unwrap().iter().map(|j| j.matrix().clone()).collect()
}

fn decomposition_uniqueness() {
    assert_eq!(decompose(&catalog::h3h3_paper_metric()).unwrap().len(), 1);
    let a = catalog::h3h3();
    let d = decompose(&a).unwrap();
    assert_eq!(d.len(), 2);
    let first = Subspace::from_vectors(6, [0, 2, 4].map(|i| unit_vector(6, i)));
    let second = Subspace::from_vectors(6, [1, 3, 5].map(|i| unit_vector(6, i)));
    let carriers = d.carriers();
    assert!(carriers.contains(&&first) && carriers.contains(&&second));
    let reference = format!("{d:?}");
    for seed in 1..=10 {
        let other = decompose_with(&a, &DecomposeOptions::with_seed(seed)).unwrap();
        assert_eq!(format!("{other:?}"), reference);
    }
}

fn enumeration_counts() {
    let std = catalog::h3c_standard_j();
    let found = matrices(&catalog::h3c());
    assert_eq!(found.len(), 2);
    assert!(found.contains(&std) && found.contains(&-&std));
    for a in [catalog::h3c(), catalog::h3c_skewed_center_metric(), catalog::h3c_double()] {
        assert!(common::same_set(&matrices(&a), &oracle_set(&a), 0.0), "{}", a.name());
    }
    assert!(matrices(&catalog::h3c_skewed_center_metric()).is_empty());
    assert_eq!(matrices(&catalog::h3c_double()).len(), 4);
}

fn oracle_equivalence() {
    for (i, base) in common::all_examples().iter().enumerate() {
        for a in variants(base, 1000 + i as u64) {
            if a.has_abelian_factor() {
                assert_eq!(enumerate_complex_structures(&a).unwrap_err(), Error::AbelianFactorPresent);
                assert!(matches!(common::complex_structures(&a), OracleSet::Continuum));
                continue;
            }
            assert!(common::same_set(&matrices(&a), &oracle_set(&a), TAU), "{}", a.name());
        }
    }
    for a in [common::h3_sqrt_minus2(), common::h3_sqrt2()] {
        assert!(common::same_set(&matrices(&a), &oracle_set(&a), TAU), "{}", a.name());
    }
}

fn structural_identities() {
    let a = catalog::h3c();
    let j = catalog::h3c_standard_j();
    let cert = verify_doubling_isometry(&a, &j).unwrap();
    assert!(cert.passes() && cert.bracket.is_zero() && cert.intertwining.is_zero() && cert.hermitian.is_zero());
    let s = eigensplit(&a, &j).unwrap();
    assert!(s.certificate.passes());
    assert!(s.certificate.orthogonality.is_zero());
    let real = s.complexified.real_form();
    assert!(real.algebra().is_ideal(&s.plus) && real.algebra().is_ideal(&s.minus));
    assert_eq!(s.plus.image(s.complexified.sigma_op()), s.minus);
    let k = decompose(&a).unwrap().len();
    assert_eq!(decompose(real).unwrap().len(), 2 * k);
    assert_eq!(2 * k, 2);
}

fn non_commuting_example() {
    let a = catalog::ex48();
    let (j1, j2) = (catalog::ex48_j1(), catalog::ex48_j2());
    for j in [&j1, &j2] {
        let c = verify_complex_structure(&a, j);
        assert!(c.square.is_zero() && c.bi_invariance.is_zero());
    }
    let r = commute_check(&a, &j1, &j2);
    assert!(!r.commute && r.image_in_center);
    for s in 0..100u64 {
        let g = lab::random_gram(6, lab::derive_seed(48, s), lab::DEFAULT_SPREAD);
        let g = match s % 3 {
            0 => g,
            1 => lab::hermitize(g.gram(), &j1),
            _ => lab::hermitize(g.gram(), &j2),
        };
        let found = matrices(&a.with_metric(g).unwrap());
        assert!(!(found.contains(&j1) && found.contains(&j2)), "metric {s}");
    }
}

fn metric_lab() {
    let h3 = catalog::h3();
    let h3c = catalog::h3c();
    for seed in 0..100u64 {
        let l = 1 + (seed % 3) as usize;
        let spec = BlockSpec::new(vec![h3.clone(), h3.clone(), h3.clone()], seed).unwrap();
        let c = make_metric_with_factor_count(&spec, l).unwrap();
        assert!(c.attempts <= lab::MAX_RETRIES);
        assert_eq!(decompose(&c.algebra).unwrap().len(), l, "seed {seed}");
    }
    for seed in 0..20u64 {
        let spec = BlockSpec::new(vec![h3c.clone(), h3c.clone()], seed).unwrap();
        for l in 1..=2 {
            let r = jcount_experiment(&spec, l).unwrap();
            assert_eq!(r.count, 1 << l, "seed {seed}");
            assert!(r.attempts <= lab::MAX_RETRIES);
            assert_eq!(decompose(&r.construction.algebra).unwrap().len(), l);
        }
    }
}

fn property_suites() {
    for (i, base) in common::all_examples().iter().enumerate() {
        assert!(base.check_jacobi().max_residual.is_zero(), "{}", base.name());
        for a in variants(base, 2000 + i as u64) {
            if a.has_abelian_factor() {
                continue;
            }
            let sym = symmetric_centroid(&a);
            for x in sym.basis() {
                for y in sym.basis() {
                    assert!(x.commutator(y).is_zero());
                }
            }
            let d = decompose(&a).unwrap();
            let n = a.dim();
            let sum = d.factors().iter().fold(Matrix::zeros(n, n), |acc, f| &acc + f.projection());
            assert_eq!(sum, Matrix::identity(n), "{}", a.name());
            let js = matrices(&a);
            assert!(js.is_empty() || js.len() == 1 << d.len(), "{}", a.name());
            for (fi, f) in d.factors().iter().enumerate() {
                for g in &d.factors()[fi + 1..] {
                    assert!(f.carrier().is_orthogonal_to(g.carrier(), a.gram()));
                }
                for j in &js {
                    assert_eq!(&f.carrier().image(j), f.carrier());
                }
            }
            for j in &js {
                assert!(js.contains(&-j));
            }
        }
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 7] = [
        ("decomposition uniqueness", decomposition_uniqueness),
        ("enumeration counts", enumeration_counts),
        ("oracle equivalence", oracle_equivalence),
        ("structural identities of the complexification", structural_identities),
        ("non-commuting complex structures", non_commuting_example),
        ("metric lab constructions", metric_lab),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(run)).is_ok();
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} {name} ({:.2}s)", n + 1, start.elapsed().as_secs_f64());
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
