mod common;

use metrilie::complex::enumerate_complex_structures;
use metrilie::decomp::decompose;
use metrilie::lab::{
    derive_seed, gram_hash, jcount_experiment, make_irreducible_metric, make_metric_with_factor_count, metric_scan,
    random_gram, BlockSpec, ScanOptions, DEFAULT_SPREAD,
};
use metrilie::{catalog, Error, Matrix, Scalar, Subspace};

fn h3_blocks(k: usize, seed: u64) -> BlockSpec {
    BlockSpec::new(vec![catalog::h3(); k], seed).unwrap()
}

fn leading_minors_positive(g: &Matrix) -> bool {
    let n = g.rows();
    (1..=n).all(|m| {
        let rows: Vec<Vec<_>> = (0..m).map(|i| (0..m).map(|j| common::q(g.get(i, j))).collect()).collect();
        common::determinant(rows) > common::qi(0)
    })
}

#[test]
fn random_grams_are_reproducible_and_positive() {
    for seed in 0..20 {
        let g = random_gram(6, seed, DEFAULT_SPREAD);
        assert_eq!(g, random_gram(6, seed, DEFAULT_SPREAD));
        assert_eq!(g.gram(), &g.gram().transpose());
        assert!(leading_minors_positive(g.gram()));
    }
    assert_ne!(random_gram(4, 1, DEFAULT_SPREAD), random_gram(4, 2, DEFAULT_SPREAD));
    assert_ne!(derive_seed(7, 0), derive_seed(7, 1));
    assert_eq!(random_gram(1, 3, DEFAULT_SPREAD).gram().rows(), 1);
}

#[test]
fn generic_grams_never_make_the_centers_orthogonal() {
    let a = catalog::h3h3();
    let z = Subspace::from_vectors(6, a.center().basis().to_vec());
    assert_eq!(z.dim(), 2);
    for seed in 0..100 {
        let g = random_gram(6, seed, DEFAULT_SPREAD);
        // Z1 = e5 and Z2 = e6 in the interleaved basis
        assert!(!g.gram().get(4, 5).is_zero(), "seed {seed}");
        let b = a.with_metric(g).unwrap();
        assert_eq!(decompose(&b).unwrap().len(), 1, "seed {seed}");
    }
}

#[test]
fn irreducible_metrics() {
    for seed in 0..5 {
        let c = make_irreducible_metric(&h3_blocks(2, seed)).unwrap();
        assert_eq!(c.factor_count, 1);
        assert!((1..=20).contains(&c.attempts));
        assert_eq!(decompose(&c.algebra).unwrap().len(), 1);
        assert!(leading_minors_positive(c.metric().gram()));
    }
    let single = make_irreducible_metric(&h3_blocks(1, 0)).unwrap();
    assert_eq!(decompose(&single.algebra).unwrap().len(), 1);

    let spec = BlockSpec::new(vec![catalog::h3c(), catalog::h3c()], 3).unwrap();
    let c = make_irreducible_metric(&spec).unwrap();
    assert_eq!(decompose(&c.algebra).unwrap().len(), 1);
    let count = enumerate_complex_structures(&c.algebra).unwrap().len();
    assert!(count == 0 || count == 2, "{count}");
}

#[test]
fn glued_center_metric_is_an_irreducible_instance() {
    let a = catalog::h3h3_paper_metric();
    assert_eq!(a.gram().get(4, 5), &Scalar::one());
    assert_eq!(decompose(&a).unwrap().len(), 1);
}

#[test]
fn abelian_blocks_are_refused() {
    assert_eq!(
        BlockSpec::new(vec![catalog::h3(), catalog::abelian(2)], 0).unwrap_err(),
        Error::AbelianBlock { index: 1 }
    );
}

#[test]
fn prescribed_factor_counts() {
    let two = make_metric_with_factor_count(&h3_blocks(2, 0), 2).unwrap();
    let g = two.metric().gram();
    for i in 0..3 {
        for j in 3..6 {
            assert!(g.get(i, j).is_zero() && g.get(j, i).is_zero());
        }
    }
    assert_eq!(decompose(&two.algebra).unwrap().len(), 2);
    assert_eq!(decompose(&make_metric_with_factor_count(&h3_blocks(2, 0), 1).unwrap().algebra).unwrap().len(), 1);
    for l in 1..=3 {
        let c = make_metric_with_factor_count(&h3_blocks(3, 11), l).unwrap();
        assert_eq!(decompose(&c.algebra).unwrap().len(), l);
    }
    for l in [0, 4] {
        assert_eq!(
            make_metric_with_factor_count(&h3_blocks(3, 0), l).unwrap_err(),
            Error::InvalidFactorCount { l, k: 3 }
        );
    }
}

#[test]
fn complex_structure_counts() {
    let pair = BlockSpec::new(vec![catalog::h3c(), catalog::h3c()], 0).unwrap();
    for l in 1..=2 {
        let r = jcount_experiment(&pair, l).unwrap();
        assert_eq!((r.count, r.expected(), r.blocks, r.factor_count), (1 << l, 1 << l, 2, l));
        let oracle = common::complex_structures(&r.construction.algebra);
        assert!(matches!(oracle, common::OracleSet::Finite(ref s) if s.len() == 1 << l));
    }
    let single = BlockSpec::new(vec![catalog::h3c()], 0).unwrap();
    assert_eq!(jcount_experiment(&single, 1).unwrap().count, 2);
    assert_eq!(
        jcount_experiment(&h3_blocks(2, 0), 1).unwrap_err(),
        Error::NoComplexStructureOnBlock { index: 0 }
    );
}

#[test]
fn scan_on_the_complex_heisenberg_algebra() {
    let a = catalog::h3c();
    let mut opts = ScanOptions::new(50, 4);
    opts.leading.push(catalog::h3c_skewed_center_metric().metric().clone());
    let report = metric_scan(&a, &opts).unwrap();
    assert_eq!(report.rows.len(), 50);
    assert_eq!(report.skipped, 0);
    assert_eq!(report.rows[0].jcount, Some(0));
    assert_eq!(report.rows[0].seed, None);
    assert_eq!(report.rows[0].gram_hash, gram_hash(catalog::h3c_skewed_center_metric().gram()));
    for row in &report.rows {
        assert!(matches!(row.jcount, Some(0 | 2)), "trial {}", row.trial);
        assert_eq!(row.factors, Some(1));
        assert!(row.max_residual.is_zero());
    }
    assert!(report.histogram.keys().all(|k| *k == 0 || *k == 2));
    assert_eq!(report.histogram.values().sum::<usize>(), 50);
    assert_eq!(report, metric_scan(&a, &opts).unwrap());
}

#[test]
fn scan_on_odd_and_abelian_algebras() {
    let report = metric_scan(&catalog::h3(), &ScanOptions::new(10, 0)).unwrap();
    assert!(report.rows.iter().all(|r| r.jcount == Some(0)));
    let report = metric_scan(&catalog::abelian2n(), &ScanOptions::new(5, 0)).unwrap();
    assert_eq!(report.skipped, 5);
    assert!(report.histogram.is_empty());
}
