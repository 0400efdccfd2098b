mod common;

use metrilie::linalg::{unit_vector, vec_add, vec_scale};
use metrilie::{catalog, lab, BracketEntry, Error, LieAlgebra, Matrix, Metric, MetricLieAlgebra, Scalar, Subspace};
use proptest::prelude::*;

fn e(n: usize, i: usize) -> Vec<Scalar> {
    unit_vector(n, i)
}

fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::from_int(x)).collect()
}

#[test]
fn so3_like_table_is_accepted() {
    let entries = vec![
        BracketEntry::new(0, 1, vec![(2, Scalar::one())]),
        BracketEntry::new(0, 2, vec![(1, Scalar::one())]),
        BracketEntry::new(1, 2, vec![(0, Scalar::one())]),
    ];
    let alg = LieAlgebra::new(3, metrilie::algebra::default_labels(3), entries).unwrap();
    let report = alg.check_jacobi();
    assert!(report.passes());
    assert_eq!(report.max_residual, Scalar::zero());
}

#[test]
fn diagonal_bracket_is_rejected() {
    let entries = vec![BracketEntry::new(0, 0, vec![(1, Scalar::one())])];
    assert_eq!(
        LieAlgebra::new(3, metrilie::algebra::default_labels(3), entries).unwrap_err(),
        Error::DiagonalBracket { i: 0 }
    );
}

#[test]
fn perturbed_constants_report_a_residual() {
    let a = catalog::sl2c_real();
    let mut entries = a.algebra().entries();
    let first = &mut entries[0].terms[0].1;
    *first = &*first + &Scalar::one();
    let report = LieAlgebra::unchecked(6, a.algebra().labels().to_vec(), entries.clone()).unwrap().check_jacobi();
    assert!(!report.passes());
    assert!(report.max_residual.is_positive());
    assert!(matches!(
        LieAlgebra::new(6, a.algebra().labels().to_vec(), entries),
        Err(Error::JacobiViolation { .. })
    ));
}

#[test]
fn h3c_and_ex48_brackets() {
    assert!(catalog::h3c().check_jacobi().passes());
    let a = catalog::ex48();
    assert_eq!(a.bracket(&e(6, 0), &e(6, 2)).unwrap(), e(6, 4));
    assert!(matches!(a.bracket(&e(5, 0), &e(6, 2)), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn centers_match_the_oracle() {
    for a in common::all_examples() {
        let oracle = common::center(&a);
        let lib = a.center();
        assert_eq!(lib.dim(), oracle.len(), "{}", a.name());
        for v in &oracle {
            let v: Vec<Scalar> = v.iter().map(|x| Scalar::from(x.clone())).collect();
            assert!(lib.contains(&v), "{}", a.name());
        }
    }
    let ex48 = catalog::ex48();
    assert_eq!(ex48.center(), Subspace::from_vectors(6, vec![e(6, 4), e(6, 5)]));
    assert_eq!(catalog::abelian2n().center(), Subspace::full(4));
}

#[test]
fn derived_subalgebras() {
    assert_eq!(catalog::h3().derived_subalgebra(), Subspace::from_vectors(3, vec![e(3, 2)]));
    assert!(catalog::abelian(3).derived_subalgebra().is_zero());
    assert_eq!(catalog::h3h3().derived_subalgebra(), Subspace::from_vectors(6, vec![e(6, 4), e(6, 5)]));
}

#[test]
fn abelian_factor_detection() {
    assert!(!catalog::h3().has_abelian_factor());
    assert!(catalog::abelian(2).has_abelian_factor());
    assert!(!catalog::h3c().has_abelian_factor());
    let h3_plus_line = catalog::h3().direct_sum(&catalog::abelian(1));
    assert!(h3_plus_line.has_abelian_factor());
}

#[test]
fn abelian_factor_is_metric_independent() {
    for a in [catalog::h3h3(), catalog::h3().direct_sum(&catalog::abelian(1)), catalog::ex48()] {
        let base = a.has_abelian_factor();
        for seed in 0..10 {
            let b = a.with_metric(lab::random_gram(a.dim(), seed, lab::DEFAULT_SPREAD)).unwrap();
            assert_eq!(b.has_abelian_factor(), base);
        }
    }
}

#[test]
fn direct_sums() {
    let s = catalog::h3().direct_sum(&catalog::h3());
    assert_eq!(s.dim(), 6);
    assert_eq!(s.gram(), &Matrix::identity(6));
    let zero = catalog::abelian(0);
    let h3 = catalog::h3();
    assert_eq!(h3.direct_sum(&zero).algebra(), h3.algebra());
    let big = catalog::h3c_double();
    assert_eq!(big.dim(), 12);
    assert_eq!(big.gram(), &Matrix::identity(12));
    // associativity up to relabeling: same table either way
    let left = h3.direct_sum(&h3).direct_sum(&h3);
    let right = h3.direct_sum(&h3.direct_sum(&h3));
    assert_eq!(left.algebra(), right.algebra());
    assert_eq!(left.gram(), right.gram());
}

#[test]
fn restrictions() {
    let s = catalog::h3().direct_sum(&catalog::h3());
    let first = Subspace::from_vectors(6, (0..3).map(|i| e(6, i)));
    let r = s.restrict(&first).unwrap();
    assert_eq!(r.algebra(), catalog::h3().algebra());
    assert_eq!(r.gram(), catalog::h3().gram());

    let h3 = catalog::h3();
    let line = h3.restrict(&Subspace::from_vectors(3, vec![e(3, 0)])).unwrap();
    assert_eq!(line.dim(), 1);
    assert!(line.algebra().is_abelian());

    let plane = Subspace::from_vectors(3, vec![e(3, 0), e(3, 1)]);
    assert_eq!(h3.restrict(&plane).unwrap_err(), Error::NotASubalgebra { i: 0, j: 1 });
}

#[test]
fn metric_validation() {
    let not_pd = Matrix::from_i64(&[&[1, 2], &[2, 1]]);
    assert_eq!(Metric::new(not_pd).unwrap_err(), Error::MetricNotPositiveDefinite { minor: 2 });
    let not_sym = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
    assert!(matches!(Metric::new(not_sym), Err(Error::MetricNotSymmetric { .. })));
    let h3 = catalog::h3();
    assert!(matches!(
        MetricLieAlgebra::new("x", h3.algebra().clone(), Metric::identity(2)),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn derived_subalgebra_is_an_ideal() {
    for a in common::all_examples() {
        let d = a.derived_subalgebra();
        assert!(a.algebra().is_ideal(&d), "{}", a.name());
        assert!(a.algebra().subalgebra_witness(&d).is_none());
        let z = a.center();
        for v in z.basis() {
            for j in 0..a.dim() {
                assert!(a.bracket(v, &e(a.dim(), j)).unwrap().iter().all(Scalar::is_zero));
            }
        }
    }
}

fn small_vec(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(-5i64..=5, n).prop_map(|v| ints(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(u in small_vec(6), v in small_vec(6), w in small_vec(6), s in -4i64..=4) {
        let a = catalog::sl2c_real();
        let s = Scalar::from_int(s);
        let uv = a.bracket(&u, &v).unwrap();
        let vu = a.bracket(&v, &u).unwrap();
        prop_assert_eq!(vec_add(&uv, &vu), ints(&[0; 6]));
        prop_assert!(a.bracket(&u, &u).unwrap().iter().all(Scalar::is_zero));
        let lhs = a.bracket(&vec_add(&vec_scale(&u, &s), &w), &v).unwrap();
        let rhs = vec_add(&vec_scale(&uv, &s), &a.bracket(&w, &v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_holds_on_arbitrary_vectors(u in small_vec(6), v in small_vec(6), w in small_vec(6)) {
        let a = catalog::h3c();
        let br = |x: &[Scalar], y: &[Scalar]| a.bracket(x, y).unwrap();
        let sum = vec_add(&vec_add(&br(&u, &br(&v, &w)), &br(&v, &br(&w, &u))), &br(&w, &br(&u, &v)));
        prop_assert!(sum.iter().all(Scalar::is_zero));
    }

    #[test]
    fn rational_field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = Scalar::ratio(a, b);
        let y = Scalar::ratio(c, d);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
        prop_assert_eq!(Scalar::parse_exact(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn subspace_canonical_form_ignores_spanning_set(coeffs in proptest::collection::vec(-3i64..=3, 6)) {
        let base = vec![ints(&[1, 2, 0, 1]), ints(&[0, 1, 1, -1])];
        let mixed = vec![
            vec_add(&vec_scale(&base[0], &Scalar::from_int(coeffs[0])), &vec_scale(&base[1], &Scalar::from_int(coeffs[1]))),
            vec_add(&vec_scale(&base[0], &Scalar::from_int(coeffs[2])), &vec_scale(&base[1], &Scalar::from_int(coeffs[3]))),
            vec_add(&vec_scale(&base[0], &Scalar::from_int(coeffs[4])), &vec_scale(&base[1], &Scalar::from_int(coeffs[5]))),
        ];
        let a = Subspace::from_vectors(4, base.clone());
        let b = Subspace::from_vectors(4, mixed);
        if b.dim() == 2 {
            prop_assert_eq!(a, b);
        } else {
            prop_assert!(a.contains_subspace(&b));
        }
    }
}
