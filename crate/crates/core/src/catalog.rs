//! Bundled example algebras.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{default_labels, BracketEntry, LieAlgebra, Metric, MetricLieAlgebra};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A named built-in algebra.
#[derive(Debug, Clone, Copy)]
pub struct ExampleEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub build: fn() -> MetricLieAlgebra,
}

pub const ENTRIES: &[ExampleEntry] = &[
    ExampleEntry { key: "abelian2n", description: "abelian R^4 with the Euclidean metric", build: abelian2n },
    ExampleEntry { key: "h3", description: "real Heisenberg algebra [X1,X2]=X3, identity metric", build: h3 },
    ExampleEntry {
        key: "h3c",
        description: "underlying real algebra of the complex Heisenberg algebra, basis X,iX,Y,iY,Z,iZ",
        build: h3c,
    },
    ExampleEntry {
        key: "ex48",
        description: "6-dim 2-step nilpotent algebra carrying two non-commuting bi-invariant complex structures",
        build: ex48,
    },
    ExampleEntry { key: "h3h3", description: "h3 + h3 with basis X1,X2,Y1,Y2,Z1,Z2, identity metric", build: h3h3 },
    ExampleEntry {
        key: "h3h3-paper-metric",
        description: "h3 + h3 with orthonormal basis X1,X2,Y1,Y2,Z1,Z1-Z2 (irreducible)",
        build: h3h3_paper_metric,
    },
    ExampleEntry {
        key: "sl2c-real",
        description: "underlying real algebra of sl(2,C), basis H,iH,E,iE,F,iF, identity metric",
        build: sl2c_real,
    },
];

pub fn keys() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.key).collect()
}

pub fn lookup(key: &str) -> Option<MetricLieAlgebra> {
    ENTRIES.iter().find(|e| e.key == key).map(|e| (e.build)())
}

/// Build from 1-based `(i, j, k, c)` rows meaning `[X_i, X_j] += c·X_k`.
fn from_table(name: &str, dim: usize, labels: &[&str], table: &[(usize, usize, usize, i64)]) -> MetricLieAlgebra {
    let mut entries: Vec<BracketEntry> = Vec::new();
    for &(i, j, k, c) in table {
        let term = (k - 1, Scalar::from_int(c));
        match entries.iter_mut().find(|e| e.i == i - 1 && e.j == j - 1) {
            Some(e) => e.terms.push(term),
            None => entries.push(BracketEntry::new(i - 1, j - 1, alloc::vec![term])),
        }
    }
    let labels: Vec<String> =
        if labels.is_empty() { default_labels(dim) } else { labels.iter().map(|s| String::from(*s)).collect() };
    let algebra = LieAlgebra::new(dim, labels, entries).expect("bundled table satisfies Jacobi");
    MetricLieAlgebra::new(name, algebra, Metric::identity(dim)).expect("dimensions agree")
}

pub fn abelian(dim: usize) -> MetricLieAlgebra {
    MetricLieAlgebra::new("abelian", LieAlgebra::abelian(dim), Metric::identity(dim)).expect("dimensions agree")
}

pub fn abelian2n() -> MetricLieAlgebra {
    abelian(4).with_name("abelian2n")
}

pub fn h3() -> MetricLieAlgebra {
    from_table("h3", 3, &["X1", "X2", "X3"], &[(1, 2, 3, 1)])
}

pub fn h3c() -> MetricLieAlgebra {
    from_table(
        "h3c",
        6,
        &["E1", "E2", "E3", "E4", "E5", "E6"],
        &[(1, 3, 5, 1), (2, 4, 5, -1), (2, 3, 6, 1), (1, 4, 6, 1)],
    )
}

pub fn ex48() -> MetricLieAlgebra {
    from_table("ex48", 6, &[], &[(1, 3, 5, 1), (1, 4, 6, 1), (2, 3, 6, 1), (2, 4, 5, -1)])
}

pub fn h3h3() -> MetricLieAlgebra {
    from_table("h3h3", 6, &["X1", "X2", "Y1", "Y2", "Z1", "Z2"], &[(1, 3, 5, 1), (2, 4, 6, 1)])
}

/// Orthonormal basis X1,X2,Y1,Y2,Z1,Z1−Z2, so the Z-block of the Gram
/// matrix is `[[1,1],[1,2]]`.
pub fn h3h3_paper_metric() -> MetricLieAlgebra {
    let mut gram = Matrix::identity(6);
    gram.set(4, 5, Scalar::one());
    gram.set(5, 4, Scalar::one());
    gram.set(5, 5, Scalar::from_int(2));
    h3h3().with_metric(Metric::new(gram).expect("positive definite")).expect("dims").with_name("h3h3-paper-metric")
}

pub fn sl2c_real() -> MetricLieAlgebra {
    // [H,E]=2E, [H,F]=-2F, [E,F]=H, extended complex-bilinearly
    from_table(
        "sl2c-real",
        6,
        &["H", "iH", "E", "iE", "F", "iF"],
        &[
            (1, 3, 3, 2),
            (1, 4, 4, 2),
            (2, 3, 4, 2),
            (2, 4, 3, -2),
            (1, 5, 5, -2),
            (1, 6, 6, -2),
            (2, 5, 6, -2),
            (2, 6, 5, 2),
            (3, 5, 1, 1),
            (3, 6, 2, 1),
            (4, 5, 2, 1),
            (4, 6, 1, -1),
        ],
    )
}

/// Multiplication by `i` on coordinates paired as (x, ix): `e_{2m} ↦ e_{2m+1}`,
/// `e_{2m+1} ↦ −e_{2m}`.
pub fn paired_complex_structure(dim: usize) -> Matrix {
    assert!(dim % 2 == 0, "dimension must be even");
    let mut j = Matrix::zeros(dim, dim);
    for m in 0..dim / 2 {
        j.set(2 * m + 1, 2 * m, Scalar::one());
        j.set(2 * m, 2 * m + 1, Scalar::from_int(-1));
    }
    j
}

/// Multiplication by `i` on `h3c`.
pub fn h3c_standard_j() -> Matrix {
    paired_complex_structure(6)
}

/// `J1` on `ex48`: X1↦X2, X2↦−X1, X3↦X4, X4↦−X3, X5↦X6, X6↦−X5.
pub fn ex48_j1() -> Matrix {
    paired_complex_structure(6)
}

/// `J2` on `ex48`: as `J1` except X1↦X2+X6 and X2↦−X1+X5.
pub fn ex48_j2() -> Matrix {
    let mut j = paired_complex_structure(6);
    j.set(5, 0, Scalar::one());
    j.set(4, 1, Scalar::one());
    j
}

/// `h3c` with identity Gram except `<E5,E6> = 1/2`.
pub fn h3c_skewed_center_metric() -> MetricLieAlgebra {
    let mut gram = Matrix::identity(6);
    gram.set(4, 5, Scalar::ratio(1, 2));
    gram.set(5, 4, Scalar::ratio(1, 2));
    h3c().with_metric(Metric::new(gram).expect("positive definite")).expect("dims")
}

/// `h3c ⊕ h3c` with block identity Gram.
pub fn h3c_double() -> MetricLieAlgebra {
    let a = h3c();
    a.direct_sum(&a).with_name("h3c+h3c")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds_and_validates() {
        for e in ENTRIES {
            let a = (e.build)();
            assert_eq!(a.name(), e.key);
            assert!(a.check_jacobi().passes(), "{}", e.key);
            assert!(Metric::new(a.gram().clone()).is_ok());
        }
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn ex48_table_matches() {
        let a = ex48();
        let e = |i| crate::linalg::unit_vector(6, i);
        assert_eq!(a.bracket(&e(0), &e(2)).unwrap(), e(4));
        assert_eq!(a.bracket(&e(0), &e(3)).unwrap(), e(5));
        assert_eq!(a.bracket(&e(1), &e(2)).unwrap(), e(5));
        assert_eq!(a.bracket(&e(1), &e(3)).unwrap(), crate::linalg::vec_scale(&e(4), &Scalar::from_int(-1)));
    }

    #[test]
    fn glued_center_metric_gram_entries() {
        let g = h3h3_paper_metric().gram().clone();
        assert_eq!(g.get(4, 4), &Scalar::one());
        assert_eq!(g.get(4, 5), &Scalar::one());
        assert_eq!(g.get(5, 5), &Scalar::from_int(2));
    }
}
