//! Metric Lie algebras over the rationals (exact) or `f64` (numeric).
//!
//! The crate splits a metric Lie algebra without abelian factors into its
//! unique orthogonal sum of irreducible ideals, enumerates the orthogonal
//! bi-invariant complex structures, and builds the complexification
//! together with its eigenspace splitting and doubling isometry.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod catalog;
pub mod centroid;
pub mod complex;
pub mod decomp;
pub mod error;
pub mod lab;
pub mod linalg;
pub mod scalar;
pub mod spectral;
pub mod subspace;

pub use algebra::{BracketEntry, JacobiReport, LieAlgebra, Metric, MetricLieAlgebra};
pub use error::{Error, Result};
pub use linalg::{Matrix, Operator};
pub use scalar::{Backend, Scalar};
pub use subspace::Subspace;
