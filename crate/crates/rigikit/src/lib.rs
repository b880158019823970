//! Exact decision procedures for rigidity, spectral and tree-packing properties of
//! small graphs, plus census enumeration and a catalog of named example graphs.
//!
//! Every decision that feeds a rigidity or spectral classification is exact: eigenvalue
//! comparisons go through symmetric congruence (Sylvester inertia) over the rationals or
//! through Sturm sequences evaluated in a real quadratic field. Floating point appears only
//! in [`spectral::approx_spectrum`], which is for reporting.

pub mod bounds;
pub mod catalog;
pub mod census;
pub mod connectivity;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod linalg;
pub mod matroid;
pub mod packing;
pub mod poly;
pub mod quadratic;
pub mod rigidity;
pub mod spectral;
pub mod surfaces;

pub use error::{Error, Result};
pub use graph::{Multigraph, SimpleGraph, WeightedGraph};
pub use quadratic::QuadraticNumber;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;
/// Dense symmetric matrix over the rationals.
pub type RationalMatrix = linalg::SymMatrix<Rational>;
/// Dense symmetric matrix over a real quadratic field.
pub type QuadraticMatrix = linalg::SymMatrix<QuadraticNumber>;
/// Inertia certificate over the rationals.
pub type Inertia = linalg::InertiaCertificate<Rational>;
/// Double-precision spectrum summary used in reports.
pub type ApproxSpectrum = spectral::SpectrumSummary<f64>;
