//! Exact computer algebra for genus-2 spectral curves of four-dimensional
//! Painlevé-type systems: Laurent-series checks, Igusa invariants,
//! finite-field point counts, Frobenius polynomials, and endomorphism-ring
//! certificates.

pub mod algebra;
pub mod catalog;
pub mod curve;
pub mod error;
pub mod finite;
pub mod galois;
pub mod igusa;
pub mod pipeline;
pub mod serde_int;
pub mod series;

pub use algebra::jet::Jet1;
pub use algebra::multipoly::MultiPoly;
pub use algebra::unipoly::UniPoly;
pub use curve::HyperellipticCurve;
pub use error::{Error, Result};
pub use finite::{Fp, Fp2, PointCount, WeilPolynomial};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;
/// Univariate polynomials over Q.
pub type QPoly = UniPoly<Rational>;
/// Univariate polynomials whose coefficients are polynomials in parameters.
pub type ParamPoly = UniPoly<MultiPoly>;
