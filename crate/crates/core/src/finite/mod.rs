//! Prime fields, their quadratic extensions, point counting and Weil
//! polynomials.

pub mod count;
pub mod fp;
pub mod fp2;
pub mod weil;

pub use count::{count_points, point_counts, PointCount};
pub use fp::{quadratic_character, Fp};
pub use fp2::Fp2;
pub use weil::{weil_polynomial, zeta_rational_form, WeilPolynomial, ZetaForm};
