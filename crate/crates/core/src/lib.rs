//! Discrete Möbius groups and their Veronese lifts to the projective plane.
//!
//! The crate builds certified discrete subgroups of PSL(2,ℂ) (Schottky groups,
//! a genus-2 surface group and deformations of both), pushes them through the
//! irreducible representation `iota: PSL(2,ℂ) → PSL(3,ℂ)` and computes the
//! objects attached to the lifted action on P²_ℂ:
//!
//! - the Veronese curve `psi(P¹)` and its tangent lines ([`veronese`]),
//! - the Kulkarni limit set as a union of tangent lines ([`kulkarni`]),
//! - invariant Hermitian forms, the boundary quartic and the real
//!   projection onto H²_ℝ ([`hermitian`]),
//! - raster and SVG pictures of all of the above ([`render`]).

// `!(x > tol)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hermitian;
pub mod kulkarni;
pub mod moebius;
pub mod projective;
pub mod render;
pub mod tol;
pub mod veronese;
pub mod words;

mod dedup;
mod linalg;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;
pub type CMatrix2 = nalgebra::Matrix2<Complex>;
pub type CMatrix3 = nalgebra::Matrix3<Complex>;
pub type CVector2 = nalgebra::Vector2<Complex>;
pub type CVector3 = nalgebra::Vector3<Complex>;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);
pub(crate) const I: Complex = Complex::new(0.0, 1.0);

/// Shorthand for building complex literals.
#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}
