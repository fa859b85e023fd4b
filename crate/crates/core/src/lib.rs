//! Exact computer algebra for ℤ/2-graded algebras at a point with involution.
//!
//! The crate has three layers:
//!
//! * an exact linear algebra kernel ([`linalg`]) over [`Rational`] and
//!   [`GaussianRational`] scalars,
//! * graded algebras given by structure constants ([`algebra`]), Clifford
//!   algebras of diagonal forms ([`clifford`]), and their Brauer-Wall
//!   invariants ([`invariants`]),
//! * a formula engine ([`space`]) that turns cohomological ranks of a space
//!   or variety with involution into the abelian groups GBR, RBr, Q₂, WR, BW
//!   and W ([`groups`]).
//!
//! ```
//! use gbr_core::{clifford::{clifford, DiagonalForm}, invariants::bw_class};
//!
//! let form = DiagonalForm::<gbr_core::Rational>::from_ints(&[-1, -1, -1]).unwrap();
//! let class = bw_class(&clifford(&form).unwrap()).unwrap();
//! assert_eq!(class.value, 5);
//! ```

pub mod algebra;
pub mod clifford;
pub mod error;
pub mod groups;
pub mod invariants;
pub mod json;
pub mod linalg;
pub mod scalar;
pub mod selftest;
pub mod space;

pub use error::{Error, Result};
pub use scalar::{Field, FieldTag, GaussianRational, PointField, Rational};

/// Graded algebra at a real point.
pub type RealAlgebra = algebra::GradedAlgebra<Rational>;
/// Graded algebra at a complex point.
pub type ComplexAlgebra = algebra::GradedAlgebra<GaussianRational>;
/// Diagonal form at a real point.
pub type RealForm = clifford::DiagonalForm<Rational>;
/// Diagonal form at a complex point.
pub type ComplexForm = clifford::DiagonalForm<GaussianRational>;
pub type RationalMatrix = linalg::Matrix<Rational>;
