//! Exact computational Hodge theory for smooth projective hypersurfaces and
//! pairs `(Z, Y)` of a hypersurface with a smooth hyperplane section.
//!
//! Everything is computed over the rationals; there is no floating point in
//! the library.

pub mod certificate;
pub mod deformation;
pub mod error;
pub mod gauss_manin;
pub mod exact;
pub mod grading;
pub mod hodge;
pub mod jacobian;
pub mod limits;
pub mod mhs;
pub mod samples;
pub mod twisted;

pub use certificate::Certificate;
pub use error::{Error, Result};
pub use exact::{ExactMatrix, Monomial, Polynomial, Rational};
pub use jacobian::{Hypersurface, JacobianRing};
