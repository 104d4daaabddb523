//! Exact Hilbert–Samuel functions, Hilbert coefficients, reduction numbers
//! and Sally-module lengths for m-primary monomial ideals, with checkers for
//! the classical and reduction-number-two/three inequalities they satisfy.

pub mod ambient;
pub mod closure;
pub mod error;
pub mod filtration;
pub mod hilbert;
pub mod ideals;
pub mod linalg;
pub mod report;
pub mod reproduce;
pub mod sally;
pub mod verify;

pub use ambient::{AmbientAlgebra, AmbientKind, Monomial};
pub use error::{Error, Result};
pub use hilbert::{HilbertCoefficients, HilbertTable};
pub use ideals::{LengthValue, MonomialIdeal};
