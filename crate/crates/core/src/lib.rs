//! Exact construction and verification of the polynomials
//!
//! ```text
//! y_n(ρ; x) = (-1)^ρ / n! · xⁿ · ₂F₀(-n, ρ; -; -1/x),   ρ = 1, 2, ...
//! ```
//!
//! which are Sobolev orthogonal on the unit circle with respect to the
//! normalized arc-length measure and the rank-one matrix
//! `M = ((-1)^{l+j} C(ρ,l) C(ρ,j))`.
//!
//! Everything is computed over the rationals. The only floating point code
//! paths are complex evaluation, the root-of-unity quadrature cross-check and
//! the incomplete gamma quadrature.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

mod error;
pub mod exact;
pub mod family;
pub mod sobolev;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{ComplexPoint, Degree, Polynomial, Rational};
pub use family::{FamilySpec, Scaling};
pub use sobolev::SobolevForm;
pub use verify::{CheckKind, CheckReport, CheckStatus, PhiSource, PhiVector, Suite};
