//! Exact computations with finitely generated Sullivan minimal algebras over ℚ.
//!
//! The crate is organized bottom-up:
//!
//! * [`algebra`] — free graded-commutative polynomial arithmetic with Koszul signs,
//! * [`linalg`] — exact rational echelon forms, kernels, images, subquotients,
//! * [`derivation`] — derivations of ΛV extended by the graded Leibniz rule,
//! * [`model`] — validated Sullivan minimal models, closed-form invariants,
//!   acyclic closures,
//! * [`cohomology`] — bounded-degree cochain computations, word-length bigrading,
//!   ellipticity verdicts, Poincaré pairing,
//! * [`spectral`] — the word-length-filtration spectral sequence, Toomer and e₀
//!   invariants,
//! * [`conjecture`] — executable theorem and conjecture checks with
//!   witness-bearing verdicts.
//!
//! All arithmetic is exact (arbitrary-precision rationals); there is no floating
//! point anywhere.

pub mod algebra;
pub mod cohomology;
pub mod conjecture;
pub mod derivation;
pub mod linalg;
pub mod model;
pub mod spectral;

pub use algebra::{Algebra, Generator, Monomial, Polynomial, Rational};
pub use derivation::Derivation;
pub use model::SullivanModel;
