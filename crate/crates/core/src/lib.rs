//! Numerical engine for square grid circle patterns with prescribed
//! intersection angles.
//!
//! The crate builds the discrete analogues of `z^gamma`, `z^2` and `log z`
//! realized as circle patterns on the square grid, together with the
//! machinery used to validate them: a configurable-precision binary float,
//! gamma-function ratios and Gauss hypergeometric series, the discrete
//! Riccati recursion for boundary radius ratios, the `(P,Q)` dynamical
//! system for interior radii with separatrix shooting, and independent
//! geometric checks (kites, intersection angles, embeddedness).
//!
//! Everything here is `no_std` + `alloc`; IO, serialization and the CLI
//! live in the companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod complex;
pub mod functions;
pub mod geometry;
pub mod lattice;
pub mod painleve;
pub mod pattern;
pub mod real;
pub mod riccati;
pub mod special;

pub use complex::Complex;
pub use real::{PrecisionContext, Real};
