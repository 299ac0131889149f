//! Numerical toolkit for the complex hyperbolic plane.
//!
//! Covers the ball and Siegel models with their Heisenberg boundary,
//! classification of PU(2,1) isometries, their invariant flows, spherical CR
//! Dehn-surgery slope arithmetic, and the one-parameter family of
//! representations of the figure-eight knot group.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod fig8;
pub mod flows;
pub mod isometry;
pub mod linalg;
pub mod models;
pub mod surgery;

pub use num_complex::Complex64 as C64;

pub use linalg::{Mat3C, Vec3C};
