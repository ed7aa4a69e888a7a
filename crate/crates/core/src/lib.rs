//! Numerics for hyperbolic algebraic curves realized by pairs of finite
//! Blaschke products.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; randomness is always drawn from an explicitly
//! seeded generator.
//!
//! Layout:
//! - [`poly`]: univariate/bivariate complex polynomials, root finding,
//!   resultants, homogenization, torus reflection.
//! - [`blaschke`]: Möbius maps, finite Blaschke products, hyperbolic distance.
//! - [`intersection`]: the curves `F = 0`, `G = 0` attached to a pair `(f, g)`
//!   and their common points, counts and codimension.
//! - [`petals`]: local functionals, connections and explicit holizations of
//!   codimension one and two petals.
//! - [`interpolation`]: Pick matrices and maps between double-point petals.
//! - [`operators`]: spectral-set test, numerical radius, Wold-type
//!   decomposition and Herglotz extreme points.
#![no_std]

extern crate alloc;


pub mod blaschke;
mod error;
pub mod interpolation;
pub mod intersection;
pub mod linalg;
pub mod operators;
pub mod petals;
pub mod poly;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// `f64` machine epsilon.
pub const EPS: f64 = f64::EPSILON;

/// Shorthand constructor for a complex number.
#[inline]
pub const fn c64(re: f64, im: f64) -> C64 {
    C64 { re, im }
}
