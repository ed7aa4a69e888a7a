//! Univariate and bivariate complex polynomials.

mod bi;
mod homo;
mod resultant;
mod roots;
mod uni;

pub use bi::BiPoly;
pub use homo::HomoPoly3;
pub use resultant::{resultant_w, resultant_w_with, sylvester_at, ResultantOptions};
pub use roots::{newton_polish, raw_roots, roots, roots_with, Root, RootOptions};
pub use uni::UniPoly;
