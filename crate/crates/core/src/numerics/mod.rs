//! Exact half-integers, Gauss–Legendre quadrature and the Gamma/Beta functions.

mod halfint;
mod quadrature;
mod special;

pub use halfint::{HalfInt, ParseHalfIntError};
pub use quadrature::{gauss_legendre_rule, GaussLegendre, QuadratureSpec};
pub use special::{beta, log_gamma};
