//! Exact scalars and linear algebra.

pub mod eps;
pub mod intpoly;
pub mod matrix;
pub mod scalar;

pub use eps::EpsRational;
pub use intpoly::IntPoly;
pub use matrix::Matrix;
pub use scalar::{int, parse_rational, rat, ExactDiv, Field, GcdDomain, Rational, Scalar};
