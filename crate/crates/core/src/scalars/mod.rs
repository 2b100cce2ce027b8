//! Exact base fields: rationals and cyclotomic extensions `Q(zeta_n)`.

mod cyclotomic;
mod qpoly;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicField, CyclotomicScalar};
pub use qpoly::QPoly;
pub use rational::Rational;

/// Scalars of every algebra in this crate.
pub type Scalar = CyclotomicScalar;
