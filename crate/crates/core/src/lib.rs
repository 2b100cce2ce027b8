//! Exact arithmetic for supermatrix algebras `M_n(R, delta, T)`: matrices
//! whose entries satisfy `delta(a_ij) = t_ij a_ij` for a transitive matrix
//! `T`, together with symmetric determinants, preadjoints, right and left
//! determinant sequences, characteristic polynomials and Cayley-Hamilton
//! checks over Lie nilpotent rings such as the Grassmann algebra.

pub mod codec;
pub mod dets;
pub mod error;
pub mod grassmann;
pub mod linalg;
pub mod matrices;
pub mod perm;
pub mod reproduce;
pub mod rings;
pub mod scalars;
pub mod supermatrix;

pub use error::{Error, Result};
