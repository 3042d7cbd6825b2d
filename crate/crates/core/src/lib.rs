//! Computational commutative algebra for symbolic powers, Rees valuations
//! and Hilbert–Samuel multiplicities over affine algebras.

pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod multiplicity;
pub mod poly;
pub mod rings;
pub mod session;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
