//! Exact computation of lattice-diagram harmonics, modified Macdonald
//! polynomials and the q,t-identities relating them.

pub mod diagrams;
pub mod error;
pub mod exactpoly;
pub mod harmonics;
pub mod harness;
pub mod pieri;
pub mod qtfield;
pub mod symfunc;

pub use error::{Error, Result};
