//! Pieri coefficients, the conjectured characteristics `C_{μ/ij}` and the
//! identities built on them.

pub mod atoms;
pub mod coeff;
pub mod conj;
pub mod gd;
pub mod hook;
pub mod lemma;
pub mod phi;
pub mod refined;

pub use atoms::{atoms_qt, atoms_qt_with, crucial_residual, flip_residual, AtomsQt};
pub use coeff::{c_coeff, dp1_expand, PieriExpansion, PieriForm};
pub use conj::{conjectured_c, four_term_residual, Route};
pub use phi::phi;

use crate::diagrams::Partition;
use crate::error::Result;
use crate::qtfield::{Mono, QTScalar};
use crate::symfunc::{Basis, SymFun};

pub(crate) fn hsum(n: usize, it: impl IntoIterator<Item = (Partition, QTScalar)>) -> Result<SymFun> {
    SymFun::from_coeffs(n, Basis::Htilde, it)
}

/// `M = (1-1/t)(1-1/q)`.
pub(crate) fn m_factor() -> QTScalar {
    let one = QTScalar::one();
    one.sub_ref(&Mono::t_pow(-1).to_scalar()).mul_ref(&one.sub_ref(&Mono::q_pow(-1).to_scalar()))
}
