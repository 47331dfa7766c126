//! Exact arithmetic in Q(q,t).

mod gcd;
mod parse;
mod poly;
mod scalar;

pub use gcd::{div_exact, gcd};
pub use parse::parse_scalar;
pub use poly::QTPoly;
pub use scalar::{Mono, QTScalar, Subst};
