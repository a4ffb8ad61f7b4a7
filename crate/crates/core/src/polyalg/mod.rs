//! Exact polynomial, rational-function and exponential-polynomial algebra.

mod exppoly;
mod poly;
mod ratfun;

pub use exppoly::{ExpPoly, SeriesForm};
pub use poly::Polynomial;
pub use ratfun::{CompiledRatFun, RationalFunction};

use crate::error::Result;

/// Descartes bound on the number of positive roots of `p`.
pub fn descartes_bound(p: &Polynomial) -> Result<usize> {
    p.sign_variations()
}
