//! Arithmetic substrate: exact rationals, interval enclosures, Bernoulli
//! numbers and evaluation grids.

mod bernoulli;
mod grid;
mod interval;
mod rational;

pub use bernoulli::bernoulli;
pub use grid::{GridKind, GridSpec};
pub use interval::Interval;
pub use rational::{parse_rational, rat, rat_int, to_f64_nearest, BigRational};
pub use num_bigint::BigInt;
pub(crate) use rational::dyadic_parts;
pub(crate) use grid::rational_str;
