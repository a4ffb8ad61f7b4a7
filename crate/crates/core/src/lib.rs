//! Rigorous evaluation and certification toolkit for the function
//!
//! ```text
//! f_λ(x) = [ψ′(x)]² + ψ″(x) − (x² + λx + 12) / (12x⁴(x+1)²)
//! ```
//!
//! on `(0, ∞)`, together with every auxiliary object needed to check its
//! complete monotonicity: the exponential-polynomial kernel whose sign
//! governs the Laplace representation, the classic rational bounds it
//! refines, and the logarithmic and log-gamma families obtained by
//! integrating it.
//!
//! The crate is layered bottom-up:
//!
//! - [`numeric`]: exact rationals, outward-rounded [`Interval`]s, Bernoulli
//!   numbers and evaluation grids.
//! - [`polyalg`]: exact [`Polynomial`], [`RationalFunction`] and
//!   [`ExpPoly`] algebra plus Descartes' rule of signs.
//! - [`expr`]: the [`ClosedForm`] term algebra (rational coefficients times
//!   polygamma, log and log-gamma factors), closed under differentiation.
//! - [`polygamma`]: the enclosure [`Engine`] for ψ⁽ⁿ⁾ and ln Γ.
//! - [`paperlib`]: constructors for every named function and the θ-chain.
//! - [`certify`]: grid certification, kernel identities, quadrature
//!   cross-checks and the structured [`Report`] they produce.

pub mod certify;
pub mod error;
pub mod expr;
pub mod numeric;
pub mod paperlib;
pub mod polyalg;
pub mod polygamma;

pub use certify::report::{Check, Report, Status, Witness};
pub use error::{Error, Result};
pub use expr::ClosedForm;
pub use numeric::{BigRational, GridSpec, Interval};
pub use polyalg::{ExpPoly, Polynomial, RationalFunction};
pub use polygamma::{Engine, EngineConfig};
