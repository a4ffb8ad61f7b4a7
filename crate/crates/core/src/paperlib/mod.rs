//! The named functions of the theory as exact objects: rational bound
//! families, `f_λ` and its rearrangements, `h_λ`, the Laplace kernel and its
//! θ-chain, and the ψ′, ψ and ln Γ families.
//!
//! ```
//! use cmcert::paperlib::{bound_rational, f_lambda, FForm};
//! use cmcert::{numeric::rat, Engine, Interval};
//!
//! assert_eq!(bound_rational(&rat(0, 1)).eval(&rat(1, 1)).unwrap(), rat(13, 48));
//! let f0 = f_lambda(&rat(0, 1), FForm::Direct);
//! let v = f0.eval(&Interval::ONE, &Engine::default()).unwrap();
//! assert!(v.is_positive());
//! ```

mod bounds;
mod families;
pub mod kernel;

pub use bounds::{
    bound_rational, classic_bound, decomposition_identities, decomposition_identities_at, decomposition_samples,
    h_rational, p900_numerator, u_bound, ClassicBound,
};
pub use families::{
    conjecture_sides, f_lambda, g0_explicit, g4_explicit, g_lambda, g_limits, h_big, h_lambda, psi1_bound,
    psi_bound_middle_and_bracket, s_form, ConjectureSide, FForm,
};
pub use kernel::{build_kernel, ChainEntry, Kernel, ThetaChain};

use crate::error::{Error, Result};
use crate::expr::ClosedForm;
use crate::numeric::{rat_int, BigRational, Interval};
use crate::polyalg::{ExpPoly, RationalFunction};
use crate::polygamma::Engine;

/// The value carried by a registry entry.
#[derive(Clone, Debug)]
pub enum Body {
    Closed(ClosedForm),
    Rational(RationalFunction),
    Exp(ExpPoly),
    Power(ConjectureSide),
}

#[derive(Clone, Debug)]
pub struct NamedFunction {
    pub name: &'static str,
    pub body: Body,
    pub domain: &'static str,
}

impl NamedFunction {
    fn new(name: &'static str, body: Body, domain: &'static str) -> Self {
        NamedFunction { name, body, domain }
    }

    /// Enclosure at `x` (the variable is `t` for kernel entries).
    pub fn eval(&self, x: &Interval, engine: &Engine) -> Result<Interval> {
        match &self.body {
            Body::Closed(f) => f.eval(x, engine),
            Body::Rational(r) if x.is_point() => {
                let q = BigRational::from_float(x.lo()).ok_or_else(|| Error::Domain("non-finite x".into()))?;
                Ok(Interval::from_rational(&r.eval(&q)?))
            }
            Body::Rational(r) => r.eval_interval(x),
            Body::Exp(e) => Ok(e.eval(x)),
            Body::Power(p) => p.eval(x),
        }
    }
}

/// Every named function, instantiated at the given λ (used by the
/// λ-dependent families) and exponent (used by `conj-side`).
pub fn registry(lambda: &BigRational, exponent: &BigRational) -> Result<Vec<NamedFunction>> {
    use Body::*;
    let kernel = build_kernel();
    let (middle, bracket) = psi_bound_middle_and_bracket();
    let x_pos = "x > 0";
    let mut out = vec![
        NamedFunction::new("S", Closed(s_form()), x_pos),
        NamedFunction::new("B", Rational(bound_rational(lambda)), x_pos),
        NamedFunction::new("h", Rational(h_rational()), x_pos),
        NamedFunction::new("U", Rational(u_bound()), x_pos),
    ];
    for b in ClassicBound::ALL {
        out.push(NamedFunction::new(b.name(), Rational(classic_bound(b)), x_pos));
    }
    out.extend([
        NamedFunction::new("f", Closed(f_lambda(lambda, FForm::Direct)), x_pos),
        NamedFunction::new("f-shifted", Closed(f_lambda(lambda, FForm::Shifted)), x_pos),
        NamedFunction::new("h-lambda", Closed(h_lambda(lambda)), x_pos),
        NamedFunction::new("psi1-bound", Closed(psi1_bound(lambda)), x_pos),
        NamedFunction::new("psi-middle", Closed(middle), x_pos),
        NamedFunction::new("psi-bracket", Closed(bracket), x_pos),
        NamedFunction::new("G", Closed(g_lambda(lambda)), x_pos),
        NamedFunction::new("G0", Closed(g0_explicit()), x_pos),
        NamedFunction::new("G4", Closed(g4_explicit()), x_pos),
        NamedFunction::new("Q", Exp(kernel.q.clone()), "t ≥ 0"),
        NamedFunction::new("Pnum", Exp(kernel.pnum.clone()), "t ≥ 0"),
        NamedFunction::new("conj-side", Power(conjecture_sides(exponent)?), x_pos),
    ]);
    for e in kernel.chain.entries() {
        out.push(NamedFunction::new(e.name, Exp(e.value()), "t ≥ 0"));
    }
    Ok(out)
}

/// Looks up one registry entry by name.
pub fn lookup(name: &str, lambda: &BigRational, exponent: &BigRational) -> Result<NamedFunction> {
    registry(lambda, exponent)?
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown function {name:?}")))
}

/// Registry with λ = 0 and exponent 1.
pub fn default_registry() -> Vec<NamedFunction> {
    registry(&rat_int(0), &rat_int(1)).expect("exponent 1 is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn registry_names_are_unique() {
        let r = default_registry();
        let names: HashSet<_> = r.iter().map(|f| f.name).collect();
        assert_eq!(names.len(), r.len());
        assert!(lookup("nope", &rat_int(0), &rat_int(1)).is_err());
    }

    #[test]
    fn registry_evaluates() {
        let e = Engine::default();
        let f = lookup("f", &rat_int(0), &rat_int(1)).unwrap();
        assert!(f.eval(&Interval::ONE, &e).unwrap().contains(0.030_860_944_625_323_575));
        let b = lookup("weak-upper", &rat_int(0), &rat_int(1)).unwrap();
        assert!(b.eval(&Interval::ONE, &e).unwrap().contains_rational(&crate::numeric::rat(1633, 2304)));
        let t = lookup("θ₃⁽⁴⁾", &rat_int(0), &rat_int(1)).unwrap();
        assert!(t.eval(&Interval::ONE, &e).unwrap().is_positive());
    }
}
