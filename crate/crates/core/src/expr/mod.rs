//! Closed-form term algebra: sums of rational-function coefficients times
//! products of polygamma and logarithm factors, plus linear ln Γ terms.
//!
//! The algebra is closed under exact differentiation, under the translation
//! `x ↦ x + c` and under the recurrence rewrite [`ClosedForm::rewrite_shift`],
//! which moves every polygamma and ln Γ argument up by one and collects the
//! rational corrections exactly.

mod eval;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{rat_int, BigRational};
use crate::polyalg::{Polynomial, RationalFunction};

pub use eval::CompiledForm;

/// Highest polygamma order a factor may carry.
pub const MAX_POLYGAMMA_ORDER: u32 = 64;

/// Default ceiling for [`ClosedForm::nth_derivative`].
pub const DEFAULT_DERIVATIVE_CEILING: usize = 16;

/// `ψ⁽ᵒʳᵈᵉʳ⁾(x + shift)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolygammaFactor {
    pub order: u32,
    pub shift: BigRational,
}

/// `ln(x + shift)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogFactor {
    pub shift: BigRational,
}

/// The transcendental part of a term. Factor lists are kept sorted, so
/// equal products have equal keys.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TermKey {
    pg: Vec<PolygammaFactor>,
    logs: Vec<LogFactor>,
    lngamma: Option<BigRational>,
}

impl TermKey {
    pub fn polygammas(&self) -> &[PolygammaFactor] {
        &self.pg
    }

    pub fn logs(&self) -> &[LogFactor] {
        &self.logs
    }

    /// Shift `s` of an `ln Γ(x + s)` factor, if present.
    pub fn lngamma(&self) -> Option<&BigRational> {
        self.lngamma.as_ref()
    }

    /// True for the key of the purely rational part.
    pub fn is_rational(&self) -> bool {
        self.pg.is_empty() && self.logs.is_empty() && self.lngamma.is_none()
    }

    fn with_pg(mut self, f: PolygammaFactor) -> Self {
        let at = self.pg.partition_point(|g| g <= &f);
        self.pg.insert(at, f);
        self
    }

    fn with_log(mut self, f: LogFactor) -> Self {
        let at = self.logs.partition_point(|g| g <= &f);
        self.logs.insert(at, f);
        self
    }

    fn product(&self, other: &TermKey) -> Result<TermKey> {
        if (self.lngamma.is_some() && !other.is_rational())
            || (other.lngamma.is_some() && !self.is_rational())
        {
            return Err(Error::Config("ln Γ may not be multiplied by other transcendental factors".into()));
        }
        let mut k = self.clone();
        for f in &other.pg {
            k = k.with_pg(f.clone());
        }
        for f in &other.logs {
            k = k.with_log(f.clone());
        }
        k.lngamma = self.lngamma.clone().or_else(|| other.lngamma.clone());
        Ok(k)
    }
}

/// One summand `coeff · key` of a [`ClosedForm`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: RationalFunction,
    pub key: TermKey,
}

/// A finite sum of terms with like terms merged and zero terms removed;
/// structural equality is equality of the represented functions up to
/// identities between distinct transcendental products.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ClosedForm {
    terms: BTreeMap<TermKey, RationalFunction>,
}

fn falling_sign_factorial(n: u32) -> BigRational {
    // (−1)ⁿ n!
    let f = (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k));
    let q = BigRational::from_integer(f);
    if n % 2 == 0 {
        q
    } else {
        -q
    }
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(r: RationalFunction) -> Self {
        Self::single(TermKey::default(), r)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::rational(RationalFunction::constant(c))
    }

    /// The identity function `x`.
    pub fn x() -> Self {
        Self::rational(Polynomial::x().into())
    }

    /// `ψ⁽ⁿ⁾(x + shift)`.
    pub fn polygamma(order: u32, shift: BigRational) -> Self {
        assert!(order <= MAX_POLYGAMMA_ORDER, "polygamma order {order} above ceiling");
        Self::single(TermKey::default().with_pg(PolygammaFactor { order, shift }), RationalFunction::one())
    }

    /// `ln(x + shift)`.
    pub fn ln(shift: BigRational) -> Self {
        Self::single(TermKey::default().with_log(LogFactor { shift }), RationalFunction::one())
    }

    /// `ln Γ(x + shift)`.
    pub fn ln_gamma(shift: BigRational) -> Self {
        let key = TermKey { lngamma: Some(shift), ..TermKey::default() };
        Self::single(key, RationalFunction::one())
    }

    fn single(key: TermKey, coeff: RationalFunction) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    fn add_term(&mut self, key: TermKey, coeff: RationalFunction) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(c) => &c + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &RationalFunction)> {
        self.terms.iter()
    }

    /// Coefficient of a given transcendental product (zero if absent).
    pub fn coeff(&self, key: &TermKey) -> RationalFunction {
        self.terms.get(key).cloned().unwrap_or_else(RationalFunction::zero)
    }

    /// The purely rational part.
    pub fn rational_part(&self) -> RationalFunction {
        self.coeff(&TermKey::default())
    }

    pub fn max_order(&self) -> u32 {
        self.terms.keys().flat_map(|k| k.pg.iter().map(|f| f.order)).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c.scale(k));
        }
        out
    }

    /// Multiplication by a rational function; fails if a ln Γ term would get
    /// a non-constant coefficient.
    pub fn mul_rational(&self, r: &RationalFunction) -> Result<Self> {
        if !r.is_constant() && self.terms.keys().any(|k| k.lngamma.is_some()) {
            return Err(Error::Config("ln Γ terms only admit constant coefficients".into()));
        }
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c * r);
        }
        Ok(out)
    }

    /// Product of two closed forms, expanded and merged.
    pub fn try_mul(&self, other: &ClosedForm) -> Result<Self> {
        let mut out = Self::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = ka.product(kb)?;
                let c = ca * cb;
                if key.lngamma.is_some() && !c.is_constant() {
                    return Err(Error::Config("ln Γ terms only admit constant coefficients".into()));
                }
                out.add_term(key, c);
            }
        }
        Ok(out)
    }

    /// Exact derivative by the product rule.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c.derivative());
            for i in 0..key.pg.len() {
                let mut pg = key.pg.clone();
                let f = pg.remove(i);
                let k = TermKey { pg, ..key.clone() }
                    .with_pg(PolygammaFactor { order: f.order + 1, shift: f.shift });
                out.add_term(k, c.clone());
            }
            for i in 0..key.logs.len() {
                let mut logs = key.logs.clone();
                let f = logs.remove(i);
                let k = TermKey { logs, ..key.clone() };
                let inv = RationalFunction::inverse_power(BigRational::one(), &f.shift, 1);
                out.add_term(k, c * &inv);
            }
            if let Some(s) = &key.lngamma {
                let k = TermKey::default().with_pg(PolygammaFactor { order: 0, shift: s.clone() });
                out.add_term(k, c.clone());
            }
        }
        out
    }

    /// `n`-th derivative with the default ceiling of 16.
    pub fn nth_derivative(&self, n: usize) -> Result<Self> {
        self.nth_derivative_with_ceiling(n, DEFAULT_DERIVATIVE_CEILING)
    }

    pub fn nth_derivative_with_ceiling(&self, n: usize, ceiling: usize) -> Result<Self> {
        if n > ceiling {
            return Err(Error::Config(format!("derivative order {n} exceeds ceiling {ceiling}")));
        }
        if self.max_order() as usize + n > MAX_POLYGAMMA_ORDER as usize {
            return Err(Error::Config(format!(
                "derivative order {n} would exceed polygamma order {MAX_POLYGAMMA_ORDER}"
            )));
        }
        Ok((0..n).fold(self.clone(), |f, _| f.derivative()))
    }

    /// `x ↦ F(x + c)`.
    pub fn translate(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (key, coeff) in &self.terms {
            let k = TermKey {
                pg: key
                    .pg
                    .iter()
                    .map(|f| PolygammaFactor { order: f.order, shift: &f.shift + c })
                    .collect(),
                logs: key.logs.iter().map(|f| LogFactor { shift: &f.shift + c }).collect(),
                lngamma: key.lngamma.as_ref().map(|s| s + c),
            };
            out.add_term(k, coeff.shift(c));
        }
        out
    }

    /// Rewrites every `ψ⁽ⁿ⁾(x+s)` as `ψ⁽ⁿ⁾(x+s+1) − (−1)ⁿ n!/(x+s)^{n+1}` and
    /// every `ln Γ(x+s)` as `ln Γ(x+s+1) − ln(x+s)`, expanding products.
    ///
    /// The result is the same function with all polygamma arguments moved
    /// one unit away from the origin and the singular parts collected in
    /// exact rational coefficients.
    pub fn rewrite_shift(&self) -> Self {
        let one = BigRational::one();
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            let base = TermKey { pg: Vec::new(), ..key.clone() };
            let mut acc = Self::single(base, c.clone());
            if let Some(s) = &key.lngamma {
                let mut moved = Self::zero();
                for (k, coeff) in &acc.terms {
                    let shifted = TermKey { lngamma: Some(s + &one), ..k.clone() };
                    moved.add_term(shifted, coeff.clone());
                    let logged = TermKey { lngamma: None, ..k.clone() }.with_log(LogFactor { shift: s.clone() });
                    moved.add_term(logged, -coeff);
                }
                acc = moved;
            }
            for f in &key.pg {
                let corr = RationalFunction::inverse_power(-falling_sign_factorial(f.order), &f.shift, f.order + 1);
                let mut factor = Self::polygamma(f.order, &f.shift + &one);
                factor.add_term(TermKey::default(), corr);
                acc = acc.try_mul(&factor).expect("polygamma factors never carry ln Γ");
            }
            out = &out + &acc;
        }
        out
    }

    /// The `(x+s)` shifts of every factor, for domain checks.
    pub(crate) fn shifts(&self) -> impl Iterator<Item = &BigRational> {
        self.terms.keys().flat_map(|k| {
            k.pg.iter().map(|f| &f.shift).chain(k.logs.iter().map(|f| &f.shift)).chain(k.lngamma.iter())
        })
    }
}

impl fmt::Display for PolygammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = shifted_arg(&self.shift);
        match self.order {
            0 => write!(f, "ψ({arg})"),
            1 => write!(f, "ψ′({arg})"),
            2 => write!(f, "ψ″({arg})"),
            n => write!(f, "ψ^({n})({arg})"),
        }
    }
}

fn shifted_arg(s: &BigRational) -> String {
    if s.is_zero() {
        "x".into()
    } else if s.is_negative() {
        format!("x - {}", s.abs())
    } else {
        format!("x + {s}")
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut factors: Vec<String> = k.pg.iter().map(|p| p.to_string()).collect();
                factors.extend(k.logs.iter().map(|l| format!("ln({})", shifted_arg(&l.shift))));
                if let Some(s) = &k.lngamma {
                    factors.push(format!("lnΓ({})", shifted_arg(s)));
                }
                let coeff = format!("[{c}]");
                if factors.is_empty() {
                    coeff
                } else if c.as_constant().is_some_and(|v| v.is_one()) {
                    factors.join("·")
                } else {
                    format!("{coeff}·{}", factors.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a ClosedForm> for &'a ClosedForm {
    type Output = ClosedForm;
    fn add(self, o: &ClosedForm) -> ClosedForm {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ClosedForm> for &'a ClosedForm {
    type Output = ClosedForm;
    fn sub(self, o: &ClosedForm) -> ClosedForm {
        self + &(-o)
    }
}

impl Neg for &ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        ClosedForm { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}

impl Neg for ClosedForm {
    type Output = ClosedForm;
    fn neg(self) -> ClosedForm {
        -&self
    }
}

/// Panics where [`ClosedForm::try_mul`] would fail.
impl<'a> Mul<&'a ClosedForm> for &'a ClosedForm {
    type Output = ClosedForm;
    fn mul(self, o: &ClosedForm) -> ClosedForm {
        self.try_mul(o).expect("invalid ln Γ product")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ClosedForm> for ClosedForm {
            type Output = ClosedForm;
            fn $m(self, o: ClosedForm) -> ClosedForm {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<RationalFunction> for ClosedForm {
    fn from(r: RationalFunction) -> Self {
        Self::rational(r)
    }
}

impl From<Polynomial> for ClosedForm {
    fn from(p: Polynomial) -> Self {
        Self::rational(p.into())
    }
}

/// Shorthand for `ψ⁽ⁿ⁾(x + s)` with an integer shift.
pub fn pg(order: u32, shift: i64) -> ClosedForm {
    ClosedForm::polygamma(order, rat_int(shift))
}

/// Shorthand for `ln(x + s)` with an integer shift.
pub fn ln(shift: i64) -> ClosedForm {
    ClosedForm::ln(rat_int(shift))
}
