use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Polynomial;
use crate::error::{domain, Result};
use crate::numeric::{BigRational, Interval};
use crate::numeric::dyadic_parts;

/// Exact rational function `num / den` in canonical form.
///
/// The canonical form divides out `gcd(num, den)` and scales so `den` is
/// monic; two rational functions are therefore equal as functions iff they
/// are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading().unwrap().recip();
        RationalFunction { num: num.scale(&lead), den: den.scale(&lead) }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    /// `c / (x + s)^k`.
    pub fn inverse_power(c: BigRational, s: &BigRational, k: u32) -> Self {
        Self::new(Polynomial::constant(c), Polynomial::linear(s.clone()).pow(k))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.den.degree() == Some(0) {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(k), den: self.den.clone() }
    }

    /// Quotient-rule derivative, canonicalized.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// `x ↦ r(x + c)`.
    pub fn shift(&self, c: &BigRational) -> Self {
        Self::new(self.num.shift(c), self.den.shift(c))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(domain("reciprocal of the zero rational function"));
        }
        Ok(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(domain(format!("pole of {self} at x = {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_interval(&self, x: &Interval) -> Result<Interval> {
        if x.is_point() {
            return self.compile().eval_point(x.lo()).map(|q| Interval::from(&q));
        }
        let d = self.den.eval_interval(x);
        self.num.eval_interval(x).div(&d)
    }

    pub fn compile(&self) -> CompiledRatFun {
        CompiledRatFun::new(self)
    }
}

/// Integer-coefficient form of a rational function for fast exact
/// evaluation at doubles.
#[derive(Clone, Debug)]
pub struct CompiledRatFun {
    num: Vec<BigInt>,
    num_den: BigInt,
    den: Vec<BigInt>,
    den_den: BigInt,
}

fn eval_dyadic(a: &[BigInt], m: &BigInt, k: u32) -> BigInt {
    let d = a.len().saturating_sub(1);
    let mut acc = BigInt::zero();
    for (i, c) in a.iter().enumerate().rev() {
        acc = acc * m + (c << ((k as usize) * (d - i)));
    }
    acc
}

impl CompiledRatFun {
    fn new(r: &RationalFunction) -> Self {
        let (num, num_den) = r.num.to_integer();
        let (den, den_den) = r.den.to_integer();
        CompiledRatFun { num, num_den, den, den_den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Exact value at the rational represented by the double `x`.
    pub fn eval_point(&self, x: f64) -> Result<BigRational> {
        if self.num.is_empty() {
            return Ok(BigRational::zero());
        }
        let (m, k) = dyadic_parts(x);
        let nn = eval_dyadic(&self.num, &m, k);
        let nd = eval_dyadic(&self.den, &m, k);
        if nd.is_zero() {
            return Err(domain(format!("pole at x = {x:e}")));
        }
        let dn = self.num.len() - 1;
        let dd = self.den.len() - 1;
        // p(x) = N / (D · 2^{k·deg})
        let mut top = nn * &self.den_den;
        let mut bot = nd * &self.num_den;
        let ks = k as usize;
        if dd >= dn {
            top <<= ks * (dd - dn);
        } else {
            bot <<= ks * (dn - dd);
        }
        Ok(BigRational::new(top, bot))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.leading().is_some_and(|l| l.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RationalFunction::new(&self.num + &o.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, o: RationalFunction) -> RationalFunction {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};

    fn x() -> RationalFunction {
        Polynomial::x().into()
    }

    /// 1/(12 x^3 (x+1)^2)
    fn h() -> RationalFunction {
        let den = &Polynomial::x().pow(3) * &Polynomial::from_ints(&[1, 1]).pow(2);
        RationalFunction::new(Polynomial::constant(rat(1, 12)), den)
    }

    #[test]
    fn canonical_form_divides_gcd() {
        let a = RationalFunction::new(Polynomial::from_ints(&[-1, 0, 1]), Polynomial::from_ints(&[2, 2]));
        assert_eq!(a.num(), &Polynomial::new(vec![rat(-1, 2), rat(1, 2)]));
        assert_eq!(a.den(), &Polynomial::one());
    }

    #[test]
    fn derivative_examples() {
        let inv = x().recip().unwrap();
        let expect = RationalFunction::new(Polynomial::from_ints(&[-1]), Polynomial::x().pow(2));
        assert_eq!(inv.derivative(), expect);

        let dh = RationalFunction::new(
            Polynomial::from_ints(&[-3, -5]),
            (&Polynomial::x().pow(4) * &Polynomial::from_ints(&[1, 1]).pow(3)).scale(&rat_int(12)),
        );
        assert_eq!(h().derivative(), dh);
        assert!(RationalFunction::constant(rat(13, 48)).derivative().is_zero());
    }

    #[test]
    fn point_evaluation_is_exact() {
        let r = h();
        let c = r.compile();
        for v in [1.0, 0.001, 3.5, 1e3, 2.0f64.powi(-30)] {
            let q = BigRational::from_float(v).unwrap();
            assert_eq!(c.eval_point(v).unwrap(), r.eval(&q).unwrap(), "{v}");
        }
        assert!(c.eval_point(0.0).is_err());
        assert!(r.eval(&rat_int(-1)).is_err());
    }

    #[test]
    fn interval_evaluation_contains_exact() {
        let r = h();
        let x = Interval::new(0.999, 1.001);
        let v = r.eval_interval(&x).unwrap();
        assert!(v.contains_rational(&rat(1, 48)));
        assert!(x.contains(1.0));
    }
}
