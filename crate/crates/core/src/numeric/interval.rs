use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rational::{from_f64_exact, to_f64_nearest, BigRational};
use crate::error::{domain, Result};

/// Outward inflation, in ulps, applied to endpoints produced by the platform
/// `exp`/`ln`.
const ELEM_ULPS: u32 = 4;

/// Below this magnitude an FMA error term may itself be inexact.
const TINY: f64 = 1e-290;

/// A closed interval `[lo, hi]` of doubles, used as a guaranteed enclosure.
///
/// Every arithmetic operation rounds outward: for each exact input inside
/// the operands the exact result lies inside the output. Basic operations
/// detect exactness with error-free transformations (TwoSum, FMA residuals)
/// and move an endpoint by one ulp only in the direction the rounding went.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

fn nudge_down(v: f64, k: u32) -> f64 {
    (0..k).fold(v, |v, _| v.next_down())
}

fn nudge_up(v: f64, k: u32) -> f64 {
    (0..k).fold(v, |v, _| v.next_up())
}

fn overflow_down(s: f64) -> f64 {
    if s == f64::INFINITY {
        f64::MAX
    } else {
        s
    }
}

fn overflow_up(s: f64) -> f64 {
    if s == f64::NEG_INFINITY {
        f64::MIN
    } else {
        s
    }
}

fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if a.is_finite() && b.is_finite() { overflow_down(s) } else { s };
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if a.is_finite() && b.is_finite() { overflow_up(s) } else { s };
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

/// Sign of the rounding error of `p = a*b`: `Some(ordering of exact vs p)`,
/// or `None` when the residual cannot be trusted.
fn mul_residual(a: f64, b: f64, p: f64) -> Option<f64> {
    if a == 0.0 || b == 0.0 {
        return Some(0.0);
    }
    if !p.is_finite() || p.abs() < TINY {
        return None;
    }
    Some(a.mul_add(b, -p))
}

pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if p.is_nan() {
        return f64::NEG_INFINITY;
    }
    match mul_residual(a, b, p) {
        Some(e) if e < 0.0 => p.next_down(),
        Some(_) => p,
        None if p.is_infinite() && a.is_finite() && b.is_finite() => overflow_down(p),
        None if p.is_infinite() => p,
        None => p.next_down(),
    }
}

pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if p.is_nan() {
        return f64::INFINITY;
    }
    match mul_residual(a, b, p) {
        Some(e) if e > 0.0 => p.next_up(),
        Some(_) => p,
        None if p.is_infinite() && a.is_finite() && b.is_finite() => overflow_up(p),
        None if p.is_infinite() => p,
        None => p.next_up(),
    }
}

/// `a/b` rounded down; `b != 0`.
pub(crate) fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    if a == 0.0 {
        return 0.0;
    }
    if q.is_infinite() {
        return if a.is_finite() && b.is_finite() { overflow_down(q) } else { q };
    }
    if !a.is_finite() || !b.is_finite() || q.abs() < TINY || a.abs() < TINY {
        return q.next_down();
    }
    // exact: a - q*b = r, so a/b - q = r/b
    let r = -q.mul_add(b, -a);
    if (r < 0.0) != (b < 0.0) && r != 0.0 {
        q.next_down()
    } else {
        q
    }
}

pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    -div_down(-a, b)
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };
    pub const ENTIRE: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    /// Panics unless `lo <= hi` and neither endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        Self::new(v, v)
    }

    pub fn from_int(n: i64) -> Self {
        let v = n as f64;
        if v as i64 == n && v.abs() < 9.007_199_254_740_992e15 {
            Self::point(v)
        } else {
            Self::new(v.next_down(), v.next_up())
        }
    }

    /// Tightest double enclosure of an exact rational.
    pub fn from_rational(q: &BigRational) -> Self {
        let f = to_f64_nearest(q);
        if !f.is_finite() {
            return if f > 0.0 {
                Interval::new(f64::MAX, f64::INFINITY)
            } else {
                Interval::new(f64::NEG_INFINITY, f64::MIN)
            };
        }
        let fq = from_f64_exact(f).expect("finite");
        match fq.cmp(q) {
            std::cmp::Ordering::Equal => Self::point(f),
            std::cmp::Ordering::Less => Self::new(f, f.next_up()),
            std::cmp::Ordering::Greater => Self::new(f.next_down(), f),
        }
    }

    /// Enclosure of π.
    pub fn pi() -> Self {
        Self::new(std::f64::consts::PI.next_down(), std::f64::consts::PI.next_up())
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        if self.lo.is_infinite() || self.hi.is_infinite() {
            return if self.lo == self.hi { self.lo } else { 0.5 * self.lo + 0.5 * self.hi };
        }
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Largest absolute value in the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Width divided by magnitude (infinite if the interval touches 0 with
    /// positive width).
    pub fn rel_width(&self) -> f64 {
        let m = self.lo.abs().min(self.hi.abs());
        if self.width() == 0.0 {
            0.0
        } else if self.contains(0.0) || m == 0.0 {
            f64::INFINITY
        } else {
            self.width() / m
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let le = |v: f64, q: &BigRational| match from_f64_exact(v) {
            Some(r) => &r <= q,
            None => v < 0.0,
        };
        let ge = |v: f64, q: &BigRational| match from_f64_exact(v) {
            Some(r) => &r >= q,
            None => v > 0.0,
        };
        le(self.lo, q) && ge(self.hi, q)
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    /// `true` when every element of `self` is strictly below every element
    /// of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// `[-r, r]` for `r = self.mag()`.
    pub fn symmetric(&self) -> Interval {
        let m = self.mag();
        Interval::new(-m, m)
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            -*self
        } else {
            Interval::new(0.0, self.mag())
        }
    }

    pub fn scale(&self, k: f64) -> Interval {
        *self * Interval::point(k)
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::ONE.div(self)
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if other.contains(0.0) {
            return Err(domain(format!("division by interval {other:?} containing 0")));
        }
        let c = [
            (self.lo, other.lo),
            (self.lo, other.hi),
            (self.hi, other.lo),
            (self.hi, other.hi),
        ];
        let lo = c.iter().map(|&(a, b)| div_down(a, b)).fold(f64::INFINITY, f64::min);
        let hi = c.iter().map(|&(a, b)| div_up(a, b)).fold(f64::NEG_INFINITY, f64::max);
        Ok(Interval::new(lo, hi))
    }

    /// Integer power; negative exponents require `0 ∉ self`.
    pub fn pow_int(&self, n: i32) -> Result<Interval> {
        if n < 0 {
            return self.pow_int(-n)?.recip();
        }
        if n == 0 {
            return Ok(Interval::ONE);
        }
        let n = n as u32;
        let pow_nonneg = |lo: f64, hi: f64| {
            let mut down = 1.0;
            let mut up = 1.0;
            for _ in 0..n {
                down = mul_down(down, lo);
                up = mul_up(up, hi);
            }
            Interval::new(down, up)
        };
        Ok(if self.lo >= 0.0 {
            pow_nonneg(self.lo, self.hi)
        } else if self.hi <= 0.0 {
            let p = pow_nonneg(-self.hi, -self.lo);
            if n % 2 == 0 {
                p
            } else {
                -p
            }
        } else {
            let p = pow_nonneg(0.0, self.mag());
            if n % 2 == 0 {
                p
            } else {
                let lo = -pow_nonneg(0.0, -self.lo).hi;
                let hi = pow_nonneg(0.0, self.hi).hi;
                Interval::new(lo, hi)
            }
        })
    }

    pub fn sqr(&self) -> Interval {
        self.pow_int(2).expect("square never fails")
    }

    pub fn exp(&self) -> Interval {
        if *self == Interval::ZERO {
            return Interval::ONE;
        }
        let lo = if self.lo == f64::NEG_INFINITY {
            0.0
        } else {
            nudge_down(self.lo.exp(), ELEM_ULPS).max(0.0)
        };
        let hi = nudge_up(self.hi.exp(), ELEM_ULPS);
        Interval::new(lo, hi)
    }

    pub fn ln(&self) -> Result<Interval> {
        if !(self.lo > 0.0) {
            return Err(domain(format!("ln of {self:?}")));
        }
        if *self == Interval::ONE {
            return Ok(Interval::ZERO);
        }
        let lo = nudge_down(self.lo.ln(), ELEM_ULPS);
        let hi = if self.hi == f64::INFINITY {
            f64::INFINITY
        } else {
            nudge_up(self.hi.ln(), ELEM_ULPS)
        };
        Ok(Interval::new(lo, hi))
    }

    /// `ln(1 + self)`, accurate for small arguments.
    pub fn ln_1p(&self) -> Result<Interval> {
        if !(self.lo > -1.0) {
            return Err(domain(format!("ln_1p of {self:?}")));
        }
        if *self == Interval::ZERO {
            return Ok(Interval::ZERO);
        }
        let lo = nudge_down(self.lo.ln_1p(), ELEM_ULPS);
        let hi = if self.hi == f64::INFINITY {
            f64::INFINITY
        } else {
            nudge_up(self.hi.ln_1p(), ELEM_ULPS)
        };
        Ok(Interval::new(lo, hi))
    }

    /// `self^p = exp(p ln self)` for `self > 0`; `p` is itself an enclosure.
    pub fn pow_real(&self, p: &Interval) -> Result<Interval> {
        if !(self.lo > 0.0) {
            return Err(domain(format!("real power of {self:?}")));
        }
        Ok((*p * self.ln()?).exp())
    }
}

impl From<f64> for Interval {
    fn from(v: f64) -> Self {
        Interval::point(v)
    }
}

impl From<&BigRational> for Interval {
    fn from(q: &BigRational) -> Self {
        if q.is_zero() {
            Interval::ZERO
        } else {
            Interval::from_rational(q)
        }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::new(add_down(self.lo, o.lo), add_up(self.hi, o.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        self + (-o)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        if self.is_point() && o.is_point() {
            return Interval::new(mul_down(self.lo, o.lo), mul_up(self.lo, o.lo));
        }
        let c = [
            (self.lo, o.lo),
            (self.lo, o.hi),
            (self.hi, o.lo),
            (self.hi, o.hi),
        ];
        let lo = c.iter().map(|&(a, b)| mul_down(a, b)).fold(f64::INFINITY, f64::min);
        let hi = c.iter().map(|&(a, b)| mul_up(a, b)).fold(f64::NEG_INFINITY, f64::max);
        Interval::new(lo, hi)
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    fn ulp(v: f64) -> f64 {
        v.next_up() - v
    }

    #[test]
    fn exact_sums_stay_points() {
        let s = Interval::point(1.0) + Interval::point(2.0);
        assert!(s.contains(3.0));
        assert!(s.width() <= ulp(3.0));
    }

    #[test]
    fn symmetric_product() {
        let a = Interval::new(-1.0, 1.0);
        assert_eq!(a * a, Interval::new(-1.0, 1.0));
        assert_eq!(a.sqr(), Interval::new(0.0, 1.0));
    }

    #[test]
    fn third_is_strictly_bracketed() {
        let q = Interval::ONE.div(&Interval::point(3.0)).unwrap();
        let third = rat(1, 3);
        assert!(q.contains_rational(&third));
        assert!(q.lo() < q.hi());
    }

    #[test]
    fn division_by_zero_interval() {
        assert!(Interval::ONE.div(&Interval::new(-1.0, 1.0)).is_err());
        assert!(Interval::new(-1.0, 0.0).recip().is_err());
    }

    #[test]
    fn elementary_special_points() {
        let e0 = Interval::ZERO.exp();
        assert!(e0.contains(1.0) && e0.width() <= 4.0 * ulp(1.0));
        assert!(Interval::ONE.ln().unwrap().contains(0.0));
        assert!(Interval::ZERO.ln().is_err());
        assert!(Interval::new(-1.0, 2.0).pow_real(&Interval::ONE).is_err());
    }

    #[test]
    fn exp_one_against_taylor_oracle() {
        // e = Σ 1/k!, truncated at k = 25 with remainder < 2/26!
        let mut e = BigRational::from_integer(0.into());
        let mut fact = BigRational::from_integer(1.into());
        for k in 0..26i64 {
            if k > 0 {
                fact *= rat(k, 1);
            }
            e += fact.recip();
        }
        let rem = Interval::from_rational(&(rat(2, 1) / (fact * rat(26, 1))));
        let lo = Interval::from_rational(&e);
        let oracle = Interval::new(lo.lo(), (lo + rem).hi());
        let got = Interval::ONE.exp();
        assert!(got.contains_interval(&oracle) || got.overlaps(&oracle));
        assert!(got.contains(std::f64::consts::E));
        assert!(got.lo() <= oracle.lo() && oracle.hi() <= got.hi());
    }

    #[test]
    fn rational_enclosure_is_tight() {
        for q in [rat(1, 3), rat(-22, 7), rat(1, 1 << 20), rat(10, 1)] {
            let iv = Interval::from_rational(&q);
            assert!(iv.contains_rational(&q));
            assert!(iv.width() <= ulp(iv.lo().abs().max(iv.hi().abs())));
        }
    }

    #[test]
    fn pow_int_signs() {
        let a = Interval::new(-2.0, 1.0);
        assert_eq!(a.pow_int(2).unwrap(), Interval::new(0.0, 4.0));
        assert_eq!(a.pow_int(3).unwrap(), Interval::new(-8.0, 1.0));
        assert_eq!(Interval::new(-3.0, -2.0).pow_int(3).unwrap(), Interval::new(-27.0, -8.0));
        let inv = Interval::point(3.0).pow_int(-2).unwrap();
        assert!(inv.contains_rational(&rat(1, 9)));
    }
}
