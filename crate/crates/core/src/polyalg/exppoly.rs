use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Polynomial;
use crate::error::{domain, Result};
use crate::numeric::{rat_int, BigRational, Interval};

/// Exponential polynomial `t ↦ Σ_j e^{j t} p_j(t)` with nonnegative integer
/// frequencies `j` and exact rational polynomials `p_j`.
///
/// Zero polynomials are never stored, so structural equality is equality of
/// functions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    terms: BTreeMap<u32, Polynomial>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from `(j, p_j)` pairs; repeated frequencies are summed.
    pub fn from_terms<I: IntoIterator<Item = (u32, Polynomial)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (j, p) in terms {
            out.add_term(j, &p);
        }
        out
    }

    /// `e^{j t} p(t)` built from integer coefficients.
    pub fn term(j: u32, coeffs: &[i64]) -> Self {
        Self::from_terms([(j, Polynomial::from_ints(coeffs))])
    }

    pub fn polynomial(p: Polynomial) -> Self {
        Self::from_terms([(0, p)])
    }

    fn add_term(&mut self, j: u32, p: &Polynomial) {
        let sum = match self.terms.get(&j) {
            Some(q) => q + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&j);
        } else {
            self.terms.insert(j, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Polynomial)> {
        self.terms.iter().map(|(j, p)| (*j, p))
    }

    /// Polynomial attached to `e^{j t}` (zero if absent).
    pub fn part(&self, j: u32) -> Polynomial {
        self.terms.get(&j).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.values().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(j, p)| (*j, p.scale(k))))
    }

    /// Multiplication by `e^{k t}`.
    pub fn shift_exp(&self, k: u32) -> Self {
        ExpPoly { terms: self.terms.iter().map(|(j, p)| (j + k, p.clone())).collect() }
    }

    /// Exact division by `c · e^{k t}`; fails if some frequency is below `k`.
    pub fn divide_prefactor(&self, c: &BigRational, k: u32) -> Result<Self> {
        if c.is_zero() {
            return Err(domain("division by a zero prefactor"));
        }
        if self.terms.keys().any(|&j| j < k) {
            return Err(domain(format!("not divisible by e^({k}t)")));
        }
        let inv = c.recip();
        Ok(ExpPoly { terms: self.terms.iter().map(|(j, p)| (j - k, p.scale(&inv))).collect() })
    }

    pub fn mul_poly(&self, q: &Polynomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(j, p)| (*j, p * q)))
    }

    /// `d/dt`: each `(j, p)` maps to `(j, j p + p')`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(j, p)| (*j, &p.scale(&rat_int(*j as i64)) + &p.derivative())),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |e, _| e.derivative())
    }

    /// Exact coefficient of `t^m` in the Maclaurin series:
    /// `Σ_j Σ_{i ≤ min(m, deg p_j)} p_j[i] j^{m-i} / (m-i)!`.
    pub fn taylor_coeff(&self, m: usize) -> BigRational {
        let mut fact = vec![BigInt::one()];
        for k in 1..=m {
            let next = &fact[k - 1] * BigInt::from(k);
            fact.push(next);
        }
        let mut acc = BigRational::zero();
        for (j, p) in &self.terms {
            for (i, c) in p.coeffs().iter().enumerate().take(m + 1) {
                if c.is_zero() {
                    continue;
                }
                let e = m - i;
                let jp = BigInt::from(*j).pow(e as u32);
                if jp.is_zero() {
                    continue;
                }
                acc += c * BigRational::new(jp, fact[e].clone());
            }
        }
        acc
    }

    /// Exact value at `t = 0`.
    pub fn value_at_zero(&self) -> BigRational {
        self.terms.values().map(|p| p.coeff(0)).fold(BigRational::zero(), |a, b| a + b)
    }

    /// Order of vanishing at 0 (smallest `m` with nonzero Taylor
    /// coefficient), searched up to `limit`.
    pub fn valuation(&self, limit: usize) -> Option<usize> {
        (0..=limit).find(|&m| !self.taylor_coeff(m).is_zero())
    }

    /// Direct enclosure `Σ_j exp(j t) p_j(t)`.
    pub fn eval(&self, t: &Interval) -> Interval {
        let pt = t.is_point().then(|| BigRational::from_float(t.lo())).flatten();
        self.terms
            .iter()
            .map(|(j, p)| {
                let (pv, jt) = match &pt {
                    Some(q) => (
                        Interval::from(&p.eval(q)),
                        Interval::from(&(q * rat_int(*j as i64))),
                    ),
                    None => (p.eval_interval(t), *t * Interval::from_int(*j as i64)),
                };
                jt.exp() * pv
            })
            .sum()
    }

    /// Enclosure of `E(t) / t^skip` from the Maclaurin series truncated at
    /// `t^order` plus a rigorous tail bound, valid for `t ≥ 0` with `j·t`
    /// below `order − deg p_j`. Requires the first `skip` Taylor
    /// coefficients to vanish exactly.
    pub fn eval_series(&self, t: &Interval, order: usize, skip: usize) -> Result<Interval> {
        self.series(order, skip)?.eval(t)
    }

    /// Precomputed form of [`ExpPoly::eval_series`] for repeated use.
    pub fn series(&self, order: usize, skip: usize) -> Result<SeriesForm> {
        if order <= self.max_degree() || order <= skip {
            return Err(domain("series order too small"));
        }
        for m in 0..skip {
            if !self.taylor_coeff(m).is_zero() {
                return Err(domain(format!("Taylor coefficient {m} is not zero")));
            }
        }
        let body = Polynomial::new((skip..order).map(|m| self.taylor_coeff(m)).collect());
        let mut tails = Vec::new();
        for (j, p) in &self.terms {
            if *j == 0 {
                continue;
            }
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    tails.push((*j, order - i, Interval::from(&c.abs())));
                }
            }
        }
        Ok(SeriesForm { body, tails, order, skip })
    }
}

/// Truncated Maclaurin series of an [`ExpPoly`] divided by `t^skip`, with
/// the data for its tail bound.
#[derive(Clone, Debug)]
pub struct SeriesForm {
    body: Polynomial,
    tails: Vec<(u32, usize, Interval)>,
    order: usize,
    skip: usize,
}

impl SeriesForm {
    pub fn eval(&self, t: &Interval) -> Result<Interval> {
        if t.lo() < 0.0 {
            return Err(domain("series enclosure needs t ≥ 0"));
        }
        let body = self.body.eval_interval(t);
        let th = Interval::point(t.hi());
        let tk = th.pow_int((self.order - self.skip) as i32)?;
        let mut tail = Interval::ZERO;
        for (j, big_k, c) in &self.tails {
            // Σ_{k≥K} (jt)^k / k! ≤ (jt)^K / K! · (K+1) / (K+1-jt)
            let jt = th * Interval::from_int(*j as i64);
            let kp1 = Interval::from_int(*big_k as i64 + 1);
            let denom = kp1 - jt;
            if !denom.is_positive() {
                return Err(domain("series order too small for this t"));
            }
            let mut fact = Interval::ONE;
            for k in 1..=*big_k {
                fact = fact * Interval::from_int(k as i64);
            }
            let jk = Interval::from_int(*j as i64).pow_int(*big_k as i32)?;
            tail = tail + *c * jk * tk * kp1.div(&(fact * denom))?;
        }
        Ok(body + Interval::new(-tail.hi(), tail.hi()))
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(j, p)| {
                let body = p.display_with("t");
                match j {
                    0 => format!("({body})"),
                    1 => format!("e^t ({body})"),
                    _ => format!("e^({j}t) ({body})"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn add(self, o: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (j, p) in &o.terms {
            out.add_term(*j, p);
        }
        out
    }
}

impl<'a> Sub<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn sub(self, o: &ExpPoly) -> ExpPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn mul(self, o: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (j, p) in &self.terms {
            for (k, q) in &o.terms {
                out.add_term(j + k, &(p * q));
            }
        }
        out
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(j, p)| (*j, -p)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExpPoly> for ExpPoly {
            type Output = ExpPoly;
            fn $m(self, o: ExpPoly) -> ExpPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
