use std::collections::HashMap;

use num_traits::Zero;

use super::{ClosedForm, TermKey};
use crate::error::{domain, Result};
use crate::numeric::{BigRational, Interval};
use crate::polyalg::{CompiledRatFun, RationalFunction};
use crate::polygamma::{Engine, SERIES_FROM};

/// A [`ClosedForm`] with integer-compiled coefficients, ready for repeated
/// evaluation.
#[derive(Clone, Debug)]
pub struct CompiledForm {
    terms: Vec<(TermKey, RationalFunction, CompiledRatFun)>,
    min_shift: BigRational,
}

#[derive(Hash, PartialEq, Eq)]
enum FactorKey {
    Pg(u32, BigRational),
    Ln(BigRational),
    LnGamma(BigRational),
}

impl ClosedForm {
    pub fn compile(&self) -> CompiledForm {
        let min_shift = self.shifts().min().cloned().unwrap_or_else(BigRational::zero);
        CompiledForm {
            terms: self.terms().map(|(k, c)| (k.clone(), c.clone(), c.compile())).collect(),
            min_shift,
        }
    }

    /// Enclosure of the function on `x`. See [`CompiledForm::eval`].
    pub fn eval(&self, x: &Interval, engine: &Engine) -> Result<Interval> {
        self.compile().eval(x, engine)
    }
}

impl CompiledForm {
    /// Enclosure of the function on `x` (requires `x > 0`).
    ///
    /// At a point, rational coefficients are evaluated exactly and the
    /// purely rational terms are summed exactly before a single outward
    /// rounding. From the engine cutoff on, every term with a single
    /// logarithmic factor (`ln`, `ψ` or `ln Γ`) is split as
    /// `ln(x+s) = ln x + ln(1 + s/x)`, `ψ(z) = ln z + (ψ(z) − ln z)`,
    /// `ln Γ(z) = (z − ½) ln z − z + ½ ln 2π + tail`, and the resulting
    /// coefficient of `ln x` is summed exactly, so large cancelling
    /// logarithms never meet in floating point.
    pub fn eval(&self, x: &Interval, engine: &Engine) -> Result<Interval> {
        if !(x.lo() > 0.0) {
            return Err(domain(format!("closed-form argument {x:?} must be positive")));
        }
        if x.is_point() {
            self.eval_point(x.lo(), engine)
        } else {
            self.eval_interval(x, engine)
        }
    }

    fn eval_interval(&self, x: &Interval, engine: &Engine) -> Result<Interval> {
        let mut cache = HashMap::new();
        let mut acc = Interval::ZERO;
        for (key, coeff, _) in &self.terms {
            let c = coeff.eval_interval(x)?;
            acc = acc + c * factor_product(key, x, None, engine, &mut cache)?;
        }
        Ok(acc)
    }

    fn eval_point(&self, x: f64, engine: &Engine) -> Result<Interval> {
        let xq = BigRational::from_float(x).expect("finite");
        let large = x >= engine.cutoff().max(SERIES_FROM) && self.min_shift >= BigRational::zero();
        let xi = Interval::point(x);
        let mut cache = HashMap::new();
        let mut exact = BigRational::zero();
        let mut lnx_coeff = BigRational::zero();
        let mut acc = Interval::ZERO;
        let half = BigRational::new(1.into(), 2.into());
        for (key, _, compiled) in &self.terms {
            let c = compiled.eval_point(x)?;
            if key.is_rational() {
                exact += c;
                continue;
            }
            let ci = Interval::from_rational(&c);
            let single_log = key.pg.len() + key.logs.len() + key.lngamma.iter().count() == 1
                && key.pg.iter().all(|f| f.order == 0);
            if large && single_log {
                if let Some(f) = key.logs.first() {
                    lnx_coeff += &c;
                    acc = acc + ci * ln1p_ratio(&f.shift, &xq)?;
                } else if let Some(f) = key.pg.first() {
                    lnx_coeff += &c;
                    let z = Interval::from_rational(&(&xq + &f.shift));
                    acc = acc + ci * (ln1p_ratio(&f.shift, &xq)? + engine.digamma_tail(&z)?);
                } else if let Some(s) = &key.lngamma {
                    let zq = &xq + s;
                    let l = &zq - &half;
                    lnx_coeff += &c * &l;
                    exact -= &c * &zq;
                    let z = Interval::from_rational(&zq);
                    let rest = Interval::from_rational(&l) * ln1p_ratio(s, &xq)?
                        + engine.half_ln_2pi()
                        + engine.lngamma_tail(&z)?;
                    acc = acc + ci * rest;
                }
                continue;
            }
            acc = acc + ci * factor_product(key, &xi, Some(&xq), engine, &mut cache)?;
        }
        let mut out = Interval::from_rational(&exact) + acc;
        if !lnx_coeff.is_zero() {
            out = out + Interval::from_rational(&lnx_coeff) * xi.ln()?;
        }
        Ok(out)
    }
}

/// `ln(1 + s/x)` with `s/x` formed exactly.
fn ln1p_ratio(s: &BigRational, x: &BigRational) -> Result<Interval> {
    if s.is_zero() {
        return Ok(Interval::ZERO);
    }
    Interval::from_rational(&(s / x)).ln_1p()
}

fn shifted(x: &Interval, xq: Option<&BigRational>, s: &BigRational) -> Interval {
    match xq {
        Some(q) => Interval::from_rational(&(q + s)),
        None => *x + Interval::from_rational(s),
    }
}

fn factor_product(
    key: &TermKey,
    x: &Interval,
    xq: Option<&BigRational>,
    engine: &Engine,
    cache: &mut HashMap<FactorKey, Interval>,
) -> Result<Interval> {
    let mut p = Interval::ONE;
    for f in &key.pg {
        let k = FactorKey::Pg(f.order, f.shift.clone());
        let v = match cache.get(&k) {
            Some(v) => *v,
            None => {
                let v = engine.polygamma(f.order as usize, &shifted(x, xq, &f.shift))?;
                cache.insert(k, v);
                v
            }
        };
        p = p * v;
    }
    for f in &key.logs {
        let k = FactorKey::Ln(f.shift.clone());
        let v = match cache.get(&k) {
            Some(v) => *v,
            None => {
                let v = shifted(x, xq, &f.shift).ln()?;
                cache.insert(k, v);
                v
            }
        };
        p = p * v;
    }
    if let Some(s) = &key.lngamma {
        let k = FactorKey::LnGamma(s.clone());
        let v = match cache.get(&k) {
            Some(v) => *v,
            None => {
                let v = engine.ln_gamma(&shifted(x, xq, s))?;
                cache.insert(k, v);
                v
            }
        };
        p = p * v;
    }
    if p.lo().is_nan() {
        return Err(domain("non-finite factor product"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::super::{ln, pg};
    use super::*;
    use crate::numeric::{rat, rat_int};

    #[test]
    fn s_at_one_matches_zeta_oracle() {
        let e = Engine::default();
        let s = &(&pg(1, 0) * &pg(1, 0)) + &pg(2, 0);
        let v = s.eval(&Interval::ONE, &e).unwrap();
        assert!(v.lo() <= 0.301_694_277_958_657 && 0.301_694_277_958_656 <= v.hi());
        let c = ClosedForm::constant(rat(13, 48)).eval(&Interval::point(7.0), &e).unwrap();
        assert!(c.contains_rational(&rat(13, 48)) && c.width() <= f64::EPSILON);
    }

    #[test]
    fn large_argument_log_consolidation_matches_plain_route() {
        let e = Engine::default();
        // ψ(x) − ln x − ln(1 + 1/x) + ln Γ(x) − (x − ½) ln x
        let xr = ClosedForm::x();
        let f = &(&(&pg(0, 0) - &ln(0)) - &ln(1)) + &ClosedForm::ln_gamma(rat_int(0));
        let g = &f - &(&(&xr - &ClosedForm::constant(rat(1, 2))) * &ln(0));
        for x in [25.0, 300.0, 1e6] {
            let xi = Interval::point(x);
            let fast = g.eval(&xi, &e).unwrap();
            let plain = g.compile().eval_interval(&xi, &e).unwrap();
            assert!(fast.overlaps(&plain), "x={x}: {fast:?} vs {plain:?}");
            assert!(fast.width() <= plain.width());
        }
    }

    #[test]
    fn interval_route_contains_point_values() {
        let e = Engine::default();
        let f = &(&pg(1, 0) * &ln(2)) + &ClosedForm::ln_gamma(rat_int(1));
        let wide = f.eval(&Interval::new(1.0, 1.0 + 1e-9), &e).unwrap();
        let p = f.eval(&Interval::ONE, &e).unwrap();
        assert!(wide.contains_interval(&p) || wide.overlaps(&p));
        assert!(f.eval(&Interval::new(-1.0, 1.0), &e).is_err());
    }
}
