//! Rigorous enclosures of ψ⁽ⁿ⁾ and ln Γ on `(0, ∞)`.
//!
//! Arguments below the cutoff are shifted upward with the recurrence
//! `ψ⁽ⁿ⁾(x+1) = ψ⁽ⁿ⁾(x) + (−1)ⁿ n!/x^{n+1}` (and `ln Γ(x+1) = ln Γ(x) + ln x`);
//! above it the Bernoulli asymptotic series is summed and the remainder is
//! enclosed by ± the first omitted term.
//!
//! ```
//! use cmcert::{Engine, Interval};
//!
//! let engine = Engine::default();
//! let trigamma_one = engine.polygamma(1, &Interval::ONE).unwrap();
//! assert!(trigamma_one.contains(std::f64::consts::PI.powi(2) / 6.0));
//! assert!(trigamma_one.rel_width() < 1e-12);
//! ```

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::{bernoulli, rat, rat_int, rational_str, BigRational, Interval};
use crate::polyalg::Polynomial;

/// Arguments at or above this value may use the large-argument series
/// routes of [`Engine::s_combo`] and [`Engine::lambda_profile`].
pub const SERIES_FROM: f64 = 10.0;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Arguments are shifted up to at least this value before the
    /// asymptotic series is used.
    #[serde(with = "rational_str")]
    pub shift_cutoff: BigRational,
    /// Highest polygamma order the engine accepts.
    pub max_order: usize,
    /// Number of Bernoulli terms, counting the one used as the remainder.
    pub series_terms: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { shift_cutoff: rat_int(20), max_order: 18, series_terms: 30 }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.shift_cutoff < rat_int(10) {
            return Err(Error::Config(format!("shift_cutoff {} is below 10", self.shift_cutoff)));
        }
        if self.series_terms < 2 || self.series_terms > 40 {
            return Err(Error::Config(format!(
                "series_terms {} outside 2..=40",
                self.series_terms
            )));
        }
        Ok(())
    }
}

struct Tables {
    /// `[n][k-1]`: coefficient of `w^{2k+n}` in the ψ⁽ⁿ⁾ series (n ≥ 1).
    pg: Vec<Vec<Interval>>,
    /// `(n-1)!` and `n!/2` with the series sign, per order.
    lead: Vec<(Interval, Interval)>,
    factorial: Vec<Interval>,
    /// `B_{2k}/(2k)` for the digamma series.
    digamma: Vec<Interval>,
    /// `B_{2k}/(2k(2k−1))` for the Stirling series.
    stirling: Vec<Interval>,
    half_ln_2pi: Interval,
    s_series: OnceLock<SSeries>,
}

/// Enclosure engine for ψ⁽ⁿ⁾, ln Γ and the combination `[ψ′]² + ψ″`.
///
/// Cloning is cheap; clones share the coefficient tables.
#[derive(Clone)]
pub struct Engine {
    cfg: EngineConfig,
    cutoff: f64,
    tables: Arc<Tables>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default()).expect("default configuration is valid")
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("cfg", &self.cfg).finish()
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

fn tiny_relative(term: &Interval, scale: &Interval) -> bool {
    term.mag() <= scale.mag() * f64::powi(2.0, -60)
}

impl Engine {
    pub fn new(cfg: EngineConfig) -> Result<Self> {
        cfg.validate()?;
        let k_max = cfg.series_terms;
        let b: Vec<BigRational> = (1..=k_max).map(|k| bernoulli(2 * k)).collect::<Result<_>>()?;
        let mut pg = vec![Vec::new()];
        let mut lead = vec![(Interval::ZERO, Interval::ZERO)];
        for n in 1..=cfg.max_order {
            let sign = if n % 2 == 1 { BigRational::one() } else { -BigRational::one() };
            let row = (1..=k_max)
                .map(|k| {
                    let c = &b[k - 1] * BigRational::new(factorial(2 * k + n - 1), factorial(2 * k));
                    Interval::from_rational(&(&sign * c))
                })
                .collect();
            pg.push(row);
            let l0 = &sign * BigRational::from_integer(factorial(n - 1));
            let l1 = &sign * BigRational::new(factorial(n), BigInt::from(2));
            lead.push((Interval::from_rational(&l0), Interval::from_rational(&l1)));
        }
        let factorial_tab = (0..=cfg.max_order + 1)
            .map(|n| Interval::from_rational(&BigRational::from_integer(factorial(n))))
            .collect();
        let digamma = (1..=k_max)
            .map(|k| Interval::from_rational(&(&b[k - 1] / rat_int(2 * k as i64))))
            .collect();
        let stirling = (1..=k_max)
            .map(|k| {
                let d = rat_int((2 * k * (2 * k - 1)) as i64);
                Interval::from_rational(&(&b[k - 1] / d))
            })
            .collect();
        let half_ln_2pi = (Interval::pi() * Interval::from_int(2)).ln()?.scale(0.5);
        let tables = Tables {
            pg,
            lead,
            factorial: factorial_tab,
            digamma,
            stirling,
            half_ln_2pi,
            s_series: OnceLock::new(),
        };
        let cutoff = cfg.shift_cutoff.to_f64().unwrap_or(20.0);
        Ok(Engine { cfg, cutoff, tables: Arc::new(tables) })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    /// The shift cutoff as a double.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Enclosure of `½ ln(2π)`.
    pub fn half_ln_2pi(&self) -> Interval {
        self.tables.half_ln_2pi
    }

    fn check_arg(&self, x: &Interval) -> Result<()> {
        if !(x.lo() > 0.0) || !x.hi().is_finite() {
            return Err(domain(format!("polygamma argument {x:?} must lie in (0, ∞)")));
        }
        Ok(())
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.cfg.max_order {
            return Err(Error::Config(format!(
                "polygamma order {n} exceeds the configured maximum {}",
                self.cfg.max_order
            )));
        }
        Ok(())
    }

    fn shift_count(&self, x: f64) -> usize {
        if x >= self.cutoff {
            0
        } else {
            (self.cutoff - x).ceil() as usize
        }
    }

    /// Enclosure of ψ⁽ⁿ⁾ on `x`.
    pub fn polygamma(&self, n: usize, x: &Interval) -> Result<Interval> {
        self.check_arg(x)?;
        self.check_order(n)?;
        if x.is_point() {
            return self.polygamma_point(n, x.lo());
        }
        // ψ⁽ⁿ⁾ is monotone on (0, ∞) for every n.
        let a = self.polygamma_point(n, x.lo())?;
        let b = self.polygamma_point(n, x.hi())?;
        Ok(a.hull(&b))
    }

    fn polygamma_point(&self, n: usize, x: f64) -> Result<Interval> {
        let m = self.shift_count(x);
        let xi = Interval::point(x);
        let z = xi + Interval::from_int(m as i64);
        let mut corr = Interval::ZERO;
        for k in 0..m {
            let y = (xi + Interval::from_int(k as i64)).recip()?;
            corr = corr + y.pow_int(n as i32 + 1)?;
        }
        let base = if n == 0 {
            z.ln()? + self.digamma_tail(&z)?
        } else {
            self.polygamma_series(n, &z)?
        };
        let f = self.tables.factorial[n];
        let corr = if n % 2 == 0 { f * corr } else { -(f * corr) };
        Ok(base - corr)
    }

    /// Asymptotic series for ψ⁽ⁿ⁾(z), n ≥ 1, at `z` (no shifting).
    fn polygamma_series(&self, n: usize, z: &Interval) -> Result<Interval> {
        let w = z.recip()?;
        let w2 = w.sqr();
        let wn = w.pow_int(n as i32)?;
        let (l0, l1) = self.tables.lead[n];
        let head = l0 * wn + l1 * wn * w;
        let mut p = wn * w2;
        let mut sum = Interval::ZERO;
        let mut rem = 0.0;
        let row = &self.tables.pg[n];
        for (k, c) in row.iter().enumerate() {
            let term = *c * p;
            if k + 1 == row.len() || tiny_relative(&term, &head) {
                rem = term.mag();
                break;
            }
            sum = sum + term;
            p = p * w2;
        }
        Ok(head + sum + Interval::new(-rem, rem))
    }

    /// `ψ(z) − ln z` for `z` at or above [`SERIES_FROM`].
    pub fn digamma_tail(&self, z: &Interval) -> Result<Interval> {
        if !(z.lo() >= SERIES_FROM) {
            return Err(domain(format!("digamma_tail needs z ≥ {SERIES_FROM}, got {z:?}")));
        }
        let w = z.recip()?;
        let w2 = w.sqr();
        let head = -w.scale(0.5);
        let mut p = w2;
        let mut sum = Interval::ZERO;
        let mut rem = 0.0;
        let row = &self.tables.digamma;
        for (k, c) in row.iter().enumerate() {
            let term = *c * p;
            if k + 1 == row.len() || tiny_relative(&term, &head) {
                rem = term.mag();
                break;
            }
            sum = sum - term;
            p = p * w2;
        }
        Ok(head + sum + Interval::new(-rem, rem))
    }

    /// `ln Γ(z) − [(z − ½) ln z − z + ½ ln 2π]` for `z` at or above
    /// [`SERIES_FROM`].
    pub fn lngamma_tail(&self, z: &Interval) -> Result<Interval> {
        if !(z.lo() >= SERIES_FROM) {
            return Err(domain(format!("lngamma_tail needs z ≥ {SERIES_FROM}, got {z:?}")));
        }
        let w = z.recip()?;
        let w2 = w.sqr();
        let mut p = w;
        let mut sum = Interval::ZERO;
        let mut rem = 0.0;
        let row = &self.tables.stirling;
        let scale = row[0] * w;
        for (k, c) in row.iter().enumerate() {
            let term = *c * p;
            if k + 1 == row.len() || (k > 0 && tiny_relative(&term, &scale)) {
                rem = term.mag();
                break;
            }
            sum = sum + term;
            p = p * w2;
        }
        Ok(sum + Interval::new(-rem, rem))
    }

    /// Enclosure of ln Γ on `x`.
    pub fn ln_gamma(&self, x: &Interval) -> Result<Interval> {
        self.check_arg(x)?;
        let m = self.shift_count(x.lo());
        let z = *x + Interval::from_int(m as i64);
        let half = Interval::point(0.5);
        let stirling = (z - half) * z.ln()? - z + self.tables.half_ln_2pi + self.lngamma_tail(&z)?;
        if m == 0 {
            return Ok(stirling);
        }
        let mut prod = Interval::ONE;
        for k in 0..m {
            prod = prod * (*x + Interval::from_int(k as i64));
        }
        Ok(stirling - prod.ln()?)
    }

    /// Enclosure of `S(x) = [ψ′(x)]² + ψ″(x)`.
    ///
    /// Below `x = 1` the shifted form `a² + b + 2a/x² + (1 − 2x)/x⁴`
    /// with `a = ψ′(x+1)`, `b = ψ″(x+1)` is also evaluated; from
    /// [`SERIES_FROM`] on, the exact series polynomial of [`SSeries`] is
    /// used. Every applicable route is intersected with the direct one.
    pub fn s_combo(&self, x: &Interval) -> Result<Interval> {
        self.check_arg(x)?;
        let direct = self.polygamma(1, x)?.sqr() + self.polygamma(2, x)?;
        let mut out = direct;
        if x.hi() < 1.0 {
            let one = Interval::ONE;
            let a = self.polygamma(1, &(*x + one))?;
            let b = self.polygamma(2, &(*x + one))?;
            let (r2, r4) = if x.is_point() {
                let q = BigRational::from_float(x.lo()).expect("finite");
                let q2 = &q * &q;
                let r2 = rat_int(2) / &q2;
                let r4 = (BigRational::one() - rat_int(2) * &q) / (&q2 * &q2);
                (Interval::from_rational(&r2), Interval::from_rational(&r4))
            } else {
                let x2 = x.sqr();
                (Interval::from_int(2).div(&x2)?, (one - x.scale(2.0)).div(&x2.sqr())?)
            };
            let shifted = a.sqr() + b + a * r2 + r4;
            out = intersect(&out, &shifted, "s_combo shifted route")?;
        }
        if x.lo() >= SERIES_FROM {
            let w = x.recip()?;
            out = intersect(&out, &self.s_series().eval_s(&w)?, "s_combo series route")?;
        }
        Ok(out)
    }

    /// Enclosure of `λ(x) = (12x⁴(x+1)² S(x) − x² − 12)/x`.
    ///
    /// Always evaluated through the cancellation-free rearrangement
    /// `−37x − 24x² + 24a(x+1)²x + 12(a² + b)(x+1)²x³` with
    /// `a = ψ′(x+1)`, `b = ψ″(x+1)`; for `x ≥ 1` the direct quotient and,
    /// from [`SERIES_FROM`] on, the exact series polynomial are intersected
    /// with it.
    pub fn lambda_profile(&self, x: &Interval) -> Result<Interval> {
        self.check_arg(x)?;
        let one = Interval::ONE;
        let x1 = *x + one;
        let a = self.polygamma(1, &x1)?;
        let b = self.polygamma(2, &x1)?;
        let x1sq = x1.sqr();
        let shifted = x.scale(-37.0) - x.sqr().scale(24.0)
            + (a * x1sq * *x).scale(24.0)
            + ((a.sqr() + b) * x1sq * x.pow_int(3)?).scale(12.0);
        let mut out = shifted;
        if x.lo() >= 1.0 {
            let s = self.s_combo(x)?;
            let x4 = x.pow_int(4)?;
            let num = (x4 * x1sq * s).scale(12.0) - x.sqr() - Interval::from_int(12);
            out = intersect(&out, &num.div(x)?, "lambda_profile direct route")?;
        }
        if x.lo() >= SERIES_FROM {
            let w = x.recip()?;
            out = intersect(&out, &self.s_series().eval_lambda(&w)?, "lambda_profile series route")?;
        }
        Ok(out)
    }

    /// Exact truncated series for `S` and `λ` in `w = 1/x`, built on first
    /// use.
    pub fn s_series(&self) -> &SSeries {
        self.tables.s_series.get_or_init(|| SSeries::new(self.cfg.series_terms))
    }
}

fn intersect(a: &Interval, b: &Interval, what: &str) -> Result<Interval> {
    a.intersect(b)
        .ok_or_else(|| Error::Inconsistent(format!("{what}: {a:?} and {b:?} are disjoint")))
}

/// Truncated asymptotic series of `S = [ψ′]² + ψ″` and of the λ-profile, as
/// exact polynomials in `w = 1/x`.
///
/// With `A`, `B` the ψ′ and ψ″ series truncated before the `K`-th Bernoulli
/// term and `ρ₁`, `ρ₂` their first omitted terms,
/// `S ∈ A² + B ± (2|A|ρ₁ + ρ₁² + ρ₂)`.
#[derive(Clone, Debug)]
pub struct SSeries {
    terms: usize,
    a: Polynomial,
    /// `(A² + B)/w⁴`
    t: Polynomial,
    /// `(12(1+w)² t − 1 − 12w²)/w`
    lambda: Polynomial,
    rho1: BigRational,
    rho2: BigRational,
}

impl SSeries {
    fn new(k: usize) -> Self {
        let bern = |j: usize| bernoulli(2 * j).expect("within table");
        let mut a = vec![BigRational::zero(); 2 * k + 1];
        let mut b = vec![BigRational::zero(); 2 * k + 2];
        a[1] = BigRational::one();
        a[2] = rat(1, 2);
        b[2] = -BigRational::one();
        b[3] = -BigRational::one();
        for j in 1..k {
            a[2 * j + 1] = bern(j);
            b[2 * j + 2] = -(rat_int(2 * j as i64 + 1) * bern(j));
        }
        let a = Polynomial::new(a);
        let b = Polynomial::new(b);
        let s = &(&a * &a) + &b;
        assert!((0..4).all(|i| s.coeff(i).is_zero()), "S series must start at w^4");
        let t = Polynomial::new(s.coeffs()[4..].to_vec());
        let one_w = Polynomial::from_ints(&[1, 1]);
        let num = &(&(&one_w * &one_w) * &t).scale(&rat_int(12)) - &Polynomial::from_ints(&[1, 0, 12]);
        assert!(num.coeff(0).is_zero(), "λ series numerator must vanish at w = 0");
        let lambda = Polynomial::new(num.coeffs()[1..].to_vec());
        let bk = bern(k).abs();
        let rho1 = bk.clone();
        let rho2 = rat_int(2 * k as i64 + 1) * bk;
        SSeries { terms: k, a, t, lambda, rho1, rho2 }
    }

    /// Number of Bernoulli terms, counting the remainder term.
    pub fn terms(&self) -> usize {
        self.terms
    }

    /// `(A² + B)/w⁴` as an exact polynomial.
    pub fn s_over_w4(&self) -> &Polynomial {
        &self.t
    }

    /// The truncated λ-profile polynomial in `w`.
    pub fn lambda_poly(&self) -> &Polynomial {
        &self.lambda
    }

    fn s_error(&self, w: &Interval) -> Result<Interval> {
        let k = self.terms as i32;
        let wh = Interval::point(w.hi());
        let r1 = Interval::from(&self.rho1) * wh.pow_int(2 * k + 1)?;
        let r2 = Interval::from(&self.rho2) * wh.pow_int(2 * k + 2)?;
        let av = self.a.eval_interval(&wh).abs();
        let e = (av * r1).scale(2.0) + r1.sqr() + r2;
        Ok(Interval::point(e.hi()))
    }

    /// Enclosure of `S(1/w)` for `w ≤ 1/10`.
    pub fn eval_s(&self, w: &Interval) -> Result<Interval> {
        if !(w.lo() > 0.0 && w.hi() <= 1.0 / SERIES_FROM) {
            return Err(domain(format!("S series needs 0 < w ≤ 1/{SERIES_FROM}, got {w:?}")));
        }
        let e = self.s_error(w)?.hi();
        Ok(w.pow_int(4)? * self.t.eval_interval(w) + Interval::new(-e, e))
    }

    /// Enclosure of `λ(1/w)` for `w ≤ 1/10`.
    pub fn eval_lambda(&self, w: &Interval) -> Result<Interval> {
        if !(w.lo() > 0.0 && w.hi() <= 1.0 / SERIES_FROM) {
            return Err(domain(format!("λ series needs 0 < w ≤ 1/{SERIES_FROM}, got {w:?}")));
        }
        let e = self.s_error(w)?;
        let one_w = Interval::ONE + *w;
        let bound = (one_w.sqr() * e).scale(12.0).div(&w.pow_int(5)?)?;
        let r = bound.hi();
        Ok(self.lambda.eval_interval(w) + Interval::new(-r, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> Engine {
        Engine::default()
    }

    /// `Σ_{k≥0} (x+k)^{-s}` enclosed by integral tail bounds after `terms` terms.
    fn hurwitz_oracle(s: i32, x: f64, terms: usize) -> Interval {
        let xi = Interval::point(x);
        let mut sum = Interval::ZERO;
        for k in 0..terms {
            sum = sum + (xi + Interval::from_int(k as i64)).pow_int(-s).unwrap();
        }
        // ∫_N^∞ (x+t)^{-s} dt ≤ tail ≤ ∫_{N-1}^∞ (x+t)^{-s} dt
        let n = Interval::from_int(terms as i64);
        let lo = (xi + n).pow_int(1 - s).unwrap().div(&Interval::from_int(s as i64 - 1)).unwrap();
        let hi = (xi + n - Interval::ONE).pow_int(1 - s).unwrap().div(&Interval::from_int(s as i64 - 1)).unwrap();
        sum + Interval::new(lo.lo(), hi.hi())
    }

    #[test]
    fn trigamma_and_tetragamma_at_one() {
        let e = engine();
        let p1 = e.polygamma(1, &Interval::ONE).unwrap();
        assert!(p1.contains(1.644_934_066_848_226_4));
        assert!(p1.rel_width() <= 1e-12);
        let p2 = e.polygamma(2, &Interval::ONE).unwrap();
        assert!(p2.lo() <= -2.404_113_806_319_188 && -2.404_113_806_319_189 <= p2.hi());
        let diff = p1 - e.polygamma(1, &Interval::point(2.0)).unwrap();
        assert!(diff.contains(1.0));
    }

    #[test]
    fn digamma_at_one_is_minus_euler_gamma() {
        let e = engine();
        let p0 = e.polygamma(0, &Interval::ONE).unwrap();
        assert!(p0.lo() <= -0.577_215_664_901_532_8 && -0.577_215_664_901_532_9 <= p0.hi());
    }

    #[test]
    fn contains_series_oracle() {
        let e = engine();
        for &x in &[0.001, 0.3, 1.0, 2.5, 7.0, 19.5, 33.0] {
            for n in 1..=6usize {
                let fact: f64 = (1..=n).map(|k| k as f64).product();
                let h = hurwitz_oracle(n as i32 + 1, x, 20_000).scale(fact);
                let oracle = if n % 2 == 1 { h } else { -h };
                let got = e.polygamma(n, &Interval::point(x)).unwrap();
                assert!(got.overlaps(&oracle), "n={n} x={x}: {got:?} vs {oracle:?}");
                assert!(got.rel_width() <= 1e-12, "n={n} x={x} width {}", got.rel_width());
            }
        }
    }

    #[test]
    fn listed_asymptotic_coefficients_are_generated() {
        let s = SSeries::new(10);
        let a = &s.a;
        for (i, v) in [(1, rat(1, 1)), (2, rat(1, 2)), (3, rat(1, 6)), (5, rat(-1, 30)), (7, rat(1, 42)), (9, rat(-1, 30))] {
            assert_eq!(a.coeff(i), v, "ψ′ coefficient of w^{i}");
        }
        assert!(a.coeff(4).is_zero() && a.coeff(6).is_zero());
        let lp = s.lambda_poly();
        assert_eq!(lp.coeff(0), rat_int(4));
        assert_eq!(lp.coeff(1), rat(-82, 15));
        assert_eq!(lp.coeff(2), rat(14, 3));
        assert_eq!(lp.coeff(3), rat(-29, 35));
    }

    #[test]
    fn ln_gamma_examples() {
        let e = engine();
        assert!(e.ln_gamma(&Interval::ONE).unwrap().contains(0.0));
        assert!(e.ln_gamma(&Interval::point(2.0)).unwrap().contains(0.0));
        let half = e.ln_gamma(&Interval::point(0.5)).unwrap();
        assert!(half.lo() <= 0.572_364_942_924_700_1 && 0.572_364_942_924_700_0 <= half.hi());
        // ln Γ(30) = ln 29!
        let big = e.ln_gamma(&Interval::point(30.0)).unwrap();
        let fact29: f64 = (1..=29).map(|k| (k as f64).ln()).sum();
        assert!((big.mid() - fact29).abs() < 1e-12);
    }

    #[test]
    fn s_combo_examples() {
        let e = engine();
        let s1 = e.s_combo(&Interval::ONE).unwrap();
        assert!(s1.lo() <= 0.301_694_277_958_657 && 0.301_694_277_958_656 <= s1.hi());
        let s2 = e.s_combo(&Interval::point(2.0)).unwrap();
        assert!((s2.mid() - 0.011_826_144_262_204_035).abs() < 1e-15);
        for x in [1e-3, 0.5, 12.0, 1e3] {
            assert!(e.s_combo(&Interval::point(x)).unwrap().is_positive());
        }
    }

    #[test]
    fn lambda_profile_values() {
        let e = engine();
        let l1 = e.lambda_profile(&Interval::ONE).unwrap();
        assert!((l1.mid() - 1.481_325_342_015_531_6).abs() < 1e-12);
        let l_small = e.lambda_profile(&Interval::point(1e-4)).unwrap();
        assert!((l_small.mid() - 2.478_143_471_017_6e-4).abs() < 1e-15);
        let l_big = e.lambda_profile(&Interval::point(1e4)).unwrap();
        assert!((l_big.mid() - 3.999_453_379_999_171).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let e = engine();
        assert!(matches!(e.polygamma(1, &Interval::new(0.0, 1.0)), Err(Error::Domain(_))));
        assert!(matches!(e.polygamma(40, &Interval::ONE), Err(Error::Config(_))));
        let bad = EngineConfig { shift_cutoff: rat_int(5), ..EngineConfig::default() };
        assert!(Engine::new(bad).is_err());
        let bad = EngineConfig { series_terms: 41, ..EngineConfig::default() };
        assert!(Engine::new(bad).is_err());
    }
}
