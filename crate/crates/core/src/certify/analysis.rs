use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::quad::{integrate, QuadResult};
use super::report::{Check, Report, Status, Witness};
use super::Routes;
use crate::error::{domain, Result};
use crate::expr::ClosedForm;
use crate::numeric::{rat, rat_int, to_f64_nearest, BigRational, GridSpec, Interval};
use crate::paperlib::{build_kernel, f_lambda, h_lambda, FForm};
use crate::polyalg::{ExpPoly, Polynomial, RationalFunction};
use crate::polygamma::Engine;

fn two_over_x2() -> ClosedForm {
    ClosedForm::rational(RationalFunction::inverse_power(rat_int(2), &rat_int(0), 2))
}

/// `f_λ(x) − f_λ(x+1) − (2/x²) h_λ(x)` as a closed form.
pub fn difference_residual(lambda: &BigRational) -> ClosedForm {
    let f = f_lambda(lambda, FForm::Direct);
    &(&f - &f.translate(&rat_int(1))) - &(&two_over_x2() * &h_lambda(lambda))
}

pub const DIFFERENCE_TOL: f64 = 1e-10;

/// The difference identity: exactly, after moving every polygamma to a
/// common shift, and numerically on the grid.
pub fn verify_difference_identity(lambda: &BigRational, grid: &GridSpec, engine: &Engine) -> Result<Report> {
    let f = f_lambda(lambda, FForm::Direct);
    let h = h_lambda(lambda);
    let exact = &(&f.rewrite_shift() - &f.translate(&rat_int(1))) - &(&two_over_x2() * &h.rewrite_shift());
    let mut r = Report::new();
    let s = Status::from_bool(exact.is_zero());
    r.push(
        Check::new(format!("difference/lambda={lambda}/exact"), s)
            .with_witness(Witness::exact("residual at common shift", &exact, s)),
    );
    let routes = Routes::new(&difference_residual(lambda));
    let ws = grid
        .points()
        .into_iter()
        .map(|x| {
            let v = routes.eval(&Interval::point(x), engine)?;
            let st = if v.mag() < DIFFERENCE_TOL {
                Status::Pass
            } else if v.abs().lo() >= DIFFERENCE_TOL {
                Status::Fail
            } else {
                Status::Indeterminate
            };
            Ok(Witness::enclosure("residual", Some(x), None, &v, st))
        })
        .collect::<Result<Vec<_>>>()?;
    r.push(
        Check::from_witnesses(format!("difference/lambda={lambda}/grid"), ws)
            .with_detail(format!("|residual| < {DIFFERENCE_TOL:e}")),
    );
    Ok(r)
}

/// Partial sums `Σ_{k<K} 2h_λ(x+k)/(x+k)²` for `K = 1..=max_k`.
pub fn telescope_sums(lambda: &BigRational, x: &BigRational, max_k: usize, engine: &Engine) -> Result<Vec<Interval>> {
    if !x.is_positive() || max_k == 0 {
        return Err(domain("telescope needs x > 0 and K ≥ 1"));
    }
    let term = Routes::new(&(&two_over_x2() * &h_lambda(lambda)));
    let mut acc = Interval::ZERO;
    let mut out = Vec::with_capacity(max_k);
    for k in 0..max_k {
        let z = x + rat_int(k as i64);
        acc = acc + term.eval(&Interval::from_rational(&z), engine)?;
        out.push(acc);
    }
    Ok(out)
}

pub fn telescope(lambda: &BigRational, x: &BigRational, k: usize, engine: &Engine) -> Result<Interval> {
    Ok(*telescope_sums(lambda, x, k, engine)?.last().expect("k ≥ 1"))
}

/// Telescoping reconstruction of `f_λ(x)`, its distance from the direct
/// enclosure and, for λ ≤ 0, monotonicity of the partial sums.
pub fn verify_telescope(lambda: &BigRational, x: &BigRational, k: usize, tol: f64, engine: &Engine) -> Result<Report> {
    let sums = telescope_sums(lambda, x, k, engine)?;
    let last = *sums.last().expect("k ≥ 1");
    let f = Routes::new(&f_lambda(lambda, FForm::Direct)).eval(&Interval::from_rational(x), engine)?;
    let dist = (last - f).abs();
    let mut r = Report::new();
    let s = Status::from_bool(dist.hi() < tol);
    r.push(
        Check::new(format!("telescope/lambda={lambda}/x={x}/K={k}"), s)
            .with_witness(Witness::enclosure("partial sum", None, Some(k), &last, s))
            .with_witness(Witness::enclosure("f(x)", None, None, &f, s))
            .with_detail(format!("|sum − f| < {tol:e}")),
    );
    if !lambda.is_positive() {
        let ws: Vec<Witness> = sums
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let d = w[1] - w[0];
                let st = if d.lo() >= 0.0 { Status::Pass } else if d.hi() < 0.0 { Status::Fail } else { Status::Indeterminate };
                Witness::enclosure("S_{K+1} − S_K", None, Some(i + 1), &d, st)
            })
            .collect();
        r.push(Check::from_witnesses(format!("telescope/lambda={lambda}/x={x}/nondecreasing"), ws));
    }
    Ok(r)
}

/// `f64` evaluator of `Σ_j e^{jt} p_j(t)` with a Maclaurin route for small `t`.
struct FastExp {
    terms: Vec<(f64, Vec<f64>)>,
    series: Vec<f64>,
    valuation: i32,
}

const FAST_SERIES_BELOW: f64 = 0.5;

impl FastExp {
    fn new(e: &ExpPoly) -> Self {
        let f = |q: &BigRational| to_f64_nearest(q);
        let terms = e.terms().map(|(j, p)| (j as f64, p.coeffs().iter().map(f).collect())).collect();
        let valuation = e.valuation(20).unwrap_or(0);
        let series = (valuation..valuation + 40).map(|m| f(&e.taylor_coeff(m))).collect();
        FastExp { terms, series, valuation: valuation as i32 }
    }

    fn horner(c: &[f64], t: f64) -> f64 {
        c.iter().rev().fold(0.0, |a, &k| a * t + k)
    }

    /// `E(t) / t^valuation`.
    fn scaled(&self, t: f64) -> f64 {
        if t < FAST_SERIES_BELOW {
            Self::horner(&self.series, t)
        } else {
            self.terms.iter().map(|(j, p)| (j * t).exp() * Self::horner(p, t)).sum::<f64>() / t.powi(self.valuation)
        }
    }
}

/// Laplace integrand `(4Pnum/(e^t−1) − λQ) e^{−(x+2)t} / 48` in `f64`.
pub struct LaplaceIntegrand {
    pnum: FastExp,
    q: FastExp,
    lambda: f64,
}

impl LaplaceIntegrand {
    pub fn new(lambda: &BigRational) -> Self {
        let k = build_kernel();
        LaplaceIntegrand { pnum: FastExp::new(&k.pnum), q: FastExp::new(&k.q), lambda: to_f64_nearest(lambda) }
    }

    pub fn eval(&self, t: f64, x: f64) -> f64 {
        // Pnum/(e^t − 1) = (Pnum/t^v) · t^{v−1} / ((e^t − 1)/t)
        let em1_over_t = t.exp_m1() / t;
        let p = self.pnum.scaled(t) * t.powi(self.pnum.valuation - 1) / em1_over_t;
        let q = self.q.scaled(t) * t.powi(self.q.valuation);
        (4.0 * p - self.lambda * q) * (-(x + 2.0) * t).exp() / 48.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LaplaceOutcome {
    pub x: f64,
    pub quadrature: f64,
    pub quad_error: f64,
    pub head_bound: f64,
    pub tail_bound: f64,
    pub upper_limit: f64,
    pub closed_lo: f64,
    pub closed_hi: f64,
}

pub const LAPLACE_DELTA: f64 = 1e-3;

/// Quadrature of the Laplace representation of `h_λ` at one `x`.
pub fn laplace_quadrature(lambda: &BigRational, x: f64, tol: f64) -> Result<(QuadResult, f64, f64, f64)> {
    if !(x > 0.0) {
        return Err(domain("Laplace check needs x > 0"));
    }
    let g = LaplaceIntegrand::new(lambda);
    let c = (4.0 + lambda.abs().to_f64().unwrap_or(f64::INFINITY)) / 48.0;
    // tail: c·∫_T^∞ 3e^{2t}e^{−(x+2)t} dt = 3c e^{−xT}/x < tol/4
    let big_t = ((3.0 * c / (x * tol / 4.0)).ln() / x).max(6.0);
    let tail = 3.0 * c * (-x * big_t).exp() / x;
    // head: |integrand| ≤ c·Q(t) ≤ c·Q(δ) on [0, δ]
    let q = build_kernel().q;
    let q_delta = q.eval(&Interval::point(LAPLACE_DELTA)).hi().max(0.0);
    let head = c * q_delta * LAPLACE_DELTA;
    let res = integrate(|t| g.eval(t, x), LAPLACE_DELTA, big_t, tol / 4.0, 4000);
    Ok((res, head, tail, big_t))
}

pub fn verify_laplace(lambda: &BigRational, xs: &[BigRational], tol: f64, engine: &Engine) -> Result<(Report, Vec<LaplaceOutcome>)> {
    let h = Routes::new(&h_lambda(lambda));
    let mut r = Report::new();
    let mut outcomes = Vec::new();
    for xq in xs {
        let x = to_f64_nearest(xq);
        let closed = h.eval(&Interval::from_rational(xq), engine)?;
        let (res, head, tail, big_t) = laplace_quadrature(lambda, x, tol)?;
        let budget = res.error + head + tail;
        let diff = (closed - Interval::point(res.value)).abs();
        let status = if !res.converged {
            Status::Fail
        } else if diff.hi() + budget <= tol {
            Status::Pass
        } else if diff.lo() > tol {
            Status::Fail
        } else {
            Status::Indeterminate
        };
        let detail = format!(
            "quadrature {:.15e} on [{LAPLACE_DELTA:e}, {big_t:.3}] ({} panels), error estimate {:.2e}, head {:.2e}, tail {:.2e}",
            res.value, res.panels, res.error, head, tail
        );
        r.push(
            Check::new(format!("laplace/lambda={lambda}/x={xq}"), status)
                .with_witness(Witness::enclosure("h_lambda(x)", Some(x), None, &closed, status))
                .with_witness(Witness::enclosure("|quadrature − h|", Some(x), None, &diff, status))
                .with_detail(detail),
        );
        outcomes.push(LaplaceOutcome {
            x,
            quadrature: res.value,
            quad_error: res.error,
            head_bound: head,
            tail_bound: tail,
            upper_limit: big_t,
            closed_lo: closed.lo(),
            closed_hi: closed.hi(),
        });
    }
    Ok((r, outcomes))
}

/// λ(x) on the grid through the engine's cancellation-safe routes.
pub fn lambda_profile(grid: &GridSpec, engine: &Engine) -> Result<Vec<(f64, Interval)>> {
    grid.points().into_iter().map(|x| Ok((x, engine.lambda_profile(&Interval::point(x))?))).collect()
}

/// Profile membership in `(0, 4)` plus the endpoint trends and the value at 1.
pub fn verify_lambda_profile(grid: &GridSpec, engine: &Engine) -> Result<Report> {
    let mut r = Report::new();
    let ws = lambda_profile(grid, engine)?
        .into_iter()
        .map(|(x, v)| {
            let s = if v.lo() > 0.0 && v.hi() < 4.0 {
                Status::Pass
            } else if v.hi() <= 0.0 || v.lo() >= 4.0 {
                Status::Fail
            } else {
                Status::Indeterminate
            };
            Witness::enclosure("lambda(x)", Some(x), None, &v, s)
        })
        .collect();
    r.push(Check::from_witnesses("profile/in-(0,4)", ws));
    let at = |x: f64| engine.lambda_profile(&Interval::point(x));
    let small = at(1e-4)?;
    let s = Status::from_bool(small.hi() < 1e-3);
    r.push(Check::new("profile/near-zero", s).with_witness(Witness::enclosure("lambda(1e-4)", Some(1e-4), None, &small, s)));
    let large = at(1e4)?;
    let s = Status::from_bool(large.lo() > 3.999);
    r.push(Check::new("profile/near-infinity", s).with_witness(Witness::enclosure("lambda(1e4)", Some(1e4), None, &large, s)));
    let one = at(1.0)?;
    let oracle = engine.s_combo(&Interval::ONE)? * Interval::from_int(48) - Interval::from_int(13);
    let d = (one - oracle).abs();
    let s = Status::from_bool(d.hi() < 1e-9);
    r.push(
        Check::new("profile/at-one", s)
            .with_witness(Witness::enclosure("lambda(1)", Some(1.0), None, &one, s))
            .with_witness(Witness::enclosure("48 S(1) − 13", Some(1.0), None, &oracle, s)),
    );
    Ok(r)
}

/// `4 − 82/(15x) + 14/(3x²) − 29/(35x³)`.
pub fn asymptotic_model() -> RationalFunction {
    // (4·105x³ − 574x² + 490x − 87) / (105x³)
    RationalFunction::new(Polynomial::from_ints(&[-87, 490, -574, 420]), Polynomial::monomial(rat_int(105), 3))
}

/// `|λ(x) − model(x)|·x⁴` at each `x`; passes when max/min ≤ 2.
pub fn asymptotic_check(xs: &[BigRational], engine: &Engine) -> Result<Report> {
    if xs.iter().any(|x| *x < rat_int(10)) {
        return Err(domain("asymptotic check needs x ≥ 10"));
    }
    let model = asymptotic_model();
    let mut scaled = Vec::new();
    let mut ws = Vec::new();
    for xq in xs {
        let xi = Interval::from_rational(xq);
        let m = Interval::from_rational(&model.eval(xq)?);
        let resid = engine.lambda_profile(&xi)? - m;
        let s = resid.abs() * xi.pow_int(4)?;
        ws.push(Witness::enclosure("|r(x)|·x⁴", Some(to_f64_nearest(xq)), None, &s, Status::Pass));
        scaled.push(s);
    }
    let hi = scaled.iter().map(|s| s.hi()).fold(0.0, f64::max);
    let lo = scaled.iter().map(|s| s.lo()).fold(f64::INFINITY, f64::min);
    let status = if lo > 0.0 && hi <= 2.0 * lo {
        Status::Pass
    } else if scaled.iter().any(|s| s.lo() > 2.0 * scaled.iter().map(|t| t.hi()).fold(f64::INFINITY, f64::min)) {
        Status::Fail
    } else {
        Status::Indeterminate
    };
    for w in &mut ws {
        w.status = status;
    }
    let mut r = Report::new();
    let mut c = Check::from_witnesses("asymptotic/x^-4-residual", ws).with_detail(format!("max/min ratio {:.4}", hi / lo));
    c.status = status;
    r.push(c);
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    NearZero,
    NearInfinity,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::NearZero => "near-zero",
            Direction::NearInfinity => "near-infinity",
        })
    }
}

pub const SHARPNESS_STEPS: usize = 60;

/// Halves (near zero) or doubles (near infinity) `x` from 1 until the
/// enclosure of `f_λ(x)` is strictly negative, respectively positive.
pub fn sharpness_probe(lambda: &BigRational, dir: Direction, engine: &Engine) -> Result<Option<(f64, Interval)>> {
    match dir {
        Direction::NearZero if !lambda.is_positive() => return Err(domain("near-zero probe needs λ > 0")),
        Direction::NearInfinity if *lambda >= rat_int(4) => return Err(domain("near-infinity probe needs λ < 4")),
        _ => {}
    }
    let routes = Routes::new(&f_lambda(lambda, FForm::Direct));
    let mut x = 1.0f64;
    for _ in 0..=SHARPNESS_STEPS {
        let v = routes.eval(&Interval::point(x), engine)?;
        let hit = match dir {
            Direction::NearZero => v.hi() < 0.0,
            Direction::NearInfinity => v.lo() > 0.0,
        };
        if hit {
            return Ok(Some((x, v)));
        }
        x = match dir {
            Direction::NearZero => x / 2.0,
            Direction::NearInfinity => x * 2.0,
        };
    }
    Ok(None)
}

pub fn sharpness_report(lambdas: &[BigRational], engine: &Engine) -> Result<Report> {
    let mut r = Report::new();
    for l in lambdas {
        for dir in [Direction::NearZero, Direction::NearInfinity] {
            let valid = match dir {
                Direction::NearZero => l.is_positive(),
                Direction::NearInfinity => *l < rat_int(4),
            };
            if !valid {
                continue;
            }
            let name = format!("sharpness/lambda={l}/{dir}");
            r.push(match sharpness_probe(l, dir, engine)? {
                Some((x, v)) => Check::new(&name, Status::Pass).with_witness(Witness::enclosure("f_lambda(x)", Some(x), None, &v, Status::Pass)),
                None => Check::new(&name, Status::Fail).with_detail(format!("no witness within {SHARPNESS_STEPS} steps")),
            });
        }
    }
    Ok(r)
}

/// The λ values used by the default sharpness sweep.
pub fn default_sharpness_lambdas() -> Vec<BigRational> {
    vec![rat(1, 10), rat_int(1), rat_int(2), rat_int(3), rat(39, 10)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_and_telescope() {
        let e = Engine::default();
        let g = GridSpec::log(rat(1, 10), rat_int(10), 20).unwrap();
        for l in [rat_int(0), rat_int(4), rat_int(13)] {
            let r = verify_difference_identity(&l, &g, &e).unwrap();
            assert_eq!(r.status(), Status::Pass, "{:?}", r.checks);
        }
        let one = telescope(&rat_int(0), &rat_int(1), 1, &e).unwrap();
        assert!((one.mid() - 0.028_294_059_622_378_8).abs() < 1e-12);
        let r = verify_telescope(&rat_int(0), &rat_int(1), 200, 1e-6, &e).unwrap();
        assert_eq!(r.status(), Status::Pass);
    }

    #[test]
    fn laplace_examples() {
        let e = Engine::default();
        for (l, x) in [(0, 1), (4, 2), (0, 5)] {
            let (r, out) = verify_laplace(&rat_int(l), &[rat_int(x)], 1e-8, &e).unwrap();
            assert_eq!(r.status(), Status::Pass, "{:?} {:?}", r.checks, out);
        }
    }

    #[test]
    fn profile_and_asymptotics() {
        let e = Engine::default();
        let g = GridSpec::log(rat(1, 1000), rat_int(1000), 50).unwrap();
        assert_eq!(verify_lambda_profile(&g, &e).unwrap().status(), Status::Pass);
        let m = asymptotic_model();
        assert!((to_f64_nearest(&m.eval(&rat_int(10)).unwrap()) - 3.499_171_4).abs() < 1e-7);
        assert!((to_f64_nearest(&m.eval(&rat_int(100)).unwrap()) - 3.945_799_171_4).abs() < 1e-9);
        let r = asymptotic_check(&[rat_int(10), rat_int(30), rat_int(100)], &e).unwrap();
        assert_eq!(r.status(), Status::Pass, "{:?}", r.checks);
    }

    #[test]
    fn sharpness_examples() {
        let e = Engine::default();
        let (_, v) = sharpness_probe(&rat(1, 10), Direction::NearZero, &e).unwrap().unwrap();
        assert!(v.hi() < 0.0);
        let (_, v) = sharpness_probe(&rat(39, 10), Direction::NearInfinity, &e).unwrap().unwrap();
        assert!(v.lo() > 0.0);
        let (x, _) = sharpness_probe(&rat_int(4), Direction::NearZero, &e).unwrap().unwrap();
        assert_eq!(x, 1.0);
        assert!(sharpness_probe(&rat_int(0), Direction::NearZero, &e).is_err());
    }
}
