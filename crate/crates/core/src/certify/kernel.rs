use num_traits::{Signed, Zero};

use super::report::{Check, Report, Status, Witness};
use crate::error::Result;
use crate::numeric::{rat, rat_int, GridSpec, Interval};
use crate::paperlib::kernel::{
    degree7, degree7_rewrite, q_coeff_derived, q_coeff_printed, ratio_derivative_residual, theta34_quartic,
    theta34_quintic, u_poly, INITIAL_VALUES,
};
use crate::paperlib::{build_kernel, ThetaChain};
use crate::polyalg::{descartes_bound, ExpPoly, Polynomial, SeriesForm};

/// Below this `t` an exponential polynomial is enclosed through its
/// Maclaurin series divided by `t^valuation`.
const SERIES_BELOW: f64 = 2.0;
const SERIES_ORDER: usize = 60;

/// Sign-faithful evaluator of an exponential polynomial on `t > 0`.
pub struct KernelEval {
    direct: ExpPoly,
    valuation: usize,
    series: Option<SeriesForm>,
}

impl KernelEval {
    pub fn new(e: &ExpPoly) -> Result<Self> {
        let valuation = e.valuation(SERIES_ORDER / 2).unwrap_or(0);
        let series = if e.is_zero() { None } else { Some(e.series(SERIES_ORDER, valuation)?) };
        Ok(KernelEval { direct: e.clone(), valuation, series })
    }

    pub fn valuation(&self) -> usize {
        self.valuation
    }

    /// Enclosure of `E(t) / t^valuation` for `t < 2` and of `E(t)` above;
    /// both have the sign of `E(t)`.
    pub fn scaled(&self, t: f64) -> Result<Interval> {
        let ti = Interval::point(t);
        match &self.series {
            Some(s) if t < SERIES_BELOW => s.eval(&ti),
            _ => Ok(self.direct.eval(&ti)),
        }
    }

    /// Enclosure of `E(t)`.
    pub fn value(&self, t: f64) -> Result<Interval> {
        let ti = Interval::point(t);
        let direct = self.direct.eval(&ti);
        match &self.series {
            Some(s) if t < SERIES_BELOW => {
                let via = s.eval(&ti)? * ti.pow_int(self.valuation as i32)?;
                Ok(via.intersect(&direct).unwrap_or(via))
            }
            _ => Ok(direct),
        }
    }
}

/// Default sampling grid for kernel positivity on `(0, 60]`.
pub fn default_kernel_grid() -> GridSpec {
    GridSpec::log(rat(1, 1000), rat_int(60), 100).expect("valid grid")
}

fn exact_check(name: &str, ok: bool, what: impl ToString) -> Check {
    let s = Status::from_bool(ok);
    Check::new(name, s).with_witness(Witness::exact(name, what, s))
}

/// Exact identities and sampled positivity claims about `Q`, `P` and the θ-chain.
pub fn verify_kernel() -> Result<Report> {
    verify_kernel_on(&default_kernel_grid())
}

pub fn verify_kernel_on(grid: &GridSpec) -> Result<Report> {
    let k = build_kernel();
    let mut r = Report::new();

    for (a, b, ok) in k.chain.links() {
        r.push(exact_check(&format!("kernel/link/{a}->{b}"), ok, if ok { "exact" } else { "mismatch" }));
    }
    let residual = ratio_derivative_residual(&k)?;
    r.push(exact_check("kernel/ratio-derivative", residual.is_zero(), &residual));

    match ThetaChain::regenerate(&k.chain.entries()[0].body) {
        Ok(regen) => {
            let mut all = true;
            for (p, g) in k.chain.entries().iter().zip(regen.entries()) {
                if p != g {
                    all = false;
                    r.discrepancy(format!("theta-chain/{}", p.name), &p.value(), &g.value());
                }
            }
            r.push(exact_check("kernel/regenerated-chain", true, if all { "matches print" } else { "see discrepancies" }));
        }
        Err(e) => r.push(exact_check("kernel/regenerated-chain", false, e)),
    }

    let witnesses: Vec<Witness> = INITIAL_VALUES
        .iter()
        .map(|(name, v)| {
            let e = k.chain.get(name).expect("chain name").value();
            let got = e.value_at_zero();
            let s = Status::from_bool(got == rat_int(*v));
            Witness::exact(format!("{name}(0)={v}"), got, s)
        })
        .collect();
    r.push(Check::from_witnesses("kernel/initial-values", witnesses));

    // θ₃⁽⁴⁾ lower bound.
    let u = u_poly();
    let t1 = Polynomial::from_ints(&[1, 1]);
    let quintic = &(&t1 * &theta34_quartic()) - &Polynomial::from_ints(&[40]);
    r.push(exact_check("kernel/theta34/quintic", quintic == theta34_quintic(), &quintic));
    let bracket = &(&ExpPoly::from_terms([(2, u.scale(&rat_int(96)))]) + &ExpPoly::polynomial(t1.clone()).mul_poly(&theta34_quartic()))
        - &ExpPoly::term(0, &[40]);
    let lhs = bracket.scale(&rat_int(18));
    let printed_rhs = &ExpPoly::polynomial(theta34_quintic()) + &ExpPoly::from_terms([(2, u.scale(&rat_int(96)))]);
    if lhs != printed_rhs {
        r.discrepancy("theta34/lower-bound-equality", "18[96e^{2t}u + (1+t)(…) − 40] = e^{2t}[e^{−2t}(101476+…) + 96u]", "the right side equals the bracket without the factor 18");
    }
    r.push(exact_check("kernel/theta34/lower-bound-scaled", lhs == printed_rhs.scale(&rat_int(18)), &lhs));
    let two_m = Polynomial::from_ints(&[2, -1]).pow(2);
    let two_p = Polynomial::from_ints(&[2, 1]).pow(2);
    let d7 = &(&two_m * &theta34_quintic()) + &(&two_p * &u.scale(&rat_int(96)));
    r.push(exact_check("kernel/theta34/degree7", d7 == degree7(), &d7));
    r.push(exact_check("kernel/theta34/rewrite", degree7() == degree7_rewrite(), degree7_rewrite()));
    let quad = Polynomial::from_ints(&[508821, 828938, 309567]);
    let tail_ok = quad.coeffs().iter().all(|c| c.is_positive())
        && theta34_quintic().coeffs().iter().all(|c| c.is_positive())
        && rat_int(236155) - rat_int(102880) * rat_int(2) > rat_int(0);
    r.push(exact_check("kernel/theta34/positive-on-(0,2)", tail_ok, "236155 − 102880·2 = 30395"));

    // u(t) on [2, ∞): Descartes bound and shifted coefficients.
    let vars = descartes_bound(&u)?;
    let vals = [0, 1, 2].map(|t| u.eval(&rat_int(t)));
    r.push(
        exact_check("kernel/u/descartes", vars == 2, format!("{vars} sign variations"))
            .with_witness(Witness::exact("u(0), u(1), u(2)", format!("{}, {}, {}", vals[0], vals[1], vals[2]), Status::Pass)),
    );
    let shifted = u.shift(&rat_int(2));
    r.push(exact_check(
        "kernel/u/shift-certificate",
        shifted.coeffs().iter().all(|c| c.is_positive()),
        &shifted,
    ));

    // e^t ≤ (2+t)/(2−t) on [0, 2).
    let ws: Vec<Witness> = (0..100)
        .map(|i| {
            let t = rat(i, 50);
            let ti = Interval::from_rational(&t);
            let bound = Interval::from_rational(&((rat_int(2) + &t) / (rat_int(2) - &t)));
            let e = ti.exp();
            let s = if e.hi() <= bound.lo() { Status::Pass } else if e.lo() > bound.hi() { Status::Fail } else { Status::Indeterminate };
            Witness::enclosure("(2+t)/(2-t) - e^t", Some(i as f64 / 50.0), None, &(bound - e), s)
        })
        .collect();
    r.push(Check::from_witnesses("kernel/exp-bound", ws));

    // Q coefficients.
    let q_low = (0..3).all(|m| k.q.taylor_coeff(m).is_zero());
    let q_ok = (3..=40u32).all(|m| k.q.taylor_coeff(m as usize) == q_coeff_derived(m));
    r.push(exact_check(
        "kernel/q-coefficients/derived",
        q_low && q_ok,
        "Q = Σ_{k≥3} (2^{k+1} − (k² − 7k + 18))/k! t^k",
    ));
    r.push(exact_check(
        "kernel/q-coefficients/positive",
        (3..=40).all(|m| k.q.taylor_coeff(m).is_positive()),
        "k = 3..40",
    ));
    if (3..=40u32).any(|m| k.q.taylor_coeff(m as usize) != q_coeff_printed(m)) {
        r.discrepancy(
            "q-coefficients/printed",
            format!("(2^(k+1) − (k−9)(k+2))/k!, k=3: {}", q_coeff_printed(3)),
            format!("(2^(k+1) − (k²−7k+18))/k!, k=3: {}", q_coeff_derived(3)),
        );
    }

    // Sampled positivity and floors.
    let ts = grid.points();
    for e in k.chain.entries() {
        let ev = KernelEval::new(&e.value())?;
        let ws = ts
            .iter()
            .map(|&t| {
                let v = ev.scaled(t)?;
                Ok(Witness::enclosure(format!("{}(t)/t^{}", e.name, ev.valuation()), Some(t), None, &v, positive(&v)))
            })
            .collect::<Result<Vec<_>>>()?;
        r.push(Check::from_witnesses(format!("kernel/positive/{}", e.name), ws));
    }
    for (name, floor) in INITIAL_VALUES.iter().filter(|(_, v)| *v > 0) {
        let e = k.chain.get(name).expect("chain name");
        let shifted = &e.value() - &ExpPoly::term(0, &[*floor]);
        let ev = KernelEval::new(&shifted)?;
        let ws = ts
            .iter()
            .map(|&t| {
                let v = ev.scaled(t)?;
                Ok(Witness::enclosure(format!("{name}(t) - {floor}"), Some(t), None, &v, positive(&v)))
            })
            .collect::<Result<Vec<_>>>()?;
        r.push(Check::from_witnesses(format!("kernel/floor/{name}>{floor}"), ws));
    }
    Ok(r)
}

fn positive(v: &Interval) -> Status {
    if v.lo() > 0.0 {
        Status::Pass
    } else if v.hi() <= 0.0 {
        Status::Fail
    } else {
        Status::Indeterminate
    }
}

/// Enclosures of `P(t)/Q(t) = Pnum / ((e^t − 1) Q)` for `t > 0`.
pub struct RatioEval {
    num: KernelEval,
    den: KernelEval,
}

impl RatioEval {
    pub fn new() -> Result<Self> {
        let k = build_kernel();
        let em1 = &ExpPoly::term(1, &[1]) - &ExpPoly::term(0, &[1]);
        let num = KernelEval::new(&k.pnum)?;
        let den = KernelEval::new(&(&em1 * &k.q))?;
        debug_assert_eq!(num.valuation(), den.valuation());
        Ok(RatioEval { num, den })
    }

    pub fn eval(&self, t: f64) -> Result<Interval> {
        self.num.scaled(t)?.div(&self.den.scaled(t)?)
    }
}

/// `P/Q` is in `(0, 1)`, decreasing across the grid, near 1 at `t = 10⁻⁶`
/// and below `10⁻¹⁵` at `t = 60`.
pub fn verify_ratio(grid: &GridSpec) -> Result<Report> {
    let re = RatioEval::new()?;
    let ts = grid.points();
    let vals = ts.iter().map(|&t| re.eval(t)).collect::<Result<Vec<_>>>()?;
    let mut r = Report::new();
    let range: Vec<Witness> = ts
        .iter()
        .zip(&vals)
        .map(|(&t, v)| {
            let s = if v.lo() > 0.0 && v.hi() < 1.0 {
                Status::Pass
            } else if v.hi() <= 0.0 || v.lo() >= 1.0 {
                Status::Fail
            } else {
                Status::Indeterminate
            };
            Witness::enclosure("P/Q", Some(t), None, v, s)
        })
        .collect();
    r.push(Check::from_witnesses("ratio/in-(0,1)", range));
    let mono: Vec<Witness> = ts
        .windows(2)
        .zip(vals.windows(2))
        .map(|(t, v)| {
            let s = if v[0].lo() > v[1].hi() {
                Status::Pass
            } else if v[0].hi() < v[1].lo() {
                Status::Fail
            } else {
                Status::Indeterminate
            };
            Witness::enclosure("R(t_i) - R(t_{i+1})", Some(t[0]), None, &(v[0] - v[1]), s)
        })
        .collect();
    r.push(Check::from_witnesses("ratio/decreasing", mono));
    let near0 = re.eval(1e-6)?;
    let d0 = (near0 - Interval::ONE).abs();
    r.push(
        Check::new("ratio/limit-at-0", Status::from_bool(d0.hi() < 1e-3))
            .with_witness(Witness::enclosure("P/Q", Some(1e-6), None, &near0, Status::from_bool(d0.hi() < 1e-3))),
    );
    let far = re.eval(60.0)?;
    r.push(
        Check::new("ratio/limit-at-infinity", Status::from_bool(far.hi() < 1e-15))
            .with_witness(Witness::enclosure("P/Q", Some(60.0), None, &far, Status::from_bool(far.hi() < 1e-15))),
    );
    Ok(r)
}
