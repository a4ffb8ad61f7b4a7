use std::time::{Duration, Instant};

use cmcert::certify::kernel::{default_kernel_grid, RatioEval};
use cmcert::certify::{
    asymptotic_check, check_cm, classic_inequalities, cm_suites, conjecture_scan, g_family, sharpness_report,
    verify_difference_identity, verify_kernel, verify_lambda_profile, verify_laplace, verify_ratio, verify_telescope,
    Direction, Report, Routes, Sign, SuiteConfig,
};
use cmcert::numeric::{rat, rat_int, BigRational};
use cmcert::paperlib::kernel::{q_coeff_printed, INITIAL_VALUES};
use cmcert::paperlib::{
    bound_rational, build_kernel, classic_bound, conjecture_sides, f_lambda, g_limits, h_lambda, u_bound,
    ClassicBound, FForm,
};
use cmcert::{Engine, GridSpec, Interval, Status};

type Outcome = Result<String, String>;

const ZETA3: f64 = 1.202_056_903_159_594_3;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `S(1) = ψ′(1)² + ψ″(1) = π⁴/36 − 2ζ(3)`.
fn s_at_one() -> f64 {
    std::f64::consts::PI.powi(4) / 36.0 - 2.0 * ZETA3
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn all_pass(r: &Report, prefix: &str) -> Result<usize, String> {
    let cs: Vec<_> = r.matching(prefix).collect();
    ensure(!cs.is_empty(), format!("no checks under {prefix}"))?;
    for c in &cs {
        ensure(c.status == Status::Pass, format!("{} is {:?}", c.name, c.status))?;
    }
    Ok(cs.len())
}

fn cr(r: cmcert::Result<Report>) -> Result<Report, String> {
    r.map_err(|e| e.to_string())
}

fn grid() -> GridSpec {
    SuiteConfig::default().grid
}

fn kernel_identities() -> Outcome {
    let t0 = Instant::now();
    let r = cr(verify_kernel())?;
    let links = all_pass(&r, "kernel/link/")?;
    ensure(links == 18, format!("{links} chain links"))?;
    all_pass(&r, "kernel/ratio-derivative")?;
    all_pass(&r, "kernel/theta34/rewrite")?;
    all_pass(&r, "kernel/initial-values")?;

    let table: [i64; 18] = [
        0, 0, 0, 0, 0, 0, 0, 0, 0, 22960, 216160, 1188248, 5009904, 313119, 809098, 1651644, 2711964, 3352392,
    ];
    let k = build_kernel();
    for ((name, _), want) in INITIAL_VALUES.iter().zip(table) {
        let e = k.chain.get(name).ok_or(format!("missing {name}"))?;
        let got = e.value().value_at_zero();
        ensure(got == rat_int(want), format!("{name}(0) = {got}, table {want}"))?;
    }

    let mut bad = Vec::new();
    for n in 3..=40u32 {
        if k.q.taylor_coeff(n as usize) != q_coeff_printed(n) {
            bad.push(n);
        }
    }
    ensure(
        bad.is_empty(),
        format!(
            "printed Q coefficient (2^(k+1) - (k-9)(k+2))/k! differs from the expansion of Q for {} of 38 k (first k={}: {} vs {})",
            bad.len(),
            bad[0],
            q_coeff_printed(bad[0]),
            k.q.taylor_coeff(bad[0] as usize)
        ),
    )?;
    let dt = t0.elapsed();
    ensure(dt < Duration::from_secs(30), format!("took {dt:?}"))?;
    Ok(format!("{links} links, table, Q formula exact in {dt:.1?}"))
}

fn sharp_two_sided(engine: &Engine) -> Outcome {
    let r = cr(classic_inequalities(&grid(), engine))?;
    let c = r.get("classic/sharp:B0<S<B4").ok_or("missing check")?;
    ensure(c.witnesses.len() == 200, format!("{} points", c.witnesses.len()))?;
    ensure(c.status == Status::Pass, format!("{:?}", c.status))?;
    let s1 = engine.s_combo(&Interval::ONE).map_err(|e| e.to_string())?;
    ensure(s1.contains(s_at_one()) || (s1.mid() - s_at_one()).abs() < 1e-14, format!("S(1) = {s1:?}"))?;
    let b0 = bound_rational(&rat_int(0)).eval(&rat_int(1)).map_err(|e| e.to_string())?;
    let b4 = bound_rational(&rat_int(4)).eval(&rat_int(1)).map_err(|e| e.to_string())?;
    ensure(b0 == rat(13, 48) && b4 == rat(17, 48), "B0(1), B4(1)")?;
    Ok("200/200 points separated".into())
}

fn cm_two_directions(engine: &Engine) -> Outcome {
    let cfg = SuiteConfig::default();
    let r = cr(cm_suites(&cfg, engine))?;
    let mut min_lo = f64::INFINITY;
    for l in [0, 4] {
        let n = all_pass(&r, &format!("cm/f/lambda={l}/"))?;
        ensure(n == 13, format!("{n} orders for lambda={l}"))?;
    }
    for c in r.matching("cm/") {
        for w in &c.witnesses {
            ensure(w.status != Status::Indeterminate, format!("{} indeterminate at x={:?}", c.name, w.x))?;
            min_lo = min_lo.min(w.lo);
        }
    }
    ensure(min_lo > 0.0, format!("smallest lower endpoint {min_lo:e}"))?;
    let f0 = f_lambda(&rat_int(0), FForm::Direct);
    let v = Routes::new(&f0).eval(&Interval::ONE, engine).map_err(|e| e.to_string())?;
    ensure((v.mid() - (s_at_one() - 13.0 / 48.0)).abs() < 1e-13, format!("f0(1) = {v:?}"))?;
    Ok(format!("n <= 12 on 200 points, both signs, min lower endpoint {min_lo:.3e}"))
}

fn sharpness(engine: &Engine) -> Outcome {
    let ls = [rat(1, 10), rat_int(1), rat_int(2), rat_int(3), rat(39, 10)];
    let r = cr(sharpness_report(&ls, engine))?;
    for l in &ls {
        for d in [Direction::NearZero, Direction::NearInfinity] {
            all_pass(&r, &format!("sharpness/lambda={l}/{d}"))?;
        }
    }
    Ok("10/10 probes found witnesses".into())
}

fn profile(engine: &Engine) -> Outcome {
    let r = cr(verify_lambda_profile(&SuiteConfig::default().profile_grid, engine))?;
    all_pass(&r, "profile/")?;
    let at = |x: f64| engine.lambda_profile(&Interval::point(x)).map_err(|e| e.to_string());
    let (small, large, one) = (at(1e-4)?, at(1e4)?, at(1.0)?);
    ensure(small.hi() < 1e-3, format!("lambda(1e-4) = {small:?}"))?;
    ensure(large.lo() > 3.999, format!("lambda(1e4) = {large:?}"))?;
    let oracle = 48.0 * s_at_one() - 13.0;
    ensure((one.mid() - oracle).abs() < 1e-9, format!("lambda(1) = {one:?}, oracle {oracle}"))?;
    Ok(format!("lambda(1e-4) = {:.3e}, lambda(1) = {:.7}", small.mid(), one.mid()))
}

fn asymptotics(engine: &Engine) -> Outcome {
    let xs = [10.0, 30.0, 100.0];
    let r = cr(asymptotic_check(&xs.map(|x| rat_int(x as i64)), engine))?;
    all_pass(&r, "asymptotic/")?;
    let mut scaled = Vec::new();
    for x in xs {
        let model = 4.0 - 82.0 / (15.0 * x) + 14.0 / (3.0 * x * x) - 29.0 / (35.0 * x * x * x);
        let l = engine.lambda_profile(&Interval::point(x)).map_err(|e| e.to_string())?;
        scaled.push((l.mid() - model).abs() * x.powi(4));
    }
    let (mx, mn) = scaled.iter().fold((0f64, f64::INFINITY), |(a, b), &v| (a.max(v), b.min(v)));
    ensure(mx / mn <= 2.0, format!("ratio {}", mx / mn))?;
    Ok(format!("|r|x^4 = {scaled:.4?}"))
}

fn laplace(engine: &Engine) -> Outcome {
    let xs = [rat_int(1), rat_int(2), rat_int(5)];
    let mut worst = 0f64;
    for l in [0, 4] {
        let (r, outs) = verify_laplace(&rat_int(l), &xs, 1e-8, engine).map_err(|e| e.to_string())?;
        all_pass(&r, "laplace/")?;
        for (x, o) in xs.iter().zip(&outs) {
            let h = Routes::new(&h_lambda(&rat_int(l)))
                .eval(&Interval::from_rational(x), engine)
                .map_err(|e| e.to_string())?;
            let d = (h.mid() - o.quadrature).abs();
            ensure(d < 1e-8, format!("lambda={l} x={x}: {d:e}"))?;
            worst = worst.max(d);
        }
    }
    let h01 = 0.014_147_029_811_189_399;
    let h = Routes::new(&h_lambda(&rat_int(0))).eval(&Interval::ONE, engine).map_err(|e| e.to_string())?;
    ensure((h.mid() - h01).abs() < 1e-14, format!("h0(1) = {h:?}"))?;
    Ok(format!("max |closed form - quadrature| = {worst:.2e}"))
}

fn difference(engine: &Engine) -> Outcome {
    let g = SuiteConfig::default().difference_grid;
    for l in [0, 4, 13] {
        let r = cr(verify_difference_identity(&rat_int(l), &g, engine))?;
        all_pass(&r, "difference/")?;
        ensure(r.matching("difference/").map(|c| c.witnesses.len()).max() == Some(20), "20-point grid")?;
    }
    let r = cr(verify_telescope(&rat_int(0), &rat_int(1), 200, 1e-6, engine))?;
    all_pass(&r, "telescope/")?;
    let k200 = cmcert::certify::telescope(&rat_int(0), &rat_int(1), 200, engine).map_err(|e| e.to_string())?;
    let gap = (s_at_one() - 13.0 / 48.0) - k200.mid();
    ensure(gap.abs() < 1e-6, format!("f0(1) - S_200 = {gap:e}"))?;
    Ok(format!("residuals below 1e-10; f0(1) - S_200 = {gap:.3e}"))
}

/// `Σ_{k≥0} f(k)` for completely monotone `f` summed to `N` with an
/// Euler–Maclaurin tail `∫ + f/2 − f′/12 ± |f‴|/720`.
fn cm_series(sum_to: usize, f: impl Fn(&Interval) -> [Interval; 4]) -> Interval {
    let mut s = Interval::ZERO;
    for k in 0..sum_to {
        s = s + f(&Interval::from_int(k as i64))[0];
    }
    let [fv, f1, f3, int] = f(&Interval::from_int(sum_to as i64));
    let e = f3.mag() / 720.0;
    s + int + fv.scale(0.5) - f1.div(&Interval::from_int(12)).unwrap() + Interval::new(-e, e)
}

fn polygamma_oracle(n: usize, x: f64) -> Interval {
    let xi = Interval::point(x);
    let i = Interval::from_int;
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    if n == 0 {
        // ψ(x) = −γ + Σ_{k≥0} [1/(k+1) − 1/(k+x)]
        let s = cm_series(4000, |k| {
            let (a, b) = (*k + i(1), *k + xi);
            let p = |z: Interval, m: i32| z.pow_int(m).unwrap();
            [
                p(a, -1) - p(b, -1),
                p(b, -2) - p(a, -2),
                (p(b, -4) - p(a, -4)).scale(6.0),
                (b.div(&a).unwrap()).ln().unwrap(),
            ]
        });
        return s - Interval::point(EULER_GAMMA);
    }
    let m = n as i32 + 1;
    let s = cm_series(4000, |k| {
        let z = *k + xi;
        let p = |e: i32| z.pow_int(e).unwrap();
        let m_ = m as i64;
        [p(-m), -(p(-m - 1) * i(m_)), -(p(-m - 3) * i(m_ * (m_ + 1) * (m_ + 2))), p(1 - m).div(&i(m_ - 1)).unwrap()]
    });
    let v = s.scale(fact);
    if n % 2 == 1 {
        v
    } else {
        -v
    }
}

fn polygamma_engine(engine: &Engine) -> Outcome {
    let g = GridSpec::log(rat(1, 100), rat_int(100), 50).unwrap();
    let mut worst = 0f64;
    for x in g.points() {
        for n in 0..=6 {
            let got = engine.polygamma(n, &Interval::point(x)).map_err(|e| e.to_string())?;
            let oracle = polygamma_oracle(n, x);
            let tol = 1e-13 * oracle.mag() + 1e-15;
            ensure(
                got.lo() - tol <= oracle.hi() && oracle.lo() <= got.hi() + tol,
                format!("n={n} x={x}: {got:?} vs oracle {oracle:?}"),
            )?;
            ensure(got.rel_width() <= 1e-12, format!("n={n} x={x}: relative width {:e}", got.rel_width()))?;
            worst = worst.max(got.rel_width());
            // ψ⁽ⁿ⁾(x+1) − ψ⁽ⁿ⁾(x) = (−1)ⁿ n! x^{−n−1}
            let up = engine.polygamma(n, &Interval::point(x + 1.0)).map_err(|e| e.to_string())?;
            let xq = BigRational::from_float(x).unwrap();
            let fact: i64 = (1..=n as i64).product();
            let mut step = rat_int(fact) / num_traits::Pow::pow(&xq, (n + 1) as u32);
            if n % 2 == 1 {
                step = -step;
            }
            if (x + 1.0) - 1.0 == x {
                ensure((up - got).contains_rational(&step), format!("recurrence n={n} x={x}"))?;
            }
        }
    }
    Ok(format!("350 enclosures, worst relative width {worst:.2e}"))
}

fn classic(engine: &Engine) -> Outcome {
    let r = cr(classic_inequalities(&grid(), engine))?;
    let n = all_pass(&r, "classic/")?;
    let one = rat_int(1);
    let ev = |b: ClassicBound| classic_bound(b).eval(&one).unwrap();
    ensure(ev(ClassicBound::WeakUpper) == rat(1633, 2304), "weak-upper(1)")?;
    ensure(u_bound().eval(&one).unwrap() == rat(13, 24), "U(1)")?;
    ensure(bound_rational(&rat_int(4)).eval(&one).unwrap() < rat(13, 24), "B4(1) < U(1)")?;
    Ok(format!("{n} inequality checks on 200 points"))
}

fn g_lambda_family(engine: &Engine) -> Outcome {
    let r = cr(g_family(&grid(), 8, engine))?;
    all_pass(&r, "G/")?;
    for l in [0, 4] {
        let n = r.matching(&format!("G/lambda={l}/sign-pattern/")).count();
        ensure(n == 8, format!("{n} orders"))?;
        let lf = l as f64;
        let ln2 = std::f64::consts::LN_2;
        let ln2pi = (2.0 * std::f64::consts::PI).ln();
        let want0 = (488.0 * ln2 - 44.0 + lf * (1.0 - 24.0 * ln2)) / 48.0;
        let wantinf = (124.0 + 12.0 * ln2pi - 7.0 * lf) / 24.0;
        let (z, i) = g_limits(&rat_int(l)).map_err(|e| e.to_string())?;
        ensure((z.mid() - want0).abs() < 1e-13 && (i.mid() - wantinf).abs() < 1e-13, "closed-form limits")?;
    }
    Ok("displays agree, 16 sign-pattern orders, 4 limits".into())
}

fn ratio() -> Outcome {
    let g = default_kernel_grid();
    let r = cr(verify_ratio(&g))?;
    all_pass(&r, "ratio/")?;
    let re = RatioEval::new().map_err(|e| e.to_string())?;
    let vals: Vec<Interval> = g.points().iter().map(|&t| re.eval(t).unwrap()).collect();
    ensure(vals.len() == 100, "100 points")?;
    ensure(vals.windows(2).all(|w| w[0].lo() > w[1].hi()), "not decreasing")?;
    let (a, b) = (re.eval(1e-6).unwrap(), re.eval(60.0).unwrap());
    ensure((a.mid() - 1.0).abs() < 1e-3 && b.hi() < 1e-15, format!("P/Q(1e-6) = {a:?}, P/Q(60) = {b:?}"))?;
    Ok(format!("decreasing on 100 points, P/Q(60) <= {:.2e}", b.hi()))
}

fn conjecture(engine: &Engine) -> Outcome {
    let r = cr(conjecture_scan(&[rat(6, 5)], &[rat_int(1)], &grid(), engine))?;
    all_pass(&r, "conjecture/")?;
    let lo = conjecture_sides(&rat(6, 5)).unwrap().eval(&Interval::ONE).unwrap();
    let hi = conjecture_sides(&rat_int(1)).unwrap().eval(&Interval::ONE).unwrap();
    ensure(
        (lo.mid() - 0.287_772_454_341_811_2).abs() < 1e-14 && (hi.mid() - 17.0 / 48.0).abs() < 1e-15,
        format!("sides at 1: {lo:?}, {hi:?}"),
    )?;
    // a false claim yields a failing check with a located certificate
    let f2 = f_lambda(&rat_int(2), FForm::Direct);
    let cm = check_cm("f2", &f2, Sign::Plus, 0, &grid(), engine).map_err(|e| e.to_string())?;
    let v = cm.violations().next().ok_or("no violation recorded for f2")?;
    ensure(cm.status() == Status::Fail && v.hi < 0.0 && v.x > 0.0, "violation certificate")?;
    Ok(format!("exploratory pass on 200 points; f2 counterexample at x={:.3e}", v.x))
}

#[test]
fn acceptance_criteria() {
    let engine = Engine::default();
    let e = &engine;
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("kernel exact identities", Box::new(kernel_identities)),
        ("B0 < S < B4 on the grid", Box::new(|| sharp_two_sided(e))),
        ("complete monotonicity of f0 and -f4", Box::new(|| cm_two_directions(e))),
        ("necessity probes for 0 < lambda < 4", Box::new(|| sharpness(e))),
        ("lambda profile", Box::new(|| profile(e))),
        ("asymptotic model", Box::new(|| asymptotics(e))),
        ("Laplace cross-check", Box::new(|| laplace(e))),
        ("difference identity and telescoping", Box::new(|| difference(e))),
        ("polygamma engine", Box::new(|| polygamma_engine(e))),
        ("classic inequalities", Box::new(|| classic(e))),
        ("G family", Box::new(|| g_lambda_family(e))),
        ("P/Q ratio", Box::new(ratio)),
        ("conjecture scan", Box::new(|| conjecture(e))),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let out = run();
        let dt = t0.elapsed();
        match &out {
            Ok(msg) => println!("criterion {:>2} PASS  {name} ({dt:.1?}): {msg}", i + 1),
            Err(msg) => {
                println!("criterion {:>2} FAIL  {name} ({dt:.1?}): {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
