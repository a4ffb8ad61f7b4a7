use rayon::prelude::*;

use super::cm::{check_cm_orders, Sign};
use super::report::{Check, Report, Status, Witness};
use super::Routes;
use crate::error::Result;
use crate::numeric::{rat, rat_int, BigRational, GridSpec, Interval};
use crate::paperlib::{
    bound_rational, classic_bound, conjecture_sides, g0_explicit, g4_explicit, g_lambda, g_limits, psi1_bound,
    psi_bound_middle_and_bracket, u_bound, ClassicBound,
};
use crate::polyalg::RationalFunction;
use crate::polygamma::Engine;

fn exact_at(r: &RationalFunction, x: f64) -> Result<BigRational> {
    r.eval(&BigRational::from_float(x).expect("finite grid point"))
}

/// `a < b` with interval separation.
fn below(a: &Interval, b: &Interval) -> Status {
    if a.hi() < b.lo() {
        Status::Pass
    } else if a.lo() >= b.hi() {
        Status::Fail
    } else {
        Status::Indeterminate
    }
}

fn at_points(name: &str, xs: &[f64], f: impl Fn(f64) -> Result<Witness> + Sync) -> Result<Check> {
    let ws = xs.par_iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    Ok(Check::from_witnesses(name, ws))
}

/// The classical bounds of `S = [ψ′]² + ψ″`, the sharp two-sided bound,
/// the refinement claims and the ψ′ and ψ consequences, on the grid.
pub fn classic_inequalities(grid: &GridSpec, engine: &Engine) -> Result<Report> {
    let xs = grid.points();
    let s_at = |x: f64| engine.s_combo(&Interval::point(x));
    let rat_at = |r: &RationalFunction, x: f64| Ok::<_, crate::Error>(Interval::from_rational(&exact_at(r, x)?));
    let mut rep = Report::new();

    let p900 = classic_bound(ClassicBound::P900Lower);
    let weak = classic_bound(ClassicBound::WeakUpper);
    let b0 = bound_rational(&rat_int(0));
    let b4 = bound_rational(&rat_int(4));
    let u = u_bound();

    rep.push(at_points("classic/p900-lower<S", &xs, |x| {
        let (l, s) = (rat_at(&p900, x)?, s_at(x)?);
        Ok(Witness::enclosure("S - p900-lower", Some(x), None, &(s - l), below(&l, &s)))
    })?);
    rep.push(at_points("classic/S<weak-upper", &xs, |x| {
        let (s, w) = (s_at(x)?, rat_at(&weak, x)?);
        Ok(Witness::enclosure("weak-upper - S", Some(x), None, &(w - s), below(&s, &w)))
    })?);
    rep.push(at_points("classic/two-sided:B0<S<U", &xs, |x| {
        let (l, s, h) = (rat_at(&b0, x)?, s_at(x)?, rat_at(&u, x)?);
        Ok(Witness::enclosure("S", Some(x), None, &s, below(&l, &s).and(below(&s, &h))))
    })?);
    rep.push(at_points("classic/sharp:B0<S<B4", &xs, |x| {
        let (l, s, h) = (rat_at(&b0, x)?, s_at(x)?, rat_at(&b4, x)?);
        Ok(Witness::enclosure("S", Some(x), None, &s, below(&l, &s).and(below(&s, &h))))
    })?);
    for (name, upper) in [("classic/refine:B4<=U", &u), ("classic/refine:B4<=weak-upper", &weak)] {
        rep.push(at_points(name, &xs, |x| {
            let d = exact_at(upper, x)? - exact_at(&b4, x)?;
            let st = Status::from_bool(d >= rat_int(0));
            Ok(Witness::enclosure("upper - B4", Some(x), None, &Interval::from_rational(&d), st))
        })?);
    }

    for (l, want_pos) in [(rat_int(0), true), (rat_int(4), false)] {
        let routes = Routes::new(&psi1_bound(&l));
        let name = format!("classic/psi1-bound/lambda={l}/{}", if want_pos { "positive" } else { "negative" });
        rep.push(at_points(&name, &xs, |x| {
            let v = routes.eval(&Interval::point(x), engine)?;
            let st = if want_pos { below(&Interval::ZERO, &v) } else { below(&v, &Interval::ZERO) };
            Ok(Witness::enclosure("psi1-bound", Some(x), None, &v, st))
        })?);
    }

    let (middle, bracket) = psi_bound_middle_and_bracket();
    let (m, b) = (Routes::new(&middle), Routes::new(&bracket));
    let (xi, eta) = (Interval::from_int(4), Interval::ZERO);
    rep.push(at_points("classic/psi-double:xi=4,eta=0", &xs, |x| {
        let xi_ = Interval::point(x);
        let (mv, bv) = (m.eval(&xi_, engine)?, b.eval(&xi_, engine)?);
        let st = below(&(xi * bv), &mv).and(below(&mv, &(eta * bv)));
        Ok(Witness::enclosure("middle - 4 bracket", Some(x), None, &(mv - xi * bv), st))
    })?);
    Ok(rep)
}

/// `lower(α, x) < S(x) < upper(β, x)` on the grid for every α and β.
/// Exploratory: a pass is evidence on the grid, not a proof.
pub fn conjecture_scan(alphas: &[BigRational], betas: &[BigRational], grid: &GridSpec, engine: &Engine) -> Result<Report> {
    let xs = grid.points();
    let mut rep = Report::new();
    for (is_lower, exps) in [(true, alphas), (false, betas)] {
        for p in exps {
            let side = conjecture_sides(p)?;
            let name = format!("conjecture/{}={p}", if is_lower { "alpha" } else { "beta" });
            let c = at_points(&name, &xs, |x| {
                let xi = Interval::point(x);
                let (bound, s) = (side.eval(&xi)?, engine.s_combo(&xi)?);
                let (st, gap) = if is_lower { (below(&bound, &s), s - bound) } else { (below(&s, &bound), bound - s) };
                Ok(Witness::enclosure(if is_lower { "S - lower" } else { "upper - S" }, Some(x), None, &gap, st))
            })?;
            let violations = c.witnesses.iter().filter(|w| w.status == Status::Fail).count();
            rep.push(c.with_detail(format!("exploratory; {violations} violations on the grid")));
        }
    }
    Ok(rep)
}

/// `G_λ`: general formula against the explicit `G₀`, `G₄`; sign patterns
/// of the derivatives; both limits.
pub fn g_family(grid: &GridSpec, max_order: usize, engine: &Engine) -> Result<Report> {
    let mut rep = Report::new();
    for (l, explicit) in [(rat_int(0), g0_explicit()), (rat_int(4), g4_explicit())] {
        let general = Routes::new(&g_lambda(&l));
        let shown = Routes::new(&explicit);
        let ws = [rat(1, 2), rat_int(1), rat_int(3)]
            .iter()
            .map(|x| {
                let xi = Interval::from_rational(x);
                let (a, b) = (general.eval(&xi, engine)?, shown.eval(&xi, engine)?);
                let d = (a - b).abs();
                Ok(Witness::enclosure("|general - explicit|", Some(xi.mid()), None, &d, Status::from_bool(d.hi() < 1e-10)))
            })
            .collect::<Result<Vec<_>>>()?;
        let same = g_lambda(&l) == explicit;
        let mut c = Check::from_witnesses(format!("G/lambda={l}/explicit-display"), ws);
        c = c.with_witness(Witness::exact("structural equality", same, Status::from_bool(same)));
        c.status = c.witnesses.iter().fold(Status::Pass, |s, w| s.and(w.status));
        rep.push(c);
    }
    for (l, sign) in [(rat_int(0), Sign::Plus), (rat_int(4), Sign::Minus)] {
        let cm = check_cm_orders(&format!("G/lambda={l}/sign-pattern"), &g_lambda(&l), sign, 1..=max_order, grid, engine)?;
        rep.extend(cm.to_report());
    }
    for l in [rat_int(0), rat_int(4)] {
        let (zero, inf) = g_limits(&l)?;
        let g = Routes::new(&g_lambda(&l));
        let near0 = g.eval(&Interval::point(1e-8), engine)?;
        let d0 = (near0 - zero).abs();
        let s0 = Status::from_bool(d0.hi() < 1e-4);
        rep.push(
            Check::new(format!("G/lambda={l}/limit-at-0"), s0)
                .with_witness(Witness::enclosure("G(1e-8)", Some(1e-8), None, &near0, s0))
                .with_witness(Witness::enclosure("closed-form limit", None, None, &zero, s0)),
        );
        let (x1, x2) = (1e6, 1e7);
        let (g1, g2) = (g.eval(&Interval::point(x1), engine)?, g.eval(&Interval::point(x2), engine)?);
        // G ≈ L + c/x  ⇒  L ≈ (x₂G(x₂) − x₁G(x₁)) / (x₂ − x₁)
        let extrap = (g2.scale(x2) - g1.scale(x1)).div(&Interval::point(x2 - x1))?;
        let di = (extrap - inf).abs();
        let si = Status::from_bool(di.hi() < 1e-4);
        rep.push(
            Check::new(format!("G/lambda={l}/limit-at-infinity"), si)
                .with_witness(Witness::enclosure("1/x extrapolation", None, None, &extrap, si))
                .with_witness(Witness::enclosure("closed-form limit", None, None, &inf, si)),
        );
    }
    Ok(rep)
}
