use num_traits::Zero;

use super::bounds::{bound_rational, poly, product, ratio};
use crate::error::{domain, Result};
use crate::expr::{ln, pg, ClosedForm};
use crate::numeric::{rat, rat_int, BigRational, Interval};
use crate::polyalg::{Polynomial, RationalFunction};

fn cf(r: RationalFunction) -> ClosedForm {
    ClosedForm::rational(r)
}

/// `c / (d · (x + s)^k)` with rational `c`.
fn inv(c: BigRational, d: i64, s: i64, k: u32) -> ClosedForm {
    cf(RationalFunction::inverse_power(c / rat_int(d), &rat_int(s), k))
}

fn lin(c0: BigRational, c1: BigRational) -> Polynomial {
    Polynomial::new(vec![c0, c1])
}

/// `S(x) = [ψ′(x)]² + ψ″(x)`.
pub fn s_form() -> ClosedForm {
    &(&pg(1, 0) * &pg(1, 0)) + &pg(2, 0)
}

/// Which algebraic form of `f_λ` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FForm {
    /// `S(x) − B_λ(x)`.
    Direct,
    /// The same function with `ψ′`, `ψ″` moved to `x + 1`; the large
    /// negative powers of `x` cancel exactly, which keeps it accurate near 0.
    Shifted,
}

pub fn f_lambda(lambda: &BigRational, form: FForm) -> ClosedForm {
    match form {
        FForm::Direct => &s_form() - &cf(bound_rational(lambda)),
        FForm::Shifted => {
            let l = lambda;
            let bracket = &(&(&inv(rat_int(1), 1, 0, 3) - &inv(rat_int(2), 1, 0, 2)) + &inv(rat_int(3), 1, 0, 1))
                - &cf(ratio(poly(&[4, 3]), product(1, &[(1, 2)])));
            let a = pg(1, 1);
            let rational = &(&(&bracket.scale(&(-l / rat_int(12))) - &inv(rat_int(37), 12, 0, 2))
                + &inv(rat_int(25), 6, 0, 1))
                - &cf(ratio(poly(&[63, 50]), product(12, &[(1, 2)])));
            let psi = &(&(&a * &inv(rat_int(2), 1, 0, 2)) + &(&a * &a)) + &pg(2, 1);
            &rational + &psi
        }
    }
}

/// `h_λ(x)` with `f_λ(x) − f_λ(x+1) = (2/x²) h_λ(x)`, as the sum of `ψ′(x)`
/// and eight partial fractions.
pub fn h_lambda(lambda: &BigRational) -> ClosedForm {
    let l = lambda;
    let i = rat_int;
    let parts = [
        inv(i(-1), 1, 0, 2),
        inv(-l.clone(), 24, 0, 1),
        inv(i(37) - i(2) * l, 6, 2, 1),
        inv(i(9) * l - i(172), 24, 1, 1),
        inv(i(28) - l, 8, 1, 2),
        inv(i(13) - l, 6, 2, 2),
        inv(l - i(48), 24, 1, 3),
        inv(i(1), 2, 1, 4),
    ];
    parts.iter().fold(pg(1, 0), |acc, p| &acc + p)
}

/// `ψ′(x) − λ(4+8x+5x²)/(24x(1+x)³(2+x)²) − (24+120x+…+6x⁷)/(6x²(1+x)⁴(2+x)²)`.
pub fn psi1_bound(lambda: &BigRational) -> ClosedForm {
    let lam = cf(ratio(poly(&[4, 8, 5]), product(24, &[(0, 1), (1, 3), (2, 2)]))).scale(lambda);
    let rest = cf(ratio(
        poly(&[24, 120, 283, 399, 345, 181, 51, 6]),
        product(6, &[(0, 2), (1, 4), (2, 2)]),
    ));
    &(&pg(1, 0) - &lam) - &rest
}

/// The middle expression and the bracket of the two-sided ψ inequality
/// `ξ·bracket < middle < η·bracket`.
pub fn psi_bound_middle_and_bracket() -> (ClosedForm, ClosedForm) {
    let middle = &(&pg(0, 0) - &cf(ratio(poly(&[-12, 3, 73, 87, 28]), product(6, &[(0, 1), (1, 3), (2, 1)]))))
        - &(&ln(1).scale(&rat(43, 6)) - &ln(2).scale(&rat(37, 6)));
    let logs = &(&ln(0) - &ln(1).scale(&rat_int(9))) + &ln(2).scale(&rat_int(8));
    let bracket = &logs.scale(&rat(1, 24)) - &cf(ratio(poly(&[18, 33, 14]), product(48, &[(1, 2), (2, 1)])));
    (middle, bracket)
}

/// `H_λ(x) = (24 − λx) ln x + [(9λ−172)x + 12λ − 256] ln(x+1) + 4[(37−2λ)x − 3λ + 61] ln(x+2)`.
pub fn h_big(lambda: &BigRational) -> ClosedForm {
    let l = lambda;
    let i = rat_int;
    let c0 = lin(i(24), -l.clone());
    let c1 = lin(i(12) * l - i(256), i(9) * l - i(172));
    let c2 = lin(i(4) * (i(61) - i(3) * l), i(4) * (i(37) - i(2) * l));
    &(&(&ln(0) * &ClosedForm::from(c0)) + &(&ln(1) * &ClosedForm::from(c1))) + &(&ln(2) * &ClosedForm::from(c2))
}

/// `G_λ(x) = ln Γ(x) + x + 1/(12(1+x)²) + (λ−48)/(48(1+x)) + H_λ(x)/24`.
pub fn g_lambda(lambda: &BigRational) -> ClosedForm {
    let rational = &(&ClosedForm::x() + &inv(rat_int(1), 12, 1, 2)) + &inv(lambda - rat_int(48), 48, 1, 1);
    &(&ClosedForm::ln_gamma(BigRational::zero()) + &rational) + &h_big(lambda).scale(&rat(1, 24))
}

/// The separately printed `G₀`.
pub fn g0_explicit() -> ClosedForm {
    let base = &(&(&ClosedForm::ln_gamma(BigRational::zero()) + &ln(0)) + &ClosedForm::x())
        + &(&inv(rat_int(1), 12, 1, 2) - &inv(rat_int(1), 1, 1, 1));
    let logs = &(&ln(2) * &ClosedForm::from(poly(&[61, 37]))) - &(&ln(1) * &ClosedForm::from(poly(&[64, 43])));
    &base + &logs.scale(&rat(1, 6))
}

/// The separately printed `G₄`.
pub fn g4_explicit() -> ClosedForm {
    let base = &(&(&ClosedForm::ln_gamma(BigRational::zero()) + &ln(0)) + &ClosedForm::x())
        + &(&inv(rat_int(1), 12, 1, 2) - &inv(rat_int(11), 12, 1, 1));
    let logs = &(&(&ln(2) * &ClosedForm::from(poly(&[49, 29])))
        - &(&ln(1) * &ClosedForm::from(poly(&[52, 34]))))
        - &(&ln(0) * &ClosedForm::x());
    &base + &logs.scale(&rat(1, 6))
}

/// Enclosures of `lim_{x→0⁺} G_λ = (488 ln2 − 44 + λ(1 − 24 ln2))/48` and
/// `lim_{x→∞} G_λ = (124 + 12 ln(2π) − 7λ)/24`.
pub fn g_limits(lambda: &BigRational) -> Result<(Interval, Interval)> {
    let l = Interval::from_rational(lambda);
    let ln2 = Interval::from_int(2).ln()?;
    let ln2pi = (Interval::pi() * Interval::from_int(2)).ln()?;
    let i = Interval::from_int;
    let zero = (i(488) * ln2 - i(44) + l * (i(1) - i(24) * ln2)).div(&i(48))?;
    let inf = (i(124) + i(12) * ln2pi - i(7) * l).div(&i(24))?;
    Ok((zero, inf))
}

/// `x ↦ x⁻⁴ [(x² + 4x + 12)/(12(x+1)²)]^p` for a fixed exponent `p > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureSide {
    exponent: BigRational,
    base: RationalFunction,
}

pub fn conjecture_sides(exponent: &BigRational) -> Result<ConjectureSide> {
    if *exponent <= BigRational::zero() {
        return Err(domain(format!("exponent {exponent} must be positive")));
    }
    Ok(ConjectureSide {
        exponent: exponent.clone(),
        base: ratio(poly(&[12, 4, 1]), product(12, &[(1, 2)])),
    })
}

impl ConjectureSide {
    pub fn exponent(&self) -> &BigRational {
        &self.exponent
    }

    pub fn eval(&self, x: &Interval) -> Result<Interval> {
        if !(x.lo() > 0.0) {
            return Err(domain(format!("argument {x:?} must be positive")));
        }
        let base = if x.is_point() {
            Interval::from_rational(&self.base.eval(&BigRational::from_float(x.lo()).expect("finite"))?)
        } else {
            self.base.eval_interval(x)?
        };
        assert!(base.lo() > 0.0, "base enclosure touches zero");
        let p = base.pow_real(&Interval::from_rational(&self.exponent))?;
        p.div(&x.pow_int(4)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygamma::Engine;

    fn at(f: &ClosedForm, x: f64) -> Interval {
        f.eval(&Interval::point(x), &Engine::default()).unwrap()
    }

    fn near(v: Interval, want: f64, tol: f64) {
        assert!(v.lo() - tol <= want && want <= v.hi() + tol, "{v:?} vs {want}");
    }

    #[test]
    fn f_lambda_examples() {
        let f0 = f_lambda(&rat(0, 1), FForm::Direct);
        near(at(&f0, 1.0), 0.030_860_944_625_323_575, 1e-15);
        let f4 = at(&f_lambda(&rat(4, 1), FForm::Direct), 1.0);
        near(f4, -0.052_472_388_708_009_76, 1e-15);
        assert!(f4.is_negative());
        let l = rat(2, 1);
        let (d, s) = (at(&f_lambda(&l, FForm::Direct), 3.0), at(&f_lambda(&l, FForm::Shifted), 3.0));
        assert!(d.overlaps(&s) && (d.mid() - s.mid()).abs() <= 1e-12);
        assert_eq!(f_lambda(&l, FForm::Direct).rewrite_shift(), f_lambda(&l, FForm::Shifted));
    }

    #[test]
    fn h_lambda_examples() {
        near(at(&h_lambda(&rat(0, 1)), 1.0), 0.014_147_029_811_189_399, 1e-15);
        // the −λ/(24x) term alone contributes −1 at x = 1 for λ = 24
        let diff = &h_lambda(&rat(24, 1)).rational_part() - &h_lambda(&rat(0, 1)).rational_part();
        let others = &diff - &RationalFunction::inverse_power(rat_int(-1), &rat_int(0), 1);
        let v = diff.eval(&rat(1, 1)).unwrap() - others.eval(&rat(1, 1)).unwrap();
        assert_eq!(v, rat_int(-1));
    }

    #[test]
    fn difference_identity_at_one() {
        let f0 = f_lambda(&rat(0, 1), FForm::Direct);
        let lhs = &(&f0 - &f0.translate(&rat_int(1)))
            - &(&h_lambda(&rat(0, 1)) * &ClosedForm::rational(RationalFunction::inverse_power(rat_int(2), &rat_int(0), 2)));
        let r = at(&lhs, 1.0);
        assert!(r.contains(0.0) && r.width() < 1e-10);
    }

    #[test]
    fn psi1_bound_is_h_lambda() {
        for l in [rat(0, 1), rat(4, 1), rat(-3, 7)] {
            assert_eq!(psi1_bound(&l), h_lambda(&l));
        }
        assert!(at(&psi1_bound(&rat(0, 1)), 1.0).is_positive());
        assert!(at(&psi1_bound(&rat(4, 1)), 1.0).is_negative());
    }

    #[test]
    fn psi_inequality_at_one() {
        let (m, b) = psi_bound_middle_and_bracket();
        let (m, b) = (at(&m, 1.0), at(&b, 1.0));
        near(m, -0.013_050_234_350_020_0, 1e-14);
        near(b, -0.006_573_318_709_498_48, 1e-14);
        assert!((b * Interval::from_int(4)).certainly_lt(&m) && m.is_negative());
    }

    #[test]
    fn g_family() {
        near(at(&g0_explicit(), 1.0), 6.103_709_328_260_100_27, 1e-13);
        assert_eq!(g_lambda(&rat(0, 1)), g0_explicit());
        assert_eq!(g_lambda(&rat(4, 1)), g4_explicit());
        let (z, i) = g_limits(&rat(0, 1)).unwrap();
        near(z, 6.130_329_669_026_110_65, 1e-14);
        near(i, 6.085_605_199_871_339_41, 1e-14);
        let (z1, _) = g_limits(&rat(1, 1)).unwrap();
        near(z1 - z, (1.0 - 24.0 * std::f64::consts::LN_2) / 48.0, 1e-14);
    }

    #[test]
    fn conjecture_examples() {
        let one = Interval::ONE;
        near(conjecture_sides(&rat(1, 1)).unwrap().eval(&one).unwrap(), 17.0 / 48.0, 1e-15);
        let lo = conjecture_sides(&rat(6, 5)).unwrap().eval(&one).unwrap();
        near(lo, (17.0f64 / 48.0).powf(1.2), 1e-14);
        assert!(lo.hi() < 0.301_694 && 0.301_695 < 17.0 / 48.0);
        assert!(conjecture_sides(&rat(0, 1)).is_err());
    }
}
