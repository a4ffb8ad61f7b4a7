use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::certify::report::{Check, Report, Status, Witness};
use crate::error::Error;
use crate::numeric::{rat, rat_int, BigRational};
use crate::polyalg::{Polynomial, RationalFunction};

pub(crate) fn poly(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

/// `c · Π (x + s)^k`.
pub(crate) fn product(c: i64, factors: &[(i64, u32)]) -> Polynomial {
    factors
        .iter()
        .fold(poly(&[c]), |acc, &(s, k)| &acc * &poly(&[s, 1]).pow(k))
}

pub(crate) fn ratio(num: Polynomial, den: Polynomial) -> RationalFunction {
    RationalFunction::new(num, den)
}

/// `B_λ(x) = (x² + λx + 12) / (12x⁴(x+1)²)`.
pub fn bound_rational(lambda: &BigRational) -> RationalFunction {
    let num = Polynomial::new(vec![rat_int(12), lambda.clone(), rat_int(1)]);
    ratio(num, product(12, &[(0, 4), (1, 2)]))
}

/// `h(x) = 1 / (12x³(x+1)²)`.
pub fn h_rational() -> RationalFunction {
    ratio(poly(&[1]), product(12, &[(0, 3), (1, 2)]))
}

/// `U(x) = (x + 12) / (12x⁴(x+1))`.
pub fn u_bound() -> RationalFunction {
    ratio(poly(&[12, 1]), product(12, &[(0, 4), (1, 1)]))
}

/// The four classical rational bounds of `[ψ′]² + ψ″`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicBound {
    /// `p(x) / (900x⁴(x+1)¹⁰)`
    P900Lower,
    /// `(36 + 180x + … + 21x⁶) / (36x⁴(1+x)⁶)`
    WeakUpper,
    /// `(x² + 12) / (12x⁴(x+1)²)`
    TwoSidedLower,
    /// `(x + 12) / (12x⁴(x+1))`
    TwoSidedUpper,
}

impl ClassicBound {
    pub const ALL: [ClassicBound; 4] =
        [ClassicBound::P900Lower, ClassicBound::WeakUpper, ClassicBound::TwoSidedLower, ClassicBound::TwoSidedUpper];

    pub fn name(self) -> &'static str {
        match self {
            ClassicBound::P900Lower => "p900-lower",
            ClassicBound::WeakUpper => "weak-upper",
            ClassicBound::TwoSidedLower => "two-sided-lower",
            ClassicBound::TwoSidedUpper => "two-sided-upper",
        }
    }

    pub fn is_lower(self) -> bool {
        matches!(self, ClassicBound::P900Lower | ClassicBound::TwoSidedLower)
    }
}

impl fmt::Display for ClassicBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassicBound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        ClassicBound::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown bound {s:?}")))
    }
}

/// `p(x) = 75x¹⁰ + 900x⁹ + … + 3600x + 450`.
pub fn p900_numerator() -> Polynomial {
    poly(&[450, 3600, 13290, 29700, 44101, 45050, 31865, 15370, 4840, 900, 75])
}

pub fn classic_bound(b: ClassicBound) -> RationalFunction {
    match b {
        ClassicBound::P900Lower => ratio(p900_numerator(), product(900, &[(0, 4), (1, 10)])),
        ClassicBound::WeakUpper => {
            ratio(poly(&[36, 180, 408, 504, 352, 132, 21]), product(36, &[(0, 4), (1, 6)]))
        }
        ClassicBound::TwoSidedLower => bound_rational(&BigRational::zero()),
        ClassicBound::TwoSidedUpper => u_bound(),
    }
}

/// Default λ samples for [`decomposition_identities`].
pub fn decomposition_samples() -> Vec<BigRational> {
    vec![rat(0, 1), rat(5, 1), rat(13, 1), rat(-7, 3), rat(22, 7)]
}

/// Verifies `B_λ − B₀ = λh` and `B_λ − U = (λ − 13)h` as exact rational
/// function identities at the default samples.
///
/// Both residuals are affine in λ, so vanishing at two distinct samples
/// proves them for every λ.
pub fn decomposition_identities() -> Report {
    decomposition_identities_at(&decomposition_samples())
}

pub fn decomposition_identities_at(lambdas: &[BigRational]) -> Report {
    let h = h_rational();
    let b0 = bound_rational(&BigRational::zero());
    let u = u_bound();
    let mut distinct = lambdas.to_vec();
    distinct.sort();
    distinct.dedup();
    let symbolic = distinct.len() >= 2;
    let mut report = Report::new();
    type Residual<'a> = Box<dyn Fn(&BigRational, &RationalFunction) -> RationalFunction + 'a>;
    let cases: [(&str, Residual); 2] = [
        ("decomposition/B-B0=lambda*h", Box::new(|l, bl| &(bl - &b0) - &h.scale(l))),
        (
            "decomposition/B-U=(lambda-13)*h",
            Box::new(|l, bl| &(bl - &u) - &h.scale(&(l - rat_int(13)))),
        ),
    ];
    for (name, residual) in cases {
        let witnesses: Vec<Witness> = lambdas
            .iter()
            .map(|l| {
                let r = residual(l, &bound_rational(l));
                Witness::exact(format!("lambda={l}"), &r, Status::from_bool(r.is_zero()))
            })
            .collect();
        let mut check = Check::from_witnesses(name, witnesses);
        if !symbolic && check.status == Status::Pass {
            check.status = Status::Indeterminate;
        }
        report.push(check.with_detail(if symbolic {
            "affine in lambda; two distinct exact samples prove the identity"
        } else {
            "fewer than two distinct samples"
        }));
    }
    report
}
