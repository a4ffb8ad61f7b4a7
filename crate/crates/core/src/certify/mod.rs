//! Certification suites. Every suite returns a [`Report`]; nothing here
//! panics on a failed claim.
//!
//! Grid checks certify the sign of an enclosure at each grid point only.
//! They make no claim about the function between grid points.
//!
//! ```
//! use cmcert::certify::{check_cm, Sign};
//! use cmcert::paperlib::{f_lambda, FForm};
//! use cmcert::{numeric::rat, Engine, GridSpec, Status};
//!
//! let grid = GridSpec::log(rat(1, 10), rat(10, 1), 8).unwrap();
//! let f0 = f_lambda(&rat(0, 1), FForm::Direct);
//! let rep = check_cm("f0", &f0, Sign::Plus, 4, &grid, &Engine::default()).unwrap();
//! assert_eq!(rep.status(), Status::Pass);
//! ```

pub mod analysis;
pub mod cm;
pub mod inequalities;
pub mod kernel;
pub mod quad;
pub mod report;

pub use analysis::{
    asymptotic_check, lambda_profile, sharpness_probe, sharpness_report, telescope, verify_difference_identity,
    verify_lambda_profile, verify_laplace, verify_telescope, Direction,
};
pub use cm::{check_cm, check_cm_orders, CmReport, Sign};
pub use inequalities::{classic_inequalities, conjecture_scan, g_family};
pub use kernel::{verify_kernel, verify_kernel_on, verify_ratio, KernelEval, RatioEval};
pub use report::{Check, Discrepancy, Report, Status, Summary, Witness};

use crate::error::{Error, Result};
use crate::expr::{ClosedForm, CompiledForm};
use crate::numeric::{rat, rat_int, BigRational, GridSpec, Interval};
use crate::paperlib::{f_lambda, FForm};
use crate::polygamma::Engine;

/// A closed form evaluated along its direct form and, when it differs, the
/// form with every polygamma moved to a common shift. The enclosures are
/// intersected; disjoint enclosures are an error.
#[derive(Clone, Debug)]
pub struct Routes {
    forms: Vec<CompiledForm>,
}

impl Routes {
    pub fn new(f: &ClosedForm) -> Self {
        let shifted = f.rewrite_shift();
        let mut forms = vec![f.compile()];
        if &shifted != f {
            forms.push(shifted.compile());
        }
        Routes { forms }
    }

    pub fn eval(&self, x: &Interval, engine: &Engine) -> Result<Interval> {
        let mut acc: Option<Interval> = None;
        let mut last_err = None;
        for form in &self.forms {
            match form.eval(x, engine) {
                Ok(v) => {
                    acc = Some(match acc {
                        None => v,
                        Some(a) => a.intersect(&v).ok_or_else(|| {
                            Error::Inconsistent(format!("routes disagree at {x:?}: {a:?} vs {v:?}"))
                        })?,
                    })
                }
                Err(e) => last_err = Some(e),
            }
        }
        acc.ok_or_else(|| last_err.expect("at least one route"))
    }
}

/// Parameters of [`run_all`].
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub grid: GridSpec,
    pub orders: usize,
    pub tol: f64,
    pub difference_grid: GridSpec,
    pub profile_grid: GridSpec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            grid: GridSpec::log(rat(1, 1000), rat_int(1000), 200).expect("valid grid"),
            orders: 12,
            tol: 1e-8,
            difference_grid: GridSpec::log(rat(1, 10), rat_int(10), 20).expect("valid grid"),
            profile_grid: GridSpec::log(rat(1, 10_000), rat_int(10_000), 200).expect("valid grid"),
        }
    }
}

/// Complete-monotonicity suites: `f₀` and `−f₄`.
pub fn cm_suites(cfg: &SuiteConfig, engine: &Engine) -> Result<Report> {
    let mut rep = Report::new();
    for (l, sign) in [(rat_int(0), Sign::Plus), (rat_int(4), Sign::Minus)] {
        let f = f_lambda(&l, FForm::Direct);
        rep.extend(check_cm(&format!("cm/f/lambda={l}"), &f, sign, cfg.orders, &cfg.grid, engine)?.to_report());
    }
    Ok(rep)
}

/// Every suite with the default parameters of each.
pub fn run_all(cfg: &SuiteConfig, engine: &Engine) -> Result<Report> {
    let one = rat_int(1);
    let lambdas: Vec<BigRational> = [0, 4, 13].into_iter().map(rat_int).collect();
    let mut rep = verify_kernel()?;
    rep.extend(verify_ratio(&kernel::default_kernel_grid())?);
    rep.extend(classic_inequalities(&cfg.grid, engine)?);
    rep.extend(cm_suites(cfg, engine)?);
    rep.extend(sharpness_report(&analysis::default_sharpness_lambdas(), engine)?);
    rep.extend(verify_lambda_profile(&cfg.profile_grid, engine)?);
    rep.extend(asymptotic_check(&[rat_int(10), rat_int(30), rat_int(100)], engine)?);
    let xs = [rat_int(1), rat_int(2), rat_int(5)];
    for l in [rat_int(0), rat_int(4)] {
        rep.extend(verify_laplace(&l, &xs, cfg.tol, engine)?.0);
    }
    for l in &lambdas {
        rep.extend(verify_difference_identity(l, &cfg.difference_grid, engine)?);
    }
    rep.extend(verify_telescope(&rat_int(0), &one, 200, 1e-6, engine)?);
    rep.extend(g_family(&cfg.grid, 8, engine)?);
    rep.extend(conjecture_scan(&[rat(6, 5)], &[one], &cfg.grid, engine)?);
    Ok(rep)
}
