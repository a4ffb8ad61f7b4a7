use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::report::{Check, Report, Status, Witness};
use super::Routes;
use crate::error::{Error, Result};
use crate::expr::{ClosedForm, DEFAULT_DERIVATIVE_CEILING};
use crate::numeric::{GridSpec, Interval};
use crate::polygamma::Engine;

/// Direction of a complete-monotonicity claim: `F` itself, or `−F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign must be plus or minus, got {s:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// Enclosure of `(−1)ⁿ (±F)⁽ⁿ⁾(x)` at one grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CmEntry {
    pub n: usize,
    pub x: f64,
    pub lo: f64,
    pub hi: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub n: usize,
    pub status: Status,
    pub violations: usize,
    pub indeterminate: usize,
    /// Smallest lower endpoint over the grid.
    pub min_lower: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CmReport {
    pub name: String,
    pub sign: Sign,
    pub orders: (usize, usize),
    pub grid: GridSpec,
    pub entries: Vec<CmEntry>,
    pub verdicts: Vec<OrderVerdict>,
}

impl CmReport {
    pub fn status(&self) -> Status {
        self.verdicts.iter().fold(Status::Pass, |s, v| s.and(v.status))
    }

    pub fn violations(&self) -> impl Iterator<Item = &CmEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn indeterminate(&self) -> usize {
        self.verdicts.iter().map(|v| v.indeterminate).sum()
    }

    /// One check per order, carrying every grid enclosure as a witness.
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        for v in &self.verdicts {
            let witnesses = self
                .entries
                .iter()
                .filter(|e| e.n == v.n)
                .map(|e| Witness {
                    label: e.error.clone().unwrap_or_else(|| "(-1)^n F^(n)".into()),
                    x: Some(e.x),
                    n: Some(e.n),
                    lo: e.lo,
                    hi: e.hi,
                    exact: None,
                    status: e.status,
                })
                .collect();
            let c = Check { name: format!("{}/n={}", self.name, v.n), status: v.status, detail: None, witnesses };
            r.push(c.with_detail(format!(
                "sign={}; {} violations, {} indeterminate, min lower endpoint {:e}; grid points only",
                self.sign, v.violations, v.indeterminate, v.min_lower
            )));
        }
        r
    }
}

/// Grid certification of `(−1)ⁿ (±F)⁽ⁿ⁾ ≥ 0` for `n = 0..=max_order`.
pub fn check_cm(
    name: &str,
    f: &ClosedForm,
    sign: Sign,
    max_order: usize,
    grid: &GridSpec,
    engine: &Engine,
) -> Result<CmReport> {
    check_cm_orders(name, f, sign, 0..=max_order, grid, engine)
}

/// As [`check_cm`] over an arbitrary range of orders.
pub fn check_cm_orders(
    name: &str,
    f: &ClosedForm,
    sign: Sign,
    orders: RangeInclusive<usize>,
    grid: &GridSpec,
    engine: &Engine,
) -> Result<CmReport> {
    let (first, last) = (*orders.start(), *orders.end());
    if last > DEFAULT_DERIVATIVE_CEILING {
        return Err(Error::Config(format!(
            "order {last} above the derivative ceiling {DEFAULT_DERIVATIVE_CEILING}"
        )));
    }
    let xs = grid.points();
    if xs.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::Domain("grid must lie in (0, ∞)".into()));
    }
    let mut derivs = Vec::new();
    let mut d = match sign {
        Sign::Plus => f.clone(),
        Sign::Minus => -f,
    };
    for n in 0..=last {
        if n >= first {
            let signed = if n % 2 == 1 { -&d } else { d.clone() };
            derivs.push((n, Routes::new(&signed)));
        }
        d = d.derivative();
    }
    let jobs: Vec<(usize, f64)> =
        derivs.iter().enumerate().flat_map(|(i, _)| xs.iter().map(move |&x| (i, x))).collect();
    let entries: Vec<CmEntry> = jobs
        .par_iter()
        .map(|&(i, x)| {
            let (n, routes) = &derivs[i];
            match routes.eval(&Interval::point(x), engine) {
                Ok(v) => CmEntry { n: *n, x, lo: v.lo(), hi: v.hi(), status: sign_status(&v), error: None },
                Err(e) => CmEntry {
                    n: *n,
                    x,
                    lo: f64::NAN,
                    hi: f64::NAN,
                    status: Status::Fail,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let verdicts = derivs
        .iter()
        .map(|(n, _)| {
            let es: Vec<&CmEntry> = entries.iter().filter(|e| e.n == *n).collect();
            let violations = es.iter().filter(|e| e.status == Status::Fail).count();
            let indeterminate = es.iter().filter(|e| e.status == Status::Indeterminate).count();
            let status = es.iter().fold(Status::Pass, |s, e| s.and(e.status));
            let min_lower = es.iter().map(|e| e.lo).fold(f64::INFINITY, f64::min);
            OrderVerdict { n: *n, status, violations, indeterminate, min_lower }
        })
        .collect();
    Ok(CmReport { name: name.to_string(), sign, orders: (first, last), grid: grid.clone(), entries, verdicts })
}

/// Pass if the enclosure is nonnegative, fail if it is negative,
/// indeterminate if it straddles zero.
pub fn sign_status(v: &Interval) -> Status {
    if v.lo() >= 0.0 {
        Status::Pass
    } else if v.hi() < 0.0 {
        Status::Fail
    } else {
        Status::Indeterminate
    }
}
