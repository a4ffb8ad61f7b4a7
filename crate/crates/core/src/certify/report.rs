use serde::Serialize;

use crate::numeric::Interval;

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Indeterminate,
    Fail,
}

impl Status {
    /// Worst of two statuses (fail > indeterminate > pass).
    pub fn and(self, other: Status) -> Status {
        self.max(other)
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Indeterminate => "indeterminate",
            Status::Fail => "fail",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A recorded value backing a verdict: an enclosure at a point, an exact
/// quantity, or a free-form note.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub lo: f64,
    pub hi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub status: Status,
}

impl Witness {
    pub fn enclosure(label: impl Into<String>, x: Option<f64>, n: Option<usize>, v: &Interval, status: Status) -> Self {
        Witness { label: label.into(), x, n, lo: v.lo(), hi: v.hi(), exact: None, status }
    }

    pub fn exact(label: impl Into<String>, value: impl ToString, status: Status) -> Self {
        Witness {
            label: label.into(),
            x: None,
            n: None,
            lo: f64::NAN,
            hi: f64::NAN,
            exact: Some(value.to_string()),
            status,
        }
    }

    pub fn at(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub witnesses: Vec<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check { name: name.into(), status, detail: None, witnesses: Vec::new() }
    }

    /// A check whose status is the worst status among its witnesses
    /// (pass when there are none).
    pub fn from_witnesses(name: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        let status = witnesses.iter().fold(Status::Pass, |s, w| s.and(w.status));
        Check { name: name.into(), status, detail: None, witnesses }
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A printed display that disagrees with the self-consistent value the
/// library derives. Recorded for the reader; it does not affect the status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub name: String,
    pub printed: String,
    pub derived: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub discrepancies: usize,
}

/// Structured result of a suite of checks.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<Discrepancy>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn discrepancy(&mut self, name: impl Into<String>, printed: impl ToString, derived: impl ToString) {
        self.discrepancies.push(Discrepancy {
            name: name.into(),
            printed: printed.to_string(),
            derived: derived.to_string(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.discrepancies.extend(other.discrepancies);
    }

    pub fn status(&self) -> Status {
        self.checks.iter().fold(Status::Pass, |s, c| s.and(c.status))
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Checks whose name starts with `prefix`.
    pub fn matching<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.name.starts_with(prefix))
    }

    pub fn summary(&self) -> Summary {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        Summary {
            total: self.checks.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            indeterminate: count(Status::Indeterminate),
            discrepancies: self.discrepancies.len(),
        }
    }
}
