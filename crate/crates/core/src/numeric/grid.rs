use serde::{Deserialize, Serialize};

use super::rational::{parse_rational, to_f64_nearest, BigRational};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Log,
    Linear,
}

/// A finite set of sample points on `(0, ∞)`.
///
/// Points are doubles. Each grid point is treated as the exact rational its
/// double represents, so every check performed "at a grid point" is a
/// statement about that exact number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub kind: GridKind,
    #[serde(with = "rational_str")]
    pub start: BigRational,
    #[serde(with = "rational_str")]
    pub end: BigRational,
    pub count: usize,
}

pub(crate) mod rational_str {
    use super::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.kind {
            GridKind::Log => "log",
            GridKind::Linear => "linear",
        };
        write!(f, "{kind}:{}:{}:{}", self.start, self.end, self.count)
    }
}

impl GridSpec {
    pub fn new(kind: GridKind, start: BigRational, end: BigRational, count: usize) -> Result<Self> {
        if !start.is_positive() {
            return Err(Error::Domain(format!("grid start {start} must be positive")));
        }
        if start >= end {
            return Err(Error::Domain(format!("grid start {start} must be below end {end}")));
        }
        if count < 2 {
            return Err(Error::Domain(format!("grid needs at least 2 points, got {count}")));
        }
        Ok(GridSpec { kind, start, end, count })
    }

    pub fn log(start: BigRational, end: BigRational, count: usize) -> Result<Self> {
        Self::new(GridKind::Log, start, end, count)
    }

    pub fn linear(start: BigRational, end: BigRational, count: usize) -> Result<Self> {
        Self::new(GridKind::Linear, start, end, count)
    }

    /// Parses `log:1e-3:1e3:200` or `linear:1/2:2:10`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("grid spec {s:?} is not kind:start:end:count")));
        }
        let kind = match parts[0] {
            "log" => GridKind::Log,
            "linear" | "lin" => GridKind::Linear,
            k => return Err(Error::Parse(format!("unknown grid kind {k:?}"))),
        };
        let count = parts[3]
            .parse()
            .map_err(|_| Error::Parse(format!("bad grid count {:?}", parts[3])))?;
        Self::new(kind, parse_rational(parts[1])?, parse_rational(parts[2])?, count)
    }

    /// Sample points in increasing order; the first and last are the doubles
    /// nearest to `start` and `end`.
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        let a = to_f64_nearest(&self.start);
        let b = to_f64_nearest(&self.end);
        let mut pts: Vec<f64> = (0..n)
            .map(|i| {
                if i == 0 {
                    return a;
                }
                if i == n - 1 {
                    return b;
                }
                match self.kind {
                    GridKind::Linear => {
                        let step = (&self.end - &self.start) / BigRational::from_integer((n - 1).into());
                        to_f64_nearest(&(&self.start + step * BigRational::from_integer(i.into())))
                    }
                    GridKind::Log => {
                        let (la, lb) = (a.ln(), b.ln());
                        (la + (lb - la) * (i as f64) / ((n - 1) as f64)).exp()
                    }
                }
            })
            .collect();
        pts.dedup();
        debug_assert!(pts.iter().all(|p| !p.is_zero()));
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    #[test]
    fn parses_and_spans_endpoints() {
        let g = GridSpec::parse("log:1e-3:1e3:200").unwrap();
        let p = g.points();
        assert_eq!(p.len(), 200);
        assert_eq!(p[0], 1e-3);
        assert_eq!(p[199], 1e3);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        assert!((p[100] / p[99] - (1e6f64).powf(1.0 / 199.0)).abs() < 1e-12);
    }

    #[test]
    fn linear_points_are_nearest_doubles() {
        let g = GridSpec::linear(rat(0, 1) + rat(1, 10), rat(1, 1), 10).unwrap();
        let p = g.points();
        assert_eq!(p[1], 0.2);
        assert_eq!(p.len(), 10);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(GridSpec::parse("log:0:1:10").is_err());
        assert!(GridSpec::parse("log:2:1:10").is_err());
        assert!(GridSpec::parse("log:1:2:1").is_err());
        assert!(GridSpec::parse("cubic:1:2:10").is_err());
        assert!(GridSpec::parse("log:1:2").is_err());
    }
}
