//! Pseudo-orbits under round-to-nearest and under the averaged directed
//! scheme.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::decimal::{decimal_to_rational, parse_decimal, rational_to_binary64};
use crate::error::{Error, Result};
use crate::float_kernel::{average2, dir_div, Binary64, RoundingMode};
use crate::maps::MapSpec;
use crate::rational::ExactRational;

/// Where an orbit starts.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialCondition {
    /// Decimal text, converted in each branch's rounding mode.
    Decimal(String),
    /// `1/d` for decimal text `d`, computed once as `RN(1 / RN(d))`; every
    /// mode sees that same float.
    Reciprocal(String),
    /// An exact rational, rounded in each branch's mode.
    Rational(ExactRational),
}

impl InitialCondition {
    pub fn decimal(text: &str) -> Result<Self> {
        decimal_to_rational(text)?;
        Ok(InitialCondition::Decimal(text.to_string()))
    }

    pub fn reciprocal(text: &str) -> Result<Self> {
        if decimal_to_rational(text)?.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(InitialCondition::Reciprocal(text.to_string()))
    }

    /// Float value of the initial condition in `mode`.
    pub fn resolve(&self, mode: RoundingMode) -> Result<f64> {
        let x = match self {
            InitialCondition::Decimal(text) => parse_decimal(text, mode)?,
            InitialCondition::Reciprocal(text) => {
                let d = parse_decimal(text, RoundingMode::Nearest)?;
                dir_div(1.0, d, RoundingMode::Nearest)?
            }
            InitialCondition::Rational(v) => rational_to_binary64(v, mode)?,
        };
        Ok(x + 0.0)
    }

    /// Exact value of the source expression (not of any rounded float).
    pub fn exact(&self) -> Result<ExactRational> {
        match self {
            InitialCondition::Decimal(text) => decimal_to_rational(text),
            InitialCondition::Reciprocal(text) => decimal_to_rational(text)?.recip(),
            InitialCondition::Rational(v) => Ok(v.clone()),
        }
    }
}

impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialCondition::Decimal(t) => f.write_str(t),
            InitialCondition::Reciprocal(t) => write!(f, "1/({t})"),
            InitialCondition::Rational(v) => write!(f, "{v}"),
        }
    }
}

/// Parses decimal text or an integer ratio `p/q`.
impl FromStr for InitialCondition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            None => Self::decimal(s),
            Some((p, q)) => {
                let bad = || Error::Parse(format!("not an integer ratio: {s:?}"));
                let int = |t: &str| -> Result<BigInt> {
                    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
                    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                        return Err(bad());
                    }
                    t.trim_start_matches('+').parse().map_err(|_| bad())
                };
                Ok(InitialCondition::Rational(ExactRational::new(
                    int(p)?,
                    int(q)?,
                )?))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Nearest,
    Lemma1,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::Nearest, Scheme::Lemma1];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Nearest => "nearest",
            Scheme::Lemma1 => "lemma1",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nearest" => Ok(Scheme::Nearest),
            "lemma1" => Ok(Scheme::Lemma1),
            other => Err(Error::Config(format!("unknown scheme {other:?}"))),
        }
    }
}

/// A computed pseudo-orbit; `values[0]` is the rounded initial condition.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRecord {
    pub scheme: Scheme,
    pub values: Vec<Binary64>,
    pub map: MapSpec,
    pub x0: InitialCondition,
}

impl OrbitRecord {
    /// Number of steps, `values.len() - 1`.
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, n: usize) -> f64 {
        self.values[n].to_f64()
    }
}

/// The two directed branches of one averaged step and their average.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lemma1Step {
    pub down: f64,
    pub up: f64,
    pub avg: f64,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Config("N must be ≥ 1".into()));
    }
    Ok(())
}

/// Leaving the finite range mid-orbit is reported with the step index.
fn at_step(index: usize, r: Result<f64>) -> Result<f64> {
    match r {
        Ok(x) if x.is_finite() => Ok(x + 0.0),
        Ok(_) | Err(Error::Overflow) => Err(Error::NonfiniteOrbit { index }),
        Err(e) => Err(e),
    }
}

/// Traditional pseudo-orbit: every operation rounds to nearest.
pub fn run_nearest(map: &MapSpec, x0: &InitialCondition, n: usize) -> Result<OrbitRecord> {
    check_n(n)?;
    let mut x = at_step(0, x0.resolve(RoundingMode::Nearest))?;
    let mut values = Vec::with_capacity(n + 1);
    values.push(Binary64::from_f64(x));
    for i in 1..=n {
        x = at_step(i, map.eval_directed(x, RoundingMode::Nearest))?;
        values.push(Binary64::from_f64(x));
    }
    Ok(OrbitRecord {
        scheme: Scheme::Nearest,
        values,
        map: map.clone(),
        x0: x0.clone(),
    })
}

/// One averaged step from `x`: both directed branches start at `x`.
pub fn lemma1_step(map: &MapSpec, x: f64) -> Result<Lemma1Step> {
    let down = map.eval_directed(x, RoundingMode::TowardNegInf)?;
    let up = map.eval_directed(x, RoundingMode::TowardPosInf)?;
    Ok(Lemma1Step {
        down,
        up,
        avg: average2(down, up)?,
    })
}

/// Averaged pseudo-orbit with its per-step branches. Entry 0 holds the
/// directed initial conditions.
pub fn lemma1_trace(map: &MapSpec, x0: &InitialCondition, n: usize) -> Result<Vec<Lemma1Step>> {
    check_n(n)?;
    let down = at_step(0, x0.resolve(RoundingMode::TowardNegInf))?;
    let up = at_step(0, x0.resolve(RoundingMode::TowardPosInf))?;
    let mut step = Lemma1Step {
        down,
        up,
        avg: at_step(0, average2(down, up))?,
    };
    let mut trace = Vec::with_capacity(n + 1);
    trace.push(step);
    for i in 1..=n {
        let s = lemma1_step(map, step.avg).map_err(|e| match e {
            Error::Overflow => Error::NonfiniteOrbit { index: i },
            e => e,
        })?;
        step = Lemma1Step {
            down: at_step(i, Ok(s.down))?,
            up: at_step(i, Ok(s.up))?,
            avg: at_step(i, Ok(s.avg))?,
        };
        trace.push(step);
    }
    Ok(trace)
}

/// Averaged pseudo-orbit: round⁻ and round⁺ branches are averaged after
/// every step and both restart from the average.
pub fn run_lemma1(map: &MapSpec, x0: &InitialCondition, n: usize) -> Result<OrbitRecord> {
    let values = lemma1_trace(map, x0, n)?
        .into_iter()
        .map(|s| Binary64::from_f64(s.avg))
        .collect();
    Ok(OrbitRecord {
        scheme: Scheme::Lemma1,
        values,
        map: map.clone(),
        x0: x0.clone(),
    })
}

pub fn run(scheme: Scheme, map: &MapSpec, x0: &InitialCondition, n: usize) -> Result<OrbitRecord> {
    match scheme {
        Scheme::Nearest => run_nearest(map, x0, n),
        Scheme::Lemma1 => run_lemma1(map, x0, n),
    }
}

/// Earliest index `i` such that `values[i..]` are bit-identical and at
/// least `window` long.
///
/// # Panics
/// If `window < 2`.
pub fn detect_fixed_point(orbit: &OrbitRecord, window: usize) -> Option<(Binary64, usize)> {
    assert!(window >= 2, "window must be at least 2");
    let last = *orbit.values.last()?;
    let run = orbit
        .values
        .iter()
        .rev()
        .take_while(|v| **v == last)
        .count();
    (run >= window).then(|| (last, orbit.values.len() - run))
}
