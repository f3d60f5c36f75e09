//! Recursive maps with a pinned evaluation order.
//!
//! The logistic map is evaluated as `(r · x) · (1 − x)` in every mode, so
//! the float and exact evaluators see the same expression tree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::decimal::{decimal_to_rational, parse_decimal};
use crate::error::{Error, Result};
use crate::float_kernel::{dir_mul, dir_sub, RoundingMode};
use crate::rational::ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Logistic,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Logistic => "logistic",
        }
    }
}

impl FromStr for MapKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "logistic" => Ok(MapKind::Logistic),
            other => Err(Error::Config(format!(
                "unknown map {other:?} (known: logistic)"
            ))),
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which binary64 value of `r` a directed branch multiplies by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ParamRounding {
    /// `r` is converted once, to nearest, and that float is used in every
    /// branch, like a parameter held in a double variable.
    #[default]
    Stored,
    /// `r` is converted from its text in the branch's own rounding mode.
    Directed,
}

impl ParamRounding {
    pub fn name(self) -> &'static str {
        match self {
            ParamRounding::Stored => "stored",
            ParamRounding::Directed => "directed",
        }
    }
}

impl FromStr for ParamRounding {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stored" => Ok(ParamRounding::Stored),
            "directed" => Ok(ParamRounding::Directed),
            other => Err(Error::Config(format!(
                "unknown r rounding {other:?} (stored|directed)"
            ))),
        }
    }
}

/// An immutable map definition.
#[derive(Clone, Debug, PartialEq)]
pub struct MapSpec {
    kind: MapKind,
    r_text: String,
    r_exact: ExactRational,
    r_nearest: f64,
    r_down: f64,
    r_up: f64,
    param_rounding: ParamRounding,
}

impl MapSpec {
    /// Logistic map `x ↦ r·x·(1−x)` with `r` given as decimal text.
    pub fn logistic(r_text: &str) -> Result<Self> {
        let r_exact = decimal_to_rational(r_text)?;
        Ok(MapSpec {
            kind: MapKind::Logistic,
            r_text: r_text.to_string(),
            r_exact,
            r_nearest: parse_decimal(r_text, RoundingMode::Nearest)?,
            r_down: parse_decimal(r_text, RoundingMode::TowardNegInf)?,
            r_up: parse_decimal(r_text, RoundingMode::TowardPosInf)?,
            param_rounding: ParamRounding::default(),
        })
    }

    pub fn from_name(name: &str, r_text: &str) -> Result<Self> {
        match name.parse::<MapKind>()? {
            MapKind::Logistic => Self::logistic(r_text),
        }
    }

    pub fn with_param_rounding(mut self, p: ParamRounding) -> Self {
        self.param_rounding = p;
        self
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn r_text(&self) -> &str {
        &self.r_text
    }

    pub fn r_exact(&self) -> &ExactRational {
        &self.r_exact
    }

    pub fn param_rounding(&self) -> ParamRounding {
        self.param_rounding
    }

    /// `r` parsed from its text under `mode`.
    pub fn r_float(&self, mode: RoundingMode) -> f64 {
        match mode {
            RoundingMode::Nearest => self.r_nearest,
            RoundingMode::TowardNegInf => self.r_down,
            RoundingMode::TowardPosInf => self.r_up,
        }
    }

    /// The `r` actually used by `eval_directed` in `mode`.
    pub fn branch_param(&self, mode: RoundingMode) -> f64 {
        match self.param_rounding {
            ParamRounding::Stored => self.r_nearest,
            ParamRounding::Directed => self.r_float(mode),
        }
    }

    /// One map step with every elementary operation rounded in `mode`.
    pub fn eval_directed(&self, x: f64, mode: RoundingMode) -> Result<f64> {
        match self.kind {
            MapKind::Logistic => {
                let t1 = dir_mul(self.branch_param(mode), x, mode)?;
                let t2 = dir_sub(1.0, x, mode)?;
                dir_mul(t1, t2, mode)
            }
        }
    }

    /// One exact map step.
    pub fn eval_exact(&self, x: &ExactRational) -> ExactRational {
        match self.kind {
            MapKind::Logistic => logistic_exact(&self.r_exact, x),
        }
    }
}

/// `r·x·(1−x)` in lowest terms without a gcd on the full-size result.
///
/// With `r = p/q` and `x = a/b` reduced, `a(b−a)` is coprime to `b²` and
/// `p` to `q`, so the only cancellations are `p` against `b²` and
/// `a(b−a)` against `q`. Both gcds involve the small parameter only.
fn logistic_exact(r: &ExactRational, x: &ExactRational) -> ExactRational {
    if r.is_zero() || x.is_zero() {
        return ExactRational::zero();
    }
    let (p, q) = (r.numer(), r.denom());
    let (a, b) = (x.numer(), x.denom());
    let t = a * (b - a);
    if t.is_zero() {
        return ExactRational::zero();
    }
    let b2 = b * b;
    let g1 = p.gcd(&b2.mod_floor(p));
    let g2 = q.gcd(&t.mod_floor(q));
    let num = (p / &g1) * div_exact(t, &g2);
    let den = (q / &g2) * div_exact(b2, &g1);
    ExactRational::from_reduced(num, den)
}

fn div_exact(n: BigInt, d: &BigInt) -> BigInt {
    if d.is_one() {
        n
    } else {
        n / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float_kernel::to_hex;
    use num_rational::BigRational;
    use RoundingMode::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into()).unwrap()
    }

    fn generic(r: &ExactRational, x: &ExactRational) -> ExactRational {
        let one = BigRational::one();
        let (r, x) = (r.as_big_rational(), x.as_big_rational());
        ExactRational::from(r * x * (one - x))
    }

    #[test]
    fn fixed_point_and_preimage() {
        let m = MapSpec::logistic("3.9").unwrap();
        assert_eq!(m.eval_exact(&q(29, 39)), q(29, 39));
        assert_eq!(m.eval_exact(&q(10, 39)), q(29, 39));
        assert!(m.eval_exact(&ExactRational::zero()).is_zero());
    }

    #[test]
    fn exact_matches_generic_reduction() {
        let rs = ["3.9", "4", "4.2", "3.85", "0.5", "2.25", "-1.5", "12"];
        let xs = [
            q(1, 100),
            q(1, 10),
            q(41, 100),
            q(3, 7),
            q(7, 3),
            q(-5, 12),
            q(1, 1),
            q(25, 26),
            q(13, 50),
        ];
        for r in rs {
            let m = MapSpec::logistic(r).unwrap();
            let mut x = q(1, 100);
            for seed in &xs {
                assert_eq!(
                    m.eval_exact(seed),
                    generic(m.r_exact(), seed),
                    "r={r} x={seed}"
                );
            }
            for _ in 0..6 {
                let next = m.eval_exact(&x);
                assert_eq!(next, generic(m.r_exact(), &x));
                x = next;
            }
        }
    }

    #[test]
    fn directed_trivial_points() {
        let m = MapSpec::logistic("3.9").unwrap();
        for mode in RoundingMode::ALL {
            assert_eq!(m.eval_directed(0.0, mode).unwrap(), 0.0);
            assert_eq!(m.eval_directed(1.0, mode).unwrap(), 0.0);
        }
        let x = f64::from_bits(0x3fd0690690690691);
        assert_eq!(
            to_hex(m.eval_directed(x, Nearest).unwrap()),
            "3fe7cb7cb7cb7cb8"
        );
        assert_eq!(m.eval_directed(f64::NAN, Nearest), Err(Error::Invalid));
    }

    #[test]
    fn param_rounding_selects_r() {
        let m = MapSpec::logistic("3.9").unwrap();
        assert!(m.r_float(TowardNegInf) < m.r_float(TowardPosInf));
        assert_eq!(m.branch_param(TowardPosInf), m.r_float(Nearest));
        let d = m.clone().with_param_rounding(ParamRounding::Directed);
        assert_eq!(d.branch_param(TowardPosInf), d.r_float(TowardPosInf));
        assert_eq!(d.branch_param(TowardNegInf), d.r_float(TowardNegInf));
    }

    #[test]
    fn names() {
        assert!(MapSpec::from_name("logistic", "4").is_ok());
        assert!(matches!(
            MapSpec::from_name("tent", "4"),
            Err(Error::Config(_))
        ));
        assert!(matches!(MapSpec::logistic("four"), Err(Error::Parse(_))));
        assert_eq!(
            "directed".parse::<ParamRounding>(),
            Ok(ParamRounding::Directed)
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(2000))]

            // Stepping from an exact float, the directed evaluations bracket the
            // exact image whenever r itself is bracketed (directed parameter).
            #[test]
            fn directed_steps_bracket_exact(x in 0.0f64..=1.0, r_milli in 1u32..=4200) {
                let r_text = format!("{}.{:03}", r_milli / 1000, r_milli % 1000);
                let m = MapSpec::logistic(&r_text).unwrap().with_param_rounding(ParamRounding::Directed);
                let exact = m.eval_exact(&ExactRational::from_f64(x).unwrap());
                let lo = ExactRational::from_f64(m.eval_directed(x, TowardNegInf).unwrap()).unwrap();
                let hi = ExactRational::from_f64(m.eval_directed(x, TowardPosInf).unwrap()).unwrap();
                prop_assert!(lo <= exact && exact <= hi);
            }

            // With a stored r the bracket is around r_nearest·x·(1−x).
            #[test]
            fn stored_steps_bracket_stored_image(x in 0.0f64..=1.0, r in 0.001f64..=4.2) {
                let m = MapSpec::logistic(&format!("{r:e}")).unwrap();
                let xr = ExactRational::from_f64(x).unwrap();
                let rr = ExactRational::from_f64(m.branch_param(Nearest)).unwrap();
                let exact = logistic_exact(&rr, &xr);
                let lo = ExactRational::from_f64(m.eval_directed(x, TowardNegInf).unwrap()).unwrap();
                let hi = ExactRational::from_f64(m.eval_directed(x, TowardPosInf).unwrap()).unwrap();
                prop_assert!(lo <= exact && exact <= hi);
            }
        }
    }
}
