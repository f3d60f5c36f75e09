//! Exact reference orbits and the error series of pseudo-orbits against
//! them.

use crate::error::{Error, Result};
use crate::maps::MapSpec;
use crate::orbit::{OrbitRecord, Scheme};
use crate::rational::ExactRational;

/// Default bound on exact orbit length. Logistic denominators square at
/// every step, so the size of `x_n` is roughly `2^n` times that of `x_0`.
pub const DEFAULT_CAP: usize = 64;

/// Significant digits in the textual form of an error.
pub const DISPLAY_DIGITS: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct ExactOrbit {
    pub values: Vec<ExactRational>,
}

/// Exact orbit `x_0 .. x_n`.
pub fn run_exact(map: &MapSpec, x0: &ExactRational, n: usize, cap: usize) -> Result<ExactOrbit> {
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    let mut values = Vec::with_capacity(n + 1);
    values.push(x0.clone());
    for i in 0..n {
        let next = map.eval_exact(&values[i]);
        values.push(next);
    }
    Ok(ExactOrbit { values })
}

/// Exact orbit matching a pseudo-orbit: same map, same length, started
/// from the exact value of its initial-condition source.
pub fn reference_for(pseudo: &OrbitRecord, cap: usize) -> Result<ExactOrbit> {
    run_exact(&pseudo.map, &pseudo.x0.exact()?, pseudo.steps(), cap)
}

/// `|x_n − x̂_n|` per step.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorSeries {
    pub scheme: Scheme,
    pub entries: Vec<ExactRational>,
}

impl ErrorSeries {
    /// Six significant digits, scientific, e.g. `9.33254e-18`.
    pub fn display(&self, n: usize) -> String {
        self.entries[n].to_sci_string(DISPLAY_DIGITS)
    }

    pub fn log10(&self, n: usize) -> f64 {
        log10_error(&self.entries[n])
    }
}

pub fn error_series(pseudo: &OrbitRecord, exact: &ExactOrbit) -> Result<ErrorSeries> {
    if pseudo.values.len() != exact.values.len() {
        return Err(Error::LengthMismatch {
            pseudo: pseudo.values.len(),
            exact: exact.values.len(),
        });
    }
    let entries = exact
        .values
        .iter()
        .zip(&pseudo.values)
        .map(|(x, xh)| x.abs_diff_f64(xh.to_f64()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ErrorSeries {
        scheme: pseudo.scheme,
        entries,
    })
}

/// Base-10 logarithm of an error; `-inf` for a zero error.
pub fn log10_error(entry: &ExactRational) -> f64 {
    entry.log10()
}

/// Text form of `log10_error` with ten decimals, `-inf` for zero.
pub fn format_log10(v: f64) -> String {
    if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{v:.10}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decimal::decimal_to_rational;
    use crate::orbit::{run_lemma1, run_nearest, InitialCondition};
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into()).unwrap()
    }

    #[test]
    fn fixed_point_orbit() {
        let m = MapSpec::logistic("3.9").unwrap();
        let o = run_exact(&m, &q(10, 39), 3, DEFAULT_CAP).unwrap();
        assert_eq!(o.values, [q(10, 39), q(29, 39), q(29, 39), q(29, 39)]);
        let z = run_exact(&m, &ExactRational::zero(), 5, DEFAULT_CAP).unwrap();
        assert!(z.values.iter().all(ExactRational::is_zero));
    }

    #[test]
    fn cap() {
        let m = MapSpec::logistic("3.9").unwrap();
        assert_eq!(
            run_exact(&m, &q(1, 2), 65, DEFAULT_CAP),
            Err(Error::CapExceeded {
                requested: 65,
                cap: 64
            })
        );
        assert!(run_exact(&m, &q(1, 2), 3, 3).is_ok());
    }

    #[test]
    fn denominators_square() {
        let m = MapSpec::logistic("3.9").unwrap();
        let o = run_exact(&m, &q(1, 100), 6, DEFAULT_CAP).unwrap();
        // den(x_{n+1}) = 10 · den(x_n)^2 with no cancellation for this orbit
        for w in o.values.windows(2) {
            assert_eq!(
                w[1].denom(),
                &(w[0].denom() * w[0].denom() * BigInt::from(10))
            );
        }
    }

    #[test]
    fn exact_pseudo_orbit_has_zero_error() {
        let m = MapSpec::logistic("4").unwrap();
        let x0 = InitialCondition::decimal("0.5").unwrap();
        for p in [
            run_nearest(&m, &x0, 4).unwrap(),
            run_lemma1(&m, &x0, 4).unwrap(),
        ] {
            let s = error_series(&p, &reference_for(&p, DEFAULT_CAP).unwrap()).unwrap();
            assert!(s.entries.iter().all(ExactRational::is_zero));
            assert_eq!(s.display(0), "0.00000e0");
            assert_eq!(format_log10(s.log10(0)), "-inf");
        }
    }

    #[test]
    fn fixed_point_error_is_constant() {
        let m = MapSpec::logistic("3.9").unwrap();
        let p = run_lemma1(&m, &InitialCondition::reciprocal("3.9").unwrap(), 10).unwrap();
        let s = error_series(&p, &reference_for(&p, DEFAULT_CAP).unwrap()).unwrap();
        let want = (&q(29, 39)
            - &ExactRational::from_f64(f64::from_bits(0x3fe7cb7cb7cb7cb8)).unwrap())
            .abs();
        assert!(s.entries[1..].iter().all(|e| *e == want));
        assert!(s.log10(1) > -17.0 && s.log10(1) < -16.0);
    }

    #[test]
    fn length_mismatch() {
        let m = MapSpec::logistic("3.9").unwrap();
        let p = run_nearest(&m, &InitialCondition::decimal("0.1").unwrap(), 4).unwrap();
        let e = run_exact(&m, &q(1, 10), 3, DEFAULT_CAP).unwrap();
        assert_eq!(
            error_series(&p, &e),
            Err(Error::LengthMismatch {
                pseudo: 5,
                exact: 4
            })
        );
    }

    #[test]
    fn log10_values() {
        let e17 = ExactRational::new(1.into(), BigInt::from(10).pow(17)).unwrap();
        assert!((log10_error(&e17) + 17.0).abs() < 1e-12);
        let t = decimal_to_rational("9.33254e-18").unwrap();
        assert!((log10_error(&t) - 9.33254e-18f64.log10()).abs() < 1e-12);
        assert_eq!(log10_error(&ExactRational::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn displayed_entries_are_reproducible() {
        let m = MapSpec::logistic("4.2").unwrap();
        let p = run_nearest(&m, &InitialCondition::decimal("0.1").unwrap(), 10).unwrap();
        let s = error_series(&p, &reference_for(&p, DEFAULT_CAP).unwrap()).unwrap();
        let exact = reference_for(&p, DEFAULT_CAP).unwrap();
        for n in 0..=10 {
            let lifted = ExactRational::from_f64(p.value(n)).unwrap();
            let fresh = (&exact.values[n] - &lifted).abs();
            assert_eq!(s.display(n), fresh.to_sci_string(DISPLAY_DIGITS));
        }
        assert_eq!(s.display(2), "9.40332e-18");
    }
}
