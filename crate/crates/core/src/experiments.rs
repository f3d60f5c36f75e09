//! Canned logistic-map experiments and the statistics reported on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decimal::rational_to_binary64;
use crate::error::Result;
use crate::float_kernel::{average2, RoundingMode};
use crate::maps::{MapSpec, ParamRounding};
use crate::oracle::{error_series, run_exact, ErrorSeries, ExactOrbit};
use crate::orbit::{lemma1_step, run_lemma1, run_nearest, InitialCondition, OrbitRecord};
use crate::rational::ExactRational;

/// A map, a start and a step count.
#[derive(Clone, Debug, PartialEq)]
pub struct Experiment {
    pub name: String,
    pub map: MapSpec,
    pub x0: InitialCondition,
    pub n: usize,
}

impl Experiment {
    pub fn logistic(name: &str, r: &str, x0: InitialCondition, n: usize) -> Result<Self> {
        Ok(Experiment {
            name: name.to_string(),
            map: MapSpec::logistic(r)?,
            x0,
            n,
        })
    }

    pub fn with_param_rounding(mut self, p: ParamRounding) -> Self {
        self.map = self.map.with_param_rounding(p);
        self
    }
}

/// `x0 = 1/3.9`, `r = 3.9`, ten values.
pub fn fixed_point_example() -> Experiment {
    let x0 = InitialCondition::reciprocal("3.9").expect("valid literal");
    Experiment::logistic("table1", "3.9", x0, 9).expect("valid literal")
}

/// `x0 = 0.01`, `r = 3.9`, twenty steps.
pub fn error_decay_example() -> Experiment {
    let x0 = InitialCondition::decimal("0.01").expect("valid literal");
    Experiment::logistic("figure1", "3.9", x0, 20).expect("valid literal")
}

/// The three `(x0, r)` settings of the ξ/δ comparison, ten steps each.
pub fn comparison_examples() -> Vec<Experiment> {
    [("0.1", "4.2"), ("0.2", "4"), ("0.41", "3.85")]
        .into_iter()
        .map(|(x0, r)| {
            let start = InitialCondition::decimal(x0).expect("valid literal");
            Experiment::logistic(&format!("table2_{x0}_{r}"), r, start, 10).expect("valid literal")
        })
        .collect()
}

/// Both pseudo-orbits of an experiment and their errors.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub nearest: OrbitRecord,
    pub lemma1: OrbitRecord,
    pub exact: ExactOrbit,
    pub xi: ErrorSeries,
    pub delta: ErrorSeries,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioSummary {
    /// Steps with `δ ≤ ξ`.
    pub delta_le_xi: usize,
    pub rows: usize,
    /// Geometric mean of `δ/ξ` over steps where neither is zero.
    pub geo_mean: f64,
}

pub fn compare(exp: &Experiment, cap: usize) -> Result<Comparison> {
    let nearest = run_nearest(&exp.map, &exp.x0, exp.n)?;
    let lemma1 = run_lemma1(&exp.map, &exp.x0, exp.n)?;
    let exact = run_exact(&exp.map, &exp.x0.exact()?, exp.n, cap)?;
    let xi = error_series(&nearest, &exact)?;
    let delta = error_series(&lemma1, &exact)?;
    Ok(Comparison {
        nearest,
        lemma1,
        exact,
        xi,
        delta,
    })
}

impl Comparison {
    /// Ratio statistics over steps `from..=to`.
    pub fn ratio_summary(&self, from: usize, to: usize) -> RatioSummary {
        let mut delta_le_xi = 0;
        let (mut log_sum, mut counted) = (0.0, 0usize);
        for n in from..=to {
            let (xi, delta) = (&self.xi.entries[n], &self.delta.entries[n]);
            if delta <= xi {
                delta_le_xi += 1;
            }
            if !xi.is_zero() && !delta.is_zero() {
                log_sum += delta.log10() - xi.log10();
                counted += 1;
            }
        }
        let geo_mean = if counted == 0 {
            1.0
        } else {
            10f64.powf(log_sum / counted as f64)
        };
        RatioSummary {
            delta_le_xi,
            rows: to + 1 - from,
            geo_mean,
        }
    }

    /// Steps `n ≥ 1` with `δ_n < ξ_n`.
    pub fn strict_wins(&self) -> Vec<usize> {
        (1..self.xi.entries.len())
            .filter(|&n| self.delta.entries[n] < self.xi.entries[n])
            .collect()
    }

    /// First step from which `δ_n < ξ_n` holds through the last step.
    pub fn crossover(&self) -> Option<usize> {
        let last = self.xi.entries.len() - 1;
        let mut onset = None;
        for n in (1..=last).rev() {
            if self.delta.entries[n] < self.xi.entries[n] {
                onset = Some(n);
            } else {
                break;
            }
        }
        onset
    }
}

/// Mean one-step errors of the nearest and averaged steps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseReport {
    pub cases: usize,
    pub seed: u64,
    pub mean_nearest: f64,
    pub mean_averaged: f64,
}

impl NoiseReport {
    pub fn ratio(&self) -> f64 {
        self.mean_averaged / self.mean_nearest
    }
}

/// Single logistic steps from random exact states `x ∈ (0, 1)` with random
/// `r ∈ (0, 4]` given to three decimals.
///
/// The nearest step rounds `x` to nearest and applies one nearest step. The
/// averaged step follows the averaged scheme from `x`: average the directed
/// roundings of `x`, then average the two directed images. Both results are
/// compared exactly with `r·x·(1−x)`.
pub fn one_step_noise(
    cases: usize,
    seed: u64,
    param_rounding: ParamRounding,
) -> Result<NoiseReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum_nearest, mut sum_averaged) = (0.0, 0.0);
    for _ in 0..cases {
        let den: u64 = rng.gen_range(2..=1 << 40);
        let num: u64 = rng.gen_range(1..den);
        let milli: u32 = rng.gen_range(1..=4000);
        let r = format!("{}.{:03}", milli / 1000, milli % 1000);
        let map = MapSpec::logistic(&r)?.with_param_rounding(param_rounding);
        let x = ExactRational::new(num.into(), den.into())?;
        let y = map.eval_exact(&x);

        let xn = rational_to_binary64(&x, RoundingMode::Nearest)?;
        let yn = map.eval_directed(xn, RoundingMode::Nearest)?;

        let lo = rational_to_binary64(&x, RoundingMode::TowardNegInf)?;
        let hi = rational_to_binary64(&x, RoundingMode::TowardPosInf)?;
        let ya = lemma1_step(&map, average2(lo, hi)?)?.avg;

        sum_nearest += rational_to_binary64(&y.abs_diff_f64(yn)?, RoundingMode::Nearest)?;
        sum_averaged += rational_to_binary64(&y.abs_diff_f64(ya)?, RoundingMode::Nearest)?;
    }
    Ok(NoiseReport {
        cases,
        seed,
        mean_nearest: sum_nearest / cases as f64,
        mean_averaged: sum_averaged / cases as f64,
    })
}
