//! Experiment configuration and the CSV artifacts written by the CLI.
//!
//! Every command builds a [`Report`] in memory (file names, file contents
//! and summary lines) so output is byte-deterministic and testable without
//! touching the file system; [`Report::write_to`] persists it.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::experiments::{self, compare, Comparison, Experiment};
use crate::maps::{MapSpec, ParamRounding};
use crate::oracle::{error_series, format_log10, reference_for, ErrorSeries, DEFAULT_CAP};
use crate::orbit::{detect_fixed_point, run, InitialCondition, OrbitRecord, Scheme};

/// Keys accepted in config files and as CLI flags.
pub const CONFIG_KEYS: [&str; 10] = [
    "map",
    "r",
    "x0",
    "x0-recip",
    "n",
    "scheme",
    "oracle",
    "out",
    "cap",
    "r-rounding",
];

/// A validated `run` configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub map: MapSpec,
    pub x0: InitialCondition,
    pub n: usize,
    pub schemes: Vec<Scheme>,
    pub oracle: bool,
    pub out: PathBuf,
    pub cap: usize,
}

/// Parses `key=value` lines. Blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key=value", i + 1)))?;
        let k = k.trim();
        if !CONFIG_KEYS.contains(&k) {
            return Err(Error::Config(format!("line {}: unknown key {k:?}", i + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

pub fn parse_schemes(s: &str) -> Result<Vec<Scheme>> {
    match s {
        "both" => Ok(Scheme::ALL.to_vec()),
        one => Ok(vec![one.parse()?]),
    }
}

fn parse_on_off(s: &str) -> Result<bool> {
    match s {
        "on" => Ok(true),
        "off" => Ok(false),
        other => Err(Error::Config(format!(
            "oracle must be on or off, got {other:?}"
        ))),
    }
}

fn parse_count(key: &str, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Config(format!("{key} must be a non-negative integer, got {s:?}")))
}

impl ExperimentConfig {
    /// Builds a config from merged key/value settings.
    pub fn from_settings(s: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| s.get(k).map(String::as_str);
        let map_name = get("map").unwrap_or("logistic");
        let r = get("r").ok_or_else(|| Error::Config("missing r".into()))?;
        let map = MapSpec::from_name(map_name, r)?
            .with_param_rounding(get("r-rounding").unwrap_or("stored").parse()?);
        let x0 = match (get("x0"), get("x0-recip")) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("give only one of x0 and x0-recip".into()))
            }
            (Some(t), None) => t.parse()?,
            (None, Some(d)) => InitialCondition::reciprocal(d)?,
            (None, None) => return Err(Error::Config("missing x0 (or x0-recip)".into())),
        };
        let n = parse_count(
            "n",
            get("n").ok_or_else(|| Error::Config("missing n".into()))?,
        )?;
        if n < 1 {
            return Err(Error::Config("N must be ≥ 1".into()));
        }
        let cap = get("cap").map_or(Ok(DEFAULT_CAP), |c| parse_count("cap", c))?;
        let oracle = parse_on_off(get("oracle").unwrap_or("on"))?;
        if oracle && n > cap {
            return Err(Error::CapExceeded { requested: n, cap });
        }
        Ok(ExperimentConfig {
            map,
            x0,
            n,
            schemes: parse_schemes(get("scheme").unwrap_or("both"))?,
            oracle,
            out: PathBuf::from(get("out").unwrap_or(".")),
            cap,
        })
    }
}

/// Files and summary lines produced by one command.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub files: Vec<(String, String)>,
    pub summary: Vec<String>,
}

impl Report {
    pub fn file(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.as_str())
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for (name, contents) in &self.files {
            let path = dir.join(name);
            fs::write(&path, contents)?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Decimal text with 15 significant digits: fixed notation for moderate
/// magnitudes, scientific otherwise.
pub fn dec15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.14e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-5..15).contains(&exp) {
        format!("{:.*}", (14 - exp) as usize, x)
    } else {
        sci
    }
}

/// `n,hex,dec15` plus `xi|delta,log10err` when errors are given.
pub fn orbit_csv(orbit: &OrbitRecord, errors: Option<&ErrorSeries>) -> String {
    let mut s = String::from("n,hex,dec15");
    if errors.is_some() {
        s.push_str(match orbit.scheme {
            Scheme::Nearest => ",xi,log10err",
            Scheme::Lemma1 => ",delta,log10err",
        });
    }
    s.push('\n');
    for (n, v) in orbit.values.iter().enumerate() {
        let _ = write!(s, "{n},{},{}", v.to_hex(), dec15(v.to_f64()));
        if let Some(e) = errors {
            let _ = write!(s, ",{},{}", e.display(n), format_log10(e.log10(n)));
        }
        s.push('\n');
    }
    s
}

/// Both orbits side by side, rows numbered from 1 (row 1 is `x0`).
pub fn table1_csv(nearest: &OrbitRecord, lemma1: &OrbitRecord) -> String {
    let mut s = String::from("n,nearest_hex,nearest_dec15,lemma1_hex,lemma1_dec15\n");
    for (i, (a, b)) in nearest.values.iter().zip(&lemma1.values).enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            i + 1,
            a.to_hex(),
            dec15(a.to_f64()),
            b.to_hex(),
            dec15(b.to_f64())
        );
    }
    s
}

/// ξ and δ for steps `1..=N` with the hex values they were measured on.
pub fn table2_csv(c: &Comparison) -> String {
    let mut s = String::from("n,xi,delta,nearest_hex,lemma1_hex\n");
    for n in 1..c.xi.entries.len() {
        let _ = writeln!(
            s,
            "{n},{},{},{},{}",
            c.xi.display(n),
            c.delta.display(n),
            c.nearest.values[n].to_hex(),
            c.lemma1.values[n].to_hex()
        );
    }
    s
}

/// Two-column `n,log10err` series for steps `1..=N`.
pub fn log10_series_csv(e: &ErrorSeries) -> String {
    let mut s = String::from("n,log10err\n");
    for n in 1..e.entries.len() {
        let _ = writeln!(s, "{n},{}", format_log10(e.log10(n)));
    }
    s
}

pub fn cmd_run(cfg: &ExperimentConfig) -> Result<Report> {
    let mut report = Report::default();
    for &scheme in &cfg.schemes {
        let orbit = run(scheme, &cfg.map, &cfg.x0, cfg.n)?;
        let errors = if cfg.oracle {
            Some(error_series(&orbit, &reference_for(&orbit, cfg.cap)?)?)
        } else {
            None
        };
        let name = format!("orbit_{scheme}.csv");
        report
            .files
            .push((name.clone(), orbit_csv(&orbit, errors.as_ref())));
        let last = orbit.values[cfg.n];
        let mut line = format!(
            "{scheme}: x[{}] = {} ({})",
            cfg.n,
            last.to_hex(),
            dec15(last.to_f64())
        );
        if let Some(e) = &errors {
            let _ = write!(line, ", error {}", e.display(cfg.n));
        }
        report.summary.push(line);
    }
    Ok(report)
}

fn canned(exp: Experiment, p: ParamRounding) -> Experiment {
    exp.with_param_rounding(p)
}

pub fn cmd_table1(p: ParamRounding) -> Result<Report> {
    let exp = canned(experiments::fixed_point_example(), p);
    let nearest = run(Scheme::Nearest, &exp.map, &exp.x0, exp.n)?;
    let lemma1 = run(Scheme::Lemma1, &exp.map, &exp.x0, exp.n)?;
    let csv = table1_csv(&nearest, &lemma1);
    let mut summary: Vec<String> = csv.lines().map(|l| l.replace(',', "  ")).collect();
    for (o, label) in [(&lemma1, "lemma1"), (&nearest, "nearest")] {
        summary.push(match detect_fixed_point(o, 3) {
            Some((v, i)) => format!("{label}: fixed at {} from row {}", v.to_hex(), i + 1),
            None => format!("{label}: no fixed point"),
        });
    }
    Ok(Report {
        files: vec![("table1.csv".into(), csv)],
        summary,
    })
}

pub fn cmd_table2(p: ParamRounding) -> Result<Report> {
    let exps: Vec<Experiment> = experiments::comparison_examples()
        .into_iter()
        .map(|e| canned(e, p))
        .collect();
    let results: Vec<Result<Comparison>> = std::thread::scope(|s| {
        let handles: Vec<_> = exps
            .iter()
            .map(|e| s.spawn(move || compare(e, DEFAULT_CAP)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("comparison thread"))
            .collect()
    });
    let mut report = Report::default();
    for (exp, c) in exps.iter().zip(results) {
        let c = c?;
        let sum = c.ratio_summary(1, exp.n);
        report
            .files
            .push((format!("{}.csv", exp.name), table2_csv(&c)));
        report.summary.push(format!(
            "x0={} r={}: delta<=xi in {}/{} rows, geometric mean delta/xi {:.3}",
            exp.x0,
            exp.map.r_text(),
            sum.delta_le_xi,
            sum.rows,
            sum.geo_mean
        ));
    }
    Ok(report)
}

pub fn cmd_figure1(p: ParamRounding) -> Result<Report> {
    let exp = canned(experiments::error_decay_example(), p);
    let c = compare(&exp, DEFAULT_CAP)?;
    let crossover = match c.crossover() {
        Some(n) => format!("delta < xi from n={n} through n={}", exp.n),
        None => "no crossover".to_string(),
    };
    Ok(Report {
        files: vec![
            ("figure1_nearest.csv".into(), log10_series_csv(&c.xi)),
            ("figure1_lemma1.csv".into(), log10_series_csv(&c.delta)),
        ],
        summary: vec![
            format!("delta < xi at {} of {} steps", c.strict_wins().len(), exp.n),
            crossover,
        ],
    })
}
