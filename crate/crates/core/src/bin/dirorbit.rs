use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dirorbit::maps::ParamRounding;
use dirorbit::report::{self, parse_config_text, ExperimentConfig, Report};
use dirorbit::selftest::{self, SelftestConfig};
use dirorbit::Error;

/// Directed-rounding pseudo-orbits of the logistic map, checked against
/// exact rational orbits.
///
/// Decimal inputs follow `[+-](digits[.digits] | .digits)[(e|E)[+-]digits]`;
/// `--x0` also accepts an integer ratio `p/q`.
#[derive(Parser)]
#[command(name = "dirorbit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Cmd {
    /// Run one configured experiment and write orbit_<scheme>.csv files.
    Run(RunArgs),
    /// Iterates of r=3.9 from x0=1/3.9 under both schemes (table1.csv).
    Table1(CannedArgs),
    /// ξ/δ errors for three (x0, r) settings over ten steps.
    Table2(CannedArgs),
    /// log10 error series for x0=0.01, r=3.9 over twenty steps.
    Figure1(CannedArgs),
    /// Randomized kernel, parser and hex property suites.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct RunArgs {
    /// key=value file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    /// map name (logistic)
    #[arg(long)]
    map: Option<String>,
    /// map parameter, decimal text
    #[arg(long)]
    r: Option<String>,
    /// initial condition: decimal text or p/q
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// initial condition 1/d for decimal d
    #[arg(long = "x0-recip", allow_hyphen_values = true)]
    x0_recip: Option<String>,
    /// number of steps
    #[arg(long = "n")]
    n: Option<String>,
    /// nearest, lemma1 or both
    #[arg(long)]
    scheme: Option<String>,
    /// on or off: attach the exact oracle
    #[arg(long)]
    oracle: Option<String>,
    /// output directory
    #[arg(long)]
    out: Option<String>,
    /// largest N the exact oracle accepts
    #[arg(long)]
    cap: Option<String>,
    /// stored or directed: which float of r the directed branches use
    #[arg(long = "r-rounding")]
    r_rounding: Option<String>,
}

#[derive(Args)]
struct CannedArgs {
    /// output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// stored or directed: which float of r the directed branches use
    #[arg(long = "r-rounding", default_value = "stored")]
    r_rounding: String,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
    seed: u64,
    /// kernel checks; the parser suite runs a tenth as many
    #[arg(long, default_value_t = selftest::DEFAULT_CASES)]
    cases: usize,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("dirorbit: {e}");
    ExitCode::from(if e.is_config() { 2 } else { 3 })
}

fn emit(report: &Report, out: &Path) -> ExitCode {
    match report.write_to(out) {
        Ok(paths) => {
            for line in &report.summary {
                println!("{line}");
            }
            for p in paths {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("dirorbit: cannot write to {}: {e}", out.display());
            ExitCode::from(2)
        }
    }
}

fn run_settings(a: RunArgs) -> Result<BTreeMap<String, String>, Error> {
    let mut settings = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            parse_config_text(&text)?
        }
        None => BTreeMap::new(),
    };
    let flags = [
        ("map", a.map),
        ("r", a.r),
        ("x0", a.x0),
        ("x0-recip", a.x0_recip),
        ("n", a.n),
        ("scheme", a.scheme),
        ("oracle", a.oracle),
        ("out", a.out),
        ("cap", a.cap),
        ("r-rounding", a.r_rounding),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            // an explicit start replaces the other form from the file
            match k {
                "x0" => settings.remove("x0-recip"),
                "x0-recip" => settings.remove("x0"),
                _ => None,
            };
            settings.insert(k.to_string(), v);
        }
    }
    Ok(settings)
}

fn canned(args: &CannedArgs, f: fn(ParamRounding) -> dirorbit::Result<Report>) -> ExitCode {
    let p = match args.r_rounding.parse::<ParamRounding>() {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    match f(p) {
        Ok(r) => emit(&r, &args.out),
        Err(e) => fail(&e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Run(a) => {
            let cfg = match run_settings(a).and_then(|s| ExperimentConfig::from_settings(&s)) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            match report::cmd_run(&cfg) {
                Ok(r) => emit(&r, &cfg.out),
                Err(e) => fail(&e),
            }
        }
        Cmd::Table1(a) => canned(&a, report::cmd_table1),
        Cmd::Table2(a) => canned(&a, report::cmd_table2),
        Cmd::Figure1(a) => canned(&a, report::cmd_figure1),
        Cmd::Selftest(a) => {
            let kernel = if a.inject_fault {
                selftest::faulty_kernel
            } else {
                selftest::library_kernel
            };
            let r = selftest::run_selftest(&SelftestConfig::with_cases(a.seed, a.cases), kernel);
            for line in r.lines() {
                println!("{line}");
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
