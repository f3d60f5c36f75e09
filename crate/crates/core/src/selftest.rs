//! Randomized property suites for the kernel, the decimal parser and the
//! hex format, checked against exact arithmetic.
//!
//! Kernel results are checked against dyadic arithmetic: every finite
//! binary64 is `m·2^e`, so sums and products of two of them are exact
//! dyadics, and a quotient `a/b` is compared through `c·b` versus `a`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decimal::{decimal_to_rational, parse_decimal};
use crate::error::{Error, Result};
use crate::float_kernel::{next_down, next_up, to_hex, ArithOp, Binary64, RoundingMode};
use crate::rational::{decompose, ExactRational};

pub const DEFAULT_SEED: u64 = 0x5eed_1990;
pub const DEFAULT_CASES: usize = 300_000;

const CHUNK: usize = 2048;

/// The arithmetic under test: `op(a, b)` rounded in `mode`.
pub type KernelFn = fn(ArithOp, f64, f64, RoundingMode) -> Result<f64>;

pub fn library_kernel(op: ArithOp, a: f64, b: f64, mode: RoundingMode) -> Result<f64> {
    op.apply(a, b, mode)
}

/// A kernel with a planted bug (round-up of products returns the nearest
/// result), used to show that the suite detects a broken kernel.
#[doc(hidden)]
pub fn faulty_kernel(op: ArithOp, a: f64, b: f64, mode: RoundingMode) -> Result<f64> {
    match (op, mode) {
        (ArithOp::Mul, RoundingMode::TowardPosInf) => op.apply(a, b, RoundingMode::Nearest),
        _ => op.apply(a, b, mode),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Kernel checks, one per `(a, b, op, mode)`.
    pub kernel_cases: usize,
    pub parser_cases: usize,
    pub hex_cases: usize,
}

impl SelftestConfig {
    /// Kernel and hex suites get `cases` checks, the parser a tenth.
    pub fn with_cases(seed: u64, cases: usize) -> Self {
        SelftestConfig {
            seed,
            kernel_cases: cases,
            parser_cases: cases.div_ceil(10),
            hex_cases: cases,
        }
    }
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self::with_cases(DEFAULT_SEED, DEFAULT_CASES)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    /// First counterexample in generation order.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failure.is_none())
    }

    pub fn total(&self) -> usize {
        self.suites.iter().map(|s| s.checked).sum()
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("seed {}", self.seed)];
        for s in &self.suites {
            match &s.failure {
                None => out.push(format!("{}: {} cases ok", s.name, s.checked)),
                Some(f) => out.push(format!(
                    "{}: FAILED ({} cases generated), first counterexample: {f}",
                    s.name, s.checked
                )),
            }
        }
        if self.passed() {
            out.push(format!("all {} properties passed", self.total()));
        }
        out
    }
}

pub fn run_selftest(cfg: &SelftestConfig, kernel: KernelFn) -> SelftestReport {
    SelftestReport {
        seed: cfg.seed,
        suites: vec![
            kernel_suite(cfg.seed, cfg.kernel_cases, kernel),
            parser_suite(cfg.seed, cfg.parser_cases),
            hex_suite(cfg.seed, cfg.hex_cases),
        ],
    }
}

/// Runs `units` generated checks in deterministic chunks; each chunk has its
/// own ChaCha stream so results do not depend on the thread count.
fn chunked<F>(name: &'static str, seed: u64, units: usize, per_unit: usize, f: F) -> SuiteResult
where
    F: Fn(&mut ChaCha8Rng) -> std::result::Result<(), String> + Sync,
{
    let chunks = units.div_ceil(CHUNK);
    let failure = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(units - c * CHUNK);
            (0..len).find_map(|_| f(&mut rng).err())
        })
        .find_first(Option::is_some)
        .flatten();
    SuiteResult {
        name,
        checked: units * per_unit,
        failure,
    }
}

fn kernel_suite(seed: u64, cases: usize, kernel: KernelFn) -> SuiteResult {
    let triples = cases.div_ceil(3);
    chunked("kernel", seed, triples, 3, |rng| {
        let (a, b) = operands(rng);
        let op = ArithOp::ALL[rng.gen_range(0..4)];
        check_kernel_case(kernel, op, a, b)
    })
}

fn finite_bits(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let x = f64::from_bits(rng.gen());
        if x.is_finite() {
            return x;
        }
    }
}

fn with_exponent(rng: &mut ChaCha8Rng, lo: u64, hi: u64) -> f64 {
    let sign = (rng.gen::<u64>() & 1) << 63;
    let exp = rng.gen_range(lo..=hi) << 52;
    let frac = rng.gen::<u64>() & ((1 << 52) - 1);
    f64::from_bits(sign | exp | frac)
}

fn operands(rng: &mut ChaCha8Rng) -> (f64, f64) {
    match rng.gen_range(0..7) {
        0 => (finite_bits(rng), finite_bits(rng)),
        1 => (rng.gen::<f64>(), rng.gen::<f64>()),
        2 => {
            // neighbours: cancellation and exact cases
            let a = finite_bits(rng);
            let step = rng.gen_range(-4i64..=4);
            let b = f64::from_bits(a.to_bits().wrapping_add_signed(step));
            (a, if b.is_finite() { b } else { a })
        }
        3 => (finite_bits(rng), with_exponent(rng, 1020, 1026)),
        4 => (with_exponent(rng, 0, 60), with_exponent(rng, 0, 1100)),
        5 => (
            with_exponent(rng, 1980, 2046),
            with_exponent(rng, 900, 1100),
        ),
        _ => {
            let small = |rng: &mut ChaCha8Rng| rng.gen_range(-64i32..=64) as f64;
            (small(rng), small(rng))
        }
    }
}

/// `m · 2^e`.
#[derive(Clone, Debug)]
struct Dyadic {
    m: BigInt,
    e: i64,
}

impl Dyadic {
    fn of(x: f64) -> Self {
        let (m, e) = decompose(x);
        Dyadic {
            m: m.into(),
            e: e as i64,
        }
    }

    fn pow2(e: i64) -> Self {
        Dyadic { m: 1.into(), e }
    }

    fn add(&self, o: &Dyadic) -> Dyadic {
        let e = self.e.min(o.e);
        Dyadic {
            m: (&self.m << (self.e - e) as u64) + (&o.m << (o.e - e) as u64),
            e,
        }
    }

    fn neg(&self) -> Dyadic {
        Dyadic {
            m: -&self.m,
            e: self.e,
        }
    }

    fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic {
            m: &self.m * &o.m,
            e: self.e + o.e,
        }
    }

    fn cmp(&self, o: &Dyadic) -> Ordering {
        self.add(&o.neg()).m.sign().cmp(&num_bigint::Sign::NoSign)
    }
}

/// Exact value `num/den` with `den > 0`.
struct Exact {
    num: Dyadic,
    den: Dyadic,
}

impl Exact {
    fn of(op: ArithOp, a: f64, b: f64) -> Exact {
        let (da, db) = (Dyadic::of(a), Dyadic::of(b));
        let one = Dyadic::pow2(0);
        match op {
            ArithOp::Add => Exact {
                num: da.add(&db),
                den: one,
            },
            ArithOp::Sub => Exact {
                num: da.add(&db.neg()),
                den: one,
            },
            ArithOp::Mul => Exact {
                num: da.mul(&db),
                den: one,
            },
            ArithOp::Div if db.m.is_negative() => Exact {
                num: da.neg(),
                den: db.neg(),
            },
            ArithOp::Div => Exact { num: da, den: db },
        }
    }

    /// Sign of `c − v` for a dyadic `c`.
    fn cmp_at(&self, c: &Dyadic) -> Ordering {
        c.mul(&self.den).cmp(&self.num)
    }

    fn cmp_float(&self, c: f64) -> Ordering {
        if c.is_infinite() {
            return if c > 0.0 {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        self.cmp_at(&Dyadic::of(c))
    }

    fn is_zero(&self) -> bool {
        self.num.m.is_zero()
    }
}

/// 2^1024 − 2^970: the nearest-mode overflow threshold.
fn overflow_threshold() -> Dyadic {
    Dyadic::pow2(1024).add(&Dyadic::pow2(970).neg())
}

fn check_kernel_case(
    kernel: KernelFn,
    op: ArithOp,
    a: f64,
    b: f64,
) -> std::result::Result<(), String> {
    let got = RoundingMode::ALL.map(|m| kernel(op, a, b, m));
    let describe = |mode: RoundingMode, what: &str| {
        format!(
            "{} {} {} in {}: {what} (results {:?})",
            to_hex(a),
            op.symbol(),
            to_hex(b),
            mode.name(),
            got.clone().map(|r| r.map(to_hex))
        )
    };
    if op == ArithOp::Div && b == 0.0 {
        for (mode, r) in RoundingMode::ALL.into_iter().zip(&got) {
            if *r != Err(Error::DivByZero) {
                return Err(describe(mode, "expected div_by_zero"));
            }
        }
        return Ok(());
    }
    let v = Exact::of(op, a, b);
    let max = Dyadic::of(f64::MAX);
    let h = overflow_threshold();
    let above_max = v.cmp_at(&max) == Ordering::Less;
    let below_min = v.cmp_at(&max.neg()) == Ordering::Greater;
    let rn_overflows = v.cmp_at(&h) != Ordering::Greater || v.cmp_at(&h.neg()) != Ordering::Less;

    for (mode, r) in RoundingMode::ALL.into_iter().zip(&got) {
        let expect_overflow = match mode {
            RoundingMode::Nearest => rn_overflows,
            RoundingMode::TowardPosInf => above_max,
            RoundingMode::TowardNegInf => below_min,
        };
        let c = match r {
            Err(Error::Overflow) if expect_overflow => continue,
            Err(e) => return Err(describe(mode, &format!("unexpected error {}", e.code()))),
            Ok(_) if expect_overflow => return Err(describe(mode, "expected overflow")),
            Ok(c) if !c.is_finite() => return Err(describe(mode, "non-finite result")),
            Ok(c) => *c,
        };
        let here = v.cmp_float(c);
        let ok = match mode {
            RoundingMode::TowardNegInf => {
                here != Ordering::Greater && v.cmp_float(next_up(c)) == Ordering::Greater
            }
            RoundingMode::TowardPosInf => {
                here != Ordering::Less && v.cmp_float(next_down(c)) == Ordering::Less
            }
            RoundingMode::Nearest => nearest_ok(&v, c, here),
        };
        if !ok {
            return Err(describe(mode, "not correctly rounded"));
        }
        if let Some(why) = zero_sign_violation(op, a, b, &v, c, mode) {
            return Err(describe(mode, why));
        }
    }
    if let (Ok(lo), Ok(hi)) = (got[1].clone(), got[2].clone()) {
        if lo != hi && next_up(lo) != hi {
            return Err(describe(
                RoundingMode::TowardPosInf,
                "gap wider than one ulp",
            ));
        }
    }
    Ok(())
}

/// `c` is a nearest float to `v`, with ties going to the even significand.
fn nearest_ok(v: &Exact, c: f64, here: Ordering) -> bool {
    if here == Ordering::Equal {
        return true;
    }
    let other = if here == Ordering::Less {
        next_up(c)
    } else {
        next_down(c)
    };
    if v.cmp_float(other) == here {
        // v is not between c and its neighbour
        return false;
    }
    let other_d = if other.is_infinite() {
        Dyadic::pow2(1024)
    } else {
        Dyadic::of(other)
    };
    // Compare 2v with c + other: the midpoint test.
    let mid = Dyadic::of(c).add(&other_d);
    let twice_v = Exact {
        num: v.num.mul(&Dyadic::pow2(1)),
        den: v.den.clone(),
    };
    match twice_v.cmp_at(&mid) {
        Ordering::Equal => c.to_bits() & 1 == 0,
        side => side == here.reverse(),
    }
}

fn zero_sign_violation(
    op: ArithOp,
    a: f64,
    b: f64,
    v: &Exact,
    c: f64,
    mode: RoundingMode,
) -> Option<&'static str> {
    if c != 0.0 {
        return None;
    }
    let negative = c.is_sign_negative();
    match op {
        ArithOp::Mul | ArithOp::Div => (negative != (a.is_sign_negative() != b.is_sign_negative()))
            .then_some("wrong zero sign"),
        ArithOp::Add | ArithOp::Sub => {
            let b = if op == ArithOp::Sub { -b } else { b };
            if !v.is_zero() {
                return Some("zero result for nonzero sum");
            }
            let want = if a == 0.0 && b == 0.0 && a.is_sign_negative() == b.is_sign_negative() {
                a.is_sign_negative()
            } else {
                mode == RoundingMode::TowardNegInf
            };
            (negative != want).then_some("wrong zero sign")
        }
    }
}

fn random_numeral(rng: &mut ChaCha8Rng) -> String {
    let len = rng.gen_range(1..=25);
    let digits: String = (0..len)
        .map(|_| char::from(b'0' + rng.gen_range(0..10u8)))
        .collect();
    let point = rng.gen_range(0..=len);
    let sign = if rng.gen_bool(0.5) { "-" } else { "" };
    let exp = match rng.gen_range(0..4) {
        // keeps |v| below f64::MAX even with 25 integer digits
        0 => rng.gen_range(-340..=280),
        1 => rng.gen_range(-20..=20),
        _ => 0,
    };
    let (int, frac) = digits.split_at(point);
    let mut s = format!("{sign}{}", if int.is_empty() { "0" } else { int });
    if !frac.is_empty() {
        s.push('.');
        s.push_str(frac);
    }
    if exp != 0 {
        s.push_str(&format!("e{exp}"));
    }
    s
}

fn check_numeral(text: &str) -> std::result::Result<(), String> {
    let fail = |what: &str| format!("{text:?}: {what}");
    let v = decimal_to_rational(text).map_err(|e| fail(&e.to_string()))?;
    let parse = |m| parse_decimal(text, m).map_err(|e| fail(&e.to_string()));
    let lift = |x: f64| ExactRational::from_f64(x).expect("finite");
    let (lo, hi, near) = (
        parse(RoundingMode::TowardNegInf)?,
        parse(RoundingMode::TowardPosInf)?,
        parse(RoundingMode::Nearest),
    );
    if lo.is_infinite() || hi.is_infinite() {
        return Err(fail("non-finite directed result"));
    }
    let (l, h) = (lift(lo), lift(hi));
    if !(l <= v && v <= h) {
        return Err(fail("directed results do not bracket"));
    }
    let representable = l == v;
    if representable != (h == v) || representable != (lo == hi) {
        return Err(fail("mode collapse violated"));
    }
    if !representable && next_up(lo) != hi {
        return Err(fail("directed results not adjacent"));
    }
    let native: f64 = text
        .parse()
        .expect("native parser accepts the grammar subset");
    match near {
        Ok(x) if x.to_bits() == native.to_bits() => Ok(()),
        other => Err(fail(&format!(
            "nearest {other:?} differs from native {native:e}"
        ))),
    }
}

fn parser_suite(seed: u64, cases: usize) -> SuiteResult {
    chunked("parser", seed ^ 0x9a75e, cases, 1, |rng| {
        check_numeral(&random_numeral(rng))
    })
}

fn hex_suite(seed: u64, cases: usize) -> SuiteResult {
    chunked("hex", seed ^ 0x4e8, cases, 1, |rng| {
        let bits: u64 = rng.gen();
        let text = Binary64::from_bits(bits).to_hex();
        match Binary64::from_hex(&text) {
            Ok(b) if b.bits() == bits && text.len() == 16 && text == text.to_lowercase() => Ok(()),
            other => Err(format!("{bits:016x} → {text:?} → {other:?}")),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let r = run_selftest(&SelftestConfig::with_cases(1, 20_000), library_kernel);
        assert!(r.passed(), "{:#?}", r.lines());
        assert_eq!(
            r.lines().last().unwrap(),
            &format!("all {} properties passed", r.total())
        );
    }

    #[test]
    fn planted_fault_is_caught() {
        let r = run_selftest(&SelftestConfig::with_cases(1, 20_000), faulty_kernel);
        assert!(!r.passed());
        let msg = r.suites[0].failure.as_ref().unwrap();
        assert!(msg.contains(" * ") && msg.contains(" in up"), "{msg}");
    }

    #[test]
    fn deterministic_counterexample() {
        let cfg = SelftestConfig::with_cases(3, 30_000);
        assert_eq!(
            run_selftest(&cfg, faulty_kernel),
            run_selftest(&cfg, faulty_kernel)
        );
    }

    #[test]
    fn oracle_sanity() {
        // 0.1 + 0.2 is inexact: RD and RU differ by one ulp and RN is RU.
        assert!(check_kernel_case(library_kernel, ArithOp::Add, 0.1, 0.2).is_ok());
        let v = Exact::of(ArithOp::Add, 0.1, 0.2);
        assert_eq!(v.cmp_float(0.30000000000000004), Ordering::Greater);
        assert_eq!(v.cmp_float(next_down(0.30000000000000004)), Ordering::Less);
        // A wrong kernel is rejected.
        let wrong: KernelFn = |op, a, b, m| {
            op.apply(a, b, m).map(|x| {
                if m == RoundingMode::Nearest {
                    next_up(x)
                } else {
                    x
                }
            })
        };
        assert!(check_kernel_case(wrong, ArithOp::Add, 0.1, 0.2).is_err());
        assert!(check_numeral("0.1").is_ok());
        assert!(check_numeral("1e-330").is_ok());
    }
}
