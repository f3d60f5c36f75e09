//! Binary64 arithmetic correctly rounded under round-to-nearest-even,
//! round toward −∞ and round toward +∞.
//!
//! The hardware only ever runs in its default round-to-nearest mode. Each
//! operation first computes the nearest result `p` and then decides, from an
//! exactly computed residual, on which side of `p` the exact real result
//! lies:
//!
//! * addition: `TwoSum` (magnitude-ordered Fast2Sum), always exact;
//! * multiplication: `fma(a, b, -p)`;
//! * division: `fma(-q, b, a)`, whose sign times the sign of `b` is the
//!   sign of `a/b - q`.
//!
//! When the residual could have been lost to underflow the operands are
//! rescaled by a power of two, which keeps the sign of the residual exact. A
//! directed result is then `p` or one of its neighbours.
//!
//! No floating-point environment state is touched, so everything here is a
//! pure function and safe to call from any thread.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const MANTISSA_MASK: u64 = (1 << 52) - 1;
const HIDDEN_BIT: u64 = 1 << 52;
/// Lowest bit position a binary64 can hold (the smallest subnormal is 2^-1074).
const MIN_LSB: i32 = -1074;

/// A binary64 value addressed by its exact bit pattern.
///
/// Equality is bitwise, so `+0.0` and `-0.0` are different values and a NaN
/// equals itself. The canonical text form is 16 lowercase hex digits.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Binary64(u64);

impl Binary64 {
    pub const fn from_bits(bits: u64) -> Self {
        Binary64(bits)
    }

    pub fn from_f64(x: f64) -> Self {
        Binary64(x.to_bits())
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        f64::from_bits(self.0)
    }

    pub fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }

    pub fn to_hex(self) -> String {
        format!("{:016x}", self.0)
    }

    pub fn from_hex(text: &str) -> Result<Self> {
        if text.len() != 16 || !text.bytes().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!(
                "expected exactly 16 hex digits, got {text:?}"
            )));
        }
        u64::from_str_radix(text, 16)
            .map(Binary64)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

impl From<f64> for Binary64 {
    fn from(x: f64) -> Self {
        Binary64::from_f64(x)
    }
}

impl From<Binary64> for f64 {
    fn from(x: Binary64) -> Self {
        x.to_f64()
    }
}

impl fmt::Debug for Binary64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Binary64({:016x} = {:e})", self.0, self.to_f64())
    }
}

impl fmt::Display for Binary64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl FromStr for Binary64 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Binary64::from_hex(s)
    }
}

pub fn to_hex(x: f64) -> String {
    Binary64::from_f64(x).to_hex()
}

pub fn from_hex(text: &str) -> Result<f64> {
    Binary64::from_hex(text).map(Binary64::to_f64)
}

/// Rounding direction. `Nearest` is round-to-nearest, ties-to-even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RoundingMode {
    Nearest,
    TowardNegInf,
    TowardPosInf,
}

impl RoundingMode {
    pub const ALL: [RoundingMode; 3] = [
        RoundingMode::Nearest,
        RoundingMode::TowardNegInf,
        RoundingMode::TowardPosInf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RoundingMode::Nearest => "nearest",
            RoundingMode::TowardNegInf => "down",
            RoundingMode::TowardPosInf => "up",
        }
    }
}

impl fmt::Display for RoundingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RoundingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nearest" | "rn" => Ok(RoundingMode::Nearest),
            "down" | "rd" | "toward-neg-inf" => Ok(RoundingMode::TowardNegInf),
            "up" | "ru" | "toward-pos-inf" => Ok(RoundingMode::TowardPosInf),
            other => Err(Error::Parse(format!("unknown rounding mode {other:?}"))),
        }
    }
}

/// Result of an error-free transformation: `primary + residual` is the exact
/// real result of the originating operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualPair {
    pub primary: f64,
    pub residual: f64,
}

/// The four basic operations, for callers that select one at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ArithOp {
    pub const ALL: [ArithOp; 4] = [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div];

    pub fn apply(self, a: f64, b: f64, mode: RoundingMode) -> Result<f64> {
        match self {
            ArithOp::Add => dir_add(a, b, mode),
            ArithOp::Sub => dir_sub(a, b, mode),
            ArithOp::Mul => dir_mul(a, b, mode),
            ArithOp::Div => dir_div(a, b, mode),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            ArithOp::Add => '+',
            ArithOp::Sub => '-',
            ArithOp::Mul => '*',
            ArithOp::Div => '/',
        }
    }
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Invalid)
    }
}

/// 2^k for k in [-1074, 1023].
pub(crate) fn pow2(k: i32) -> f64 {
    debug_assert!((MIN_LSB..=1023).contains(&k));
    if k >= -1022 {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (k - MIN_LSB))
    }
}

/// x · 2^k. Exact whenever the result is representable.
fn scale2(mut x: f64, mut k: i32) -> f64 {
    while k > 1000 {
        x *= pow2(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= pow2(-1000);
        k += 1000;
    }
    x * pow2(k)
}

/// floor(log2 |x|) for finite nonzero x.
fn exponent(x: f64) -> i32 {
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    if biased == 0 {
        MIN_LSB + 63 - (bits & MANTISSA_MASK).leading_zeros() as i32
    } else {
        biased - 1023
    }
}

/// Position of the lowest set bit of finite nonzero x: x is an odd multiple
/// of 2^lsb_exponent(x).
fn lsb_exponent(x: f64) -> i32 {
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let mantissa = bits & MANTISSA_MASK;
    if biased == 0 {
        MIN_LSB + mantissa.trailing_zeros() as i32
    } else {
        biased - 1075 + (mantissa | HIDDEN_BIT).trailing_zeros() as i32
    }
}

/// Split a total up-scaling `total` between two operands so that neither
/// leaves the finite range.
fn split_scale(total: i32, x: f64, y: f64) -> (i32, i32) {
    let headroom = (1000 - exponent(x)).max(0);
    let sx = total.min(headroom);
    let sy = total - sx;
    debug_assert!(exponent(y) + sy <= 1000);
    (sx, sy)
}

fn sign_of(x: f64) -> Ordering {
    x.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
}

fn product_sign(a: f64, b: f64) -> Ordering {
    if a.is_sign_negative() == b.is_sign_negative() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Sign of `a·b - p`, where `p = RN(a·b)` is finite.
fn mul_residual_sign(a: f64, b: f64, p: f64) -> Ordering {
    if a == 0.0 || b == 0.0 {
        return Ordering::Equal;
    }
    if p == 0.0 {
        // Underflow to zero: the residual is the whole (nonzero) product.
        return product_sign(a, b);
    }
    let e = a.mul_add(b, -p);
    if e != 0.0 {
        return sign_of(e);
    }
    let lsb = lsb_exponent(a) + lsb_exponent(b);
    if lsb >= MIN_LSB {
        return Ordering::Equal;
    }
    let total = MIN_LSB - lsb;
    let (sa, sb) = split_scale(total, a, b);
    sign_of(scale2(a, sa).mul_add(scale2(b, sb), -scale2(p, total)))
}

/// Sign of `a/b - q`, where `q = RN(a/b)` is finite and `b != 0`.
fn div_residual_sign(a: f64, b: f64, q: f64) -> Ordering {
    if a == 0.0 {
        return Ordering::Equal;
    }
    if q == 0.0 {
        return product_sign(a, b);
    }
    let flip = |o: Ordering| if b < 0.0 { o.reverse() } else { o };
    let r = (-q).mul_add(b, a);
    if r != 0.0 {
        return flip(sign_of(r));
    }
    let lsb = lsb_exponent(q) + lsb_exponent(b);
    if lsb >= MIN_LSB {
        return Ordering::Equal;
    }
    let total = MIN_LSB - lsb;
    let (sq, sb) = split_scale(total, q, b);
    let rs = (-scale2(q, sq)).mul_add(scale2(b, sb), scale2(a, total));
    flip(sign_of(rs))
}

/// Directed result when round-to-nearest overflowed: the exact magnitude is
/// then above `f64::MAX`, so only rounding toward zero stays finite.
pub(crate) fn overflowed(positive: bool, mode: RoundingMode) -> Result<f64> {
    match (mode, positive) {
        (RoundingMode::TowardNegInf, true) => Ok(f64::MAX),
        (RoundingMode::TowardPosInf, false) => Ok(f64::MIN),
        _ => Err(Error::Overflow),
    }
}

/// Move the nearest result one step in `mode`'s direction if the exact value
/// lies on that side of it.
fn adjust(nearest: f64, residual: Ordering, mode: RoundingMode) -> Result<f64> {
    let out = match (mode, residual) {
        (RoundingMode::TowardPosInf, Ordering::Greater) => next_up(nearest),
        (RoundingMode::TowardNegInf, Ordering::Less) => next_down(nearest),
        _ => nearest,
    };
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Overflow)
    }
}

/// Rounding error of `s = RN(a + b)`. Exact for all finite inputs.
fn sum_residual(a: f64, b: f64, s: f64) -> f64 {
    if a.abs() >= b.abs() {
        b - (s - a)
    } else {
        a - (s - b)
    }
}

pub fn two_sum(a: f64, b: f64) -> Result<ResidualPair> {
    check_finite(a)?;
    check_finite(b)?;
    let s = a + b;
    if !s.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(ResidualPair {
        primary: s,
        residual: sum_residual(a, b, s),
    })
}

/// `primary = RN(a·b)` and the exact residual `a·b - primary`.
///
/// Fails with [`Error::ResidualUnderflow`] when that residual lies below the
/// subnormal grid and so has no binary64 representation.
pub fn two_product(a: f64, b: f64) -> Result<ResidualPair> {
    check_finite(a)?;
    check_finite(b)?;
    let p = a * b;
    if !p.is_finite() {
        return Err(Error::Overflow);
    }
    if a == 0.0 || b == 0.0 {
        return Ok(ResidualPair {
            primary: p,
            residual: 0.0,
        });
    }
    if p == 0.0 {
        return Err(Error::ResidualUnderflow);
    }
    let lsb = lsb_exponent(a) + lsb_exponent(b);
    if lsb >= MIN_LSB {
        return Ok(ResidualPair {
            primary: p,
            residual: a.mul_add(b, -p),
        });
    }
    let total = MIN_LSB - lsb;
    let (sa, sb) = split_scale(total, a, b);
    let scaled = scale2(a, sa).mul_add(scale2(b, sb), -scale2(p, total));
    let residual = scale2(scaled, -total);
    if scale2(residual, total) != scaled {
        return Err(Error::ResidualUnderflow);
    }
    Ok(ResidualPair {
        primary: p,
        residual,
    })
}

pub fn dir_add(a: f64, b: f64, mode: RoundingMode) -> Result<f64> {
    check_finite(a)?;
    check_finite(b)?;
    let s = a + b;
    if s.is_infinite() {
        return overflowed(s > 0.0, mode);
    }
    if s == 0.0 {
        // Exact zero sum: same-signed zeros keep their sign, otherwise
        // the result is -0 toward -inf and +0 in the other modes.
        if a.is_sign_negative() == b.is_sign_negative() && a == 0.0 && b == 0.0 {
            return Ok(a);
        }
        return Ok(if mode == RoundingMode::TowardNegInf {
            -0.0
        } else {
            0.0
        });
    }
    adjust(s, sign_of(sum_residual(a, b, s)), mode)
}

pub fn dir_sub(a: f64, b: f64, mode: RoundingMode) -> Result<f64> {
    check_finite(b)?;
    dir_add(a, -b, mode)
}

pub fn dir_mul(a: f64, b: f64, mode: RoundingMode) -> Result<f64> {
    check_finite(a)?;
    check_finite(b)?;
    let p = a * b;
    if p.is_infinite() {
        return overflowed(product_sign(a, b) == Ordering::Greater, mode);
    }
    if mode == RoundingMode::Nearest {
        return Ok(p);
    }
    adjust(p, mul_residual_sign(a, b, p), mode)
}

pub fn dir_div(a: f64, b: f64, mode: RoundingMode) -> Result<f64> {
    check_finite(a)?;
    check_finite(b)?;
    if b == 0.0 {
        return Err(Error::DivByZero);
    }
    let q = a / b;
    if q.is_infinite() {
        return overflowed(product_sign(a, b) == Ordering::Greater, mode);
    }
    if mode == RoundingMode::Nearest {
        return Ok(q);
    }
    adjust(q, div_residual_sign(a, b, q), mode)
}

/// Smallest binary64 strictly greater than `x`. `next_up(f64::MAX)` is +∞.
pub fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

/// Largest binary64 strictly less than `x`.
pub fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

/// `(a + b) / 2` as `RN(a + b) · 0.5`.
///
/// Exact whenever `a + b` is representable, which holds for the two branches
/// of an averaged step since they sit a few ulps apart.
pub fn average2(a: f64, b: f64) -> Result<f64> {
    check_finite(a)?;
    check_finite(b)?;
    let s = a + b;
    if !s.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(s * 0.5)
}
