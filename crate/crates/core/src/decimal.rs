//! Decimal text to binary64, correctly rounded in any of the three modes.
//!
//! Accepted grammar (no surrounding whitespace):
//!
//! ```text
//! [+-] ( digits [ "." [digits] ] | "." digits ) [ (e|E) [+-] digits ]
//! ```
//!
//! The value is first converted to an exact rational; rounding compares that
//! rational against the binary64 grid with big-integer arithmetic only.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::float_kernel::{overflowed, pow2, RoundingMode};
use crate::rational::ExactRational;

/// Largest accepted decimal exponent of the leading digit, in either
/// direction. Beyond it the value is far outside the binary64 range.
pub const EXPONENT_CAP: i64 = 400;

/// A syntactically valid numeral: `(-1)^negative · digits · 10^exp10`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Numeral {
    negative: bool,
    digits: BigUint,
    exp10: i64,
    /// Decimal exponent of the leading nonzero digit.
    leading: i64,
}

fn parse_numeral(text: &str) -> Result<Numeral> {
    let err = || Error::Parse(format!("not a decimal numeral: {text:?}"));
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut negative = false;
    if let Some(&c) = bytes.first() {
        if c == b'+' || c == b'-' {
            negative = c == b'-';
            i = 1;
        }
    }
    let int_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    let int_part = &text[int_start..i];
    let mut frac_part = "";
    if i < bytes.len() && bytes[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        frac_part = &text[frac_start..i];
    }
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let mut exp: i64 = 0;
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        i += 1;
        let mut exp_negative = false;
        if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            exp_negative = bytes[i] == b'-';
            i += 1;
        }
        let exp_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            // Saturate; anything this large is out of range anyway.
            exp = (exp * 10 + (bytes[i] - b'0') as i64).min(1 << 40);
            i += 1;
        }
        if i == exp_start {
            return Err(err());
        }
        if exp_negative {
            exp = -exp;
        }
    }
    if i != bytes.len() {
        return Err(err());
    }

    let all: String = int_part.chars().chain(frac_part.chars()).collect();
    let significant = all.trim_start_matches('0');
    let digits = if significant.is_empty() {
        BigUint::zero()
    } else {
        significant.parse::<BigUint>().map_err(|_| err())?
    };
    let exp10 = exp - frac_part.len() as i64;
    let leading = exp10 + significant.len() as i64 - 1;
    Ok(Numeral {
        negative,
        digits,
        exp10,
        leading,
    })
}

fn numeral_to_rational(n: &Numeral) -> Result<ExactRational> {
    if n.digits.is_zero() {
        return Ok(ExactRational::zero());
    }
    if n.leading.abs() > EXPONENT_CAP {
        return Err(Error::Parse(format!(
            "decimal exponent {} outside ±{EXPONENT_CAP}",
            n.leading
        )));
    }
    let sign = if n.negative { Sign::Minus } else { Sign::Plus };
    let mag = BigInt::from_biguint(sign, n.digits.clone());
    let pow = BigInt::from(10u32).pow(n.exp10.unsigned_abs() as u32);
    if n.exp10 >= 0 {
        Ok(ExactRational::from_integer(mag * pow))
    } else {
        ExactRational::new(mag, pow)
    }
}

/// Exact value of a decimal numeral, e.g. `"-1.25e-2"` → −1/80.
pub fn decimal_to_rational(text: &str) -> Result<ExactRational> {
    numeral_to_rational(&parse_numeral(text)?)
}

/// Correctly rounded binary64 for decimal text under `mode`.
///
/// Numerals whose magnitude is beyond the exponent cap are still accepted:
/// they round like any value above `f64::MAX` or below the smallest
/// subnormal would. A zero numeral keeps its written sign.
pub fn parse_decimal(text: &str, mode: RoundingMode) -> Result<f64> {
    let n = parse_numeral(text)?;
    if n.digits.is_zero() {
        return Ok(if n.negative { -0.0 } else { 0.0 });
    }
    if n.leading > EXPONENT_CAP {
        return overflowed(!n.negative, mode);
    }
    if n.leading < -EXPONENT_CAP {
        // Any value in (0, 2^-1075) rounds the same way.
        let tiny_den = BigUint::one() << 1100u32;
        return round_ratio(n.negative, &BigUint::one(), &tiny_den, mode);
    }
    rational_to_binary64(&numeral_to_rational(&n)?, mode)
}

/// Correctly rounded binary64 for an exact rational under `mode`.
pub fn rational_to_binary64(v: &ExactRational, mode: RoundingMode) -> Result<f64> {
    let negative = v.is_negative();
    round_ratio(negative, v.numer().magnitude(), v.denom().magnitude(), mode)
}

/// Round `±num/den` (not necessarily reduced) to binary64.
pub(crate) fn round_ratio(
    negative: bool,
    num: &BigUint,
    den: &BigUint,
    mode: RoundingMode,
) -> Result<f64> {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return Ok(0.0);
    }
    // 2^e <= num/den < 2^(e+1)
    let mut e = num.bits() as i64 - den.bits() as i64;
    if cmp_with_pow2(num, den, e) == Ordering::Less {
        e -= 1;
    }
    if e > 1023 {
        return overflowed(!negative, mode);
    }
    // Weight of the last significand bit at this magnitude.
    let quantum = (e - 52).max(-1074);
    let (n, d) = if quantum >= 0 {
        (num.clone(), den << quantum as u64)
    } else {
        (num << (-quantum) as u64, den.clone())
    };
    let (m, rem) = n.div_rem(&d);
    let mut m = m.to_u64().expect("significand below 2^53");
    let away = match mode {
        RoundingMode::Nearest => match (&rem << 1u32).cmp(&d) {
            Ordering::Greater => true,
            Ordering::Equal => m & 1 == 1,
            Ordering::Less => false,
        },
        RoundingMode::TowardPosInf => !negative && !rem.is_zero(),
        RoundingMode::TowardNegInf => negative && !rem.is_zero(),
    };
    if away {
        m += 1;
    }
    // m <= 2^53, so the conversion and the power-of-two scaling are exact;
    // only a carry out of the top binade can overflow.
    let mag = (m as f64) * pow2(quantum as i32);
    if mag.is_infinite() {
        return Err(Error::Overflow);
    }
    Ok(if negative { -mag } else { mag })
}

fn cmp_with_pow2(num: &BigUint, den: &BigUint, e: i64) -> Ordering {
    if e >= 0 {
        num.cmp(&(den << e as u64))
    } else {
        (num << (-e) as u64).cmp(den)
    }
}
