//! Exact rational numbers, the ground truth every float result is measured
//! against.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(ExactRational(BigRational::new(numer, denom)))
    }

    /// Caller guarantees `gcd(numer, denom) == 1` and `denom > 0`.
    pub(crate) fn from_reduced(numer: BigInt, denom: BigInt) -> Self {
        debug_assert!(denom.is_positive());
        ExactRational(BigRational::new_raw(numer, denom))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    /// `m · 2^exp`, reduced by stripping common factors of two.
    pub fn from_dyadic(m: BigInt, exp: i64) -> Self {
        if m.is_zero() {
            return Self::zero();
        }
        if exp >= 0 {
            return Self::from_integer(m << exp as u64);
        }
        let tz = m.trailing_zeros().unwrap_or(0).min((-exp) as u64);
        let numer = m >> tz;
        let denom = BigInt::one() << ((-exp) as u64 - tz);
        Self::from_reduced(numer, denom)
    }

    /// Exact value of a finite binary64. Signed zeros both map to 0.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Invalid);
        }
        let (mantissa, exp) = decompose(x);
        Ok(Self::from_dyadic(BigInt::from(mantissa), exp as i64))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// `|self - x|` for a finite float `x`.
    ///
    /// Avoids a general gcd: with `self = a/b` and `x = m·2^e`, the only
    /// common factors the difference can pick up are powers of two.
    pub fn abs_diff_f64(&self, x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::Invalid);
        }
        let (m, e) = decompose(x);
        let m = BigInt::from(m);
        let (a, b) = (self.numer(), self.denom());
        if e >= 0 {
            // a/b - m·2^e = (a - m·2^e·b) / b, and gcd(a - m·2^e·b, b) = gcd(a, b) = 1.
            let n = a - ((m << e as u64) * b);
            return Ok(Self::from_reduced(n.abs(), b.clone()));
        }
        // (a·2^k - m·b) / (b·2^k) with k = -e. No odd prime of b divides the
        // numerator, so only the common power of two has to go.
        let k = (-e) as u64;
        let n = ((a << k) - m * b).abs();
        if n.is_zero() {
            return Ok(Self::zero());
        }
        let d = b << k;
        let tz = n
            .trailing_zeros()
            .unwrap_or(0)
            .min(d.trailing_zeros().unwrap_or(0));
        Ok(Self::from_reduced(n >> tz, d >> tz))
    }

    /// Base-10 logarithm, from the leading bits of numerator and denominator.
    /// Accurate to about 1e-15 absolute; returns -inf for zero.
    pub fn log10(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (mn, en) = leading_bits(self.numer().magnitude());
        let (md, ed) = leading_bits(self.denom().magnitude());
        (mn / md).log10() + (en - ed) as f64 * std::f64::consts::LOG10_2
    }

    /// Scientific notation with `sig` significant digits, rounded half to
    /// even from the exact value, e.g. `9.33254e-18` for `sig = 6`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return format!("{:.*e}", sig - 1, 0.0);
        }
        let n = self.numer().abs();
        let d = self.denom();
        let ten = BigInt::from(10u32);
        // n/d >= 10^e, by cross-multiplication.
        let at_least = |e: i64| -> bool {
            let p = ten.pow(e.unsigned_abs() as u32);
            if e >= 0 {
                n >= d * p
            } else {
                &n * p >= *d
            }
        };
        // The float estimate can be off by one near powers of ten.
        let mut k = self.log10().floor() as i64;
        while !at_least(k) {
            k -= 1;
        }
        while at_least(k + 1) {
            k += 1;
        }
        let shift = sig as i64 - 1 - k;
        let p = ten.pow(shift.unsigned_abs() as u32);
        let (sn, sd) = if shift >= 0 {
            (&n * p, d.clone())
        } else {
            (n.clone(), d * p)
        };
        let (q, r) = sn.div_rem(&sd);
        let twice = r * 2u32;
        let mut digits = match twice.cmp(&sd) {
            Ordering::Greater => q + 1u32,
            Ordering::Equal if q.is_odd() => q + 1u32,
            _ => q,
        };
        if digits == ten.pow(sig as u32) {
            digits /= 10u32;
            k += 1;
        }
        let text = digits.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        if sig == 1 {
            format!("{sign}{text}e{k}")
        } else {
            format!("{sign}{}.{}e{k}", &text[..1], &text[1..])
        }
    }
}

/// `x = m · 2^e` with integer `m` (sign included) for finite x.
pub(crate) fn decompose(x: f64) -> (i64, i32) {
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & ((1 << 52) - 1)) as i64;
    let (m, e) = if biased == 0 {
        (frac, -1074)
    } else {
        (frac | (1 << 52), biased - 1075)
    };
    (if x.is_sign_negative() { -m } else { m }, e)
}

/// Top 64 bits of `n` as a float in [1, 2^64) plus the binary shift removed.
fn leading_bits(n: &BigUint) -> (f64, i64) {
    let bits = n.bits() as i64;
    let shift = (bits - 64).max(0);
    let top = (n >> shift as u64).to_u64().expect("fits in 64 bits");
    (top as f64, shift)
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numer().bits() + self.denom().bits() > 256 {
            write!(
                f,
                "ExactRational(~{} [{}/{} bits])",
                self.to_sci_string(6),
                self.numer().bits(),
                self.denom().bits()
            )
        } else {
            write!(f, "ExactRational({})", self.0)
        }
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl ExactRational {
    pub fn checked_div(&self, rhs: &ExactRational) -> Result<ExactRational> {
        if rhs.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(ExactRational(&self.0 / &rhs.0))
    }

    pub fn sign(&self) -> Sign {
        self.numer().sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into()).unwrap()
    }

    #[test]
    fn lift_matches_num_rational() {
        for x in [
            0.1,
            -0.3,
            1e-310,
            f64::MAX,
            f64::from_bits(1),
            0.0,
            -0.0,
            3.9,
        ] {
            let ours = ExactRational::from_f64(x).unwrap();
            assert_eq!(
                ours.as_big_rational(),
                &BigRational::from_f64(x).unwrap(),
                "{x}"
            );
        }
        assert_eq!(ExactRational::from_f64(f64::NAN), Err(Error::Invalid));
    }

    #[test]
    fn abs_diff_matches_general_subtraction() {
        let cases = [
            (q(29, 39), 29.0 / 39.0),
            (q(1, 3), 0.25),
            (q(-7, 5), 3.0),
            (q(1, 10), 0.1),
            (q(5, 1), 4.0),
            (q(3, 4), 0.5),
            (q(1, 6), 0.125),
            (q(5, 8), 0.375),
        ];
        for (v, x) in cases {
            let want = (&v - &ExactRational::from_f64(x).unwrap()).abs();
            let got = v.abs_diff_f64(x).unwrap();
            assert_eq!(got, want);
            // from_reduced must really be reduced
            assert_eq!(
                got.as_big_rational(),
                &BigRational::new(got.numer().clone(), got.denom().clone())
            );
        }
        assert!(q(1, 2).abs_diff_f64(0.5).unwrap().is_zero());
    }

    #[test]
    fn log10_values() {
        let e17 = ExactRational::new(1.into(), BigInt::from(10u32).pow(17)).unwrap();
        assert!((e17.log10() + 17.0).abs() < 1e-12);
        assert!((q(933254, 1).log10() - 933254f64.log10()).abs() < 1e-12);
        assert_eq!(ExactRational::zero().log10(), f64::NEG_INFINITY);
    }

    #[test]
    fn sci_string() {
        assert_eq!(q(1, 3).to_sci_string(6), "3.33333e-1");
        assert_eq!(q(2, 3).to_sci_string(6), "6.66667e-1");
        assert_eq!(q(9_999_995, 10_000_000).to_sci_string(6), "1.00000e0");
        assert_eq!(q(-125, 1000).to_sci_string(3), "-1.25e-1");
        assert_eq!(ExactRational::zero().to_sci_string(6), "0.00000e0");
        assert_eq!(q(1000, 1).to_sci_string(1), "1e3");
        // ties go to even
        assert_eq!(q(1000005, 1).to_sci_string(6), "1.00000e6");
        assert_eq!(q(1000015, 1).to_sci_string(6), "1.00002e6");
        let tiny = ExactRational::from_f64(9.33254e-18).unwrap();
        assert_eq!(tiny.to_sci_string(6), "9.33254e-18");
    }

    #[test]
    fn dyadic_reduction() {
        let v = ExactRational::from_dyadic(BigInt::from(12), -4);
        assert_eq!(v, q(3, 4));
        assert_eq!(ExactRational::from_dyadic(BigInt::from(3), 2), q(12, 1));
    }
}
