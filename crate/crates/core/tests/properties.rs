use dirorbit::decimal::{decimal_to_rational, parse_decimal, rational_to_binary64};
use dirorbit::float_kernel::{
    dir_add, dir_div, dir_mul, dir_sub, next_up, two_product, two_sum, RoundingMode,
};
use dirorbit::{Error, ExactRational};
use proptest::prelude::*;

fn q(x: f64) -> ExactRational {
    ExactRational::from_f64(x).unwrap()
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<u64>()
            .prop_map(f64::from_bits)
            .prop_filter("finite", |x| x.is_finite()),
        -1.0e3f64..1.0e3,
        (0u32..1 << 20).prop_map(|k| k as f64 / 1024.0),
    ]
}

fn check(
    exact: ExactRational,
    lo: Result<f64, Error>,
    hi: Result<f64, Error>,
    near: Result<f64, Error>,
) -> Result<(), TestCaseError> {
    let (Ok(lo), Ok(hi), Ok(near)) = (lo, hi, near) else {
        return Ok(());
    };
    prop_assert!(q(lo) <= exact && exact <= q(hi));
    prop_assert!(lo == hi || next_up(lo) == hi);
    prop_assert_eq!(lo == hi, q(lo) == exact);
    prop_assert!(near == lo || near == hi);
    if lo != hi {
        prop_assert_eq!(
            near,
            rational_to_binary64(&exact, RoundingMode::Nearest).unwrap()
        );
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4000))]

    #[test]
    fn directed_ops_bracket_exact_results(a in finite(), b in finite()) {
        use RoundingMode::*;
        let (ea, eb) = (q(a), q(b));
        check(&ea + &eb, dir_add(a, b, TowardNegInf), dir_add(a, b, TowardPosInf), dir_add(a, b, Nearest))?;
        check(&ea - &eb, dir_sub(a, b, TowardNegInf), dir_sub(a, b, TowardPosInf), dir_sub(a, b, Nearest))?;
        check(&ea * &eb, dir_mul(a, b, TowardNegInf), dir_mul(a, b, TowardPosInf), dir_mul(a, b, Nearest))?;
        if b != 0.0 {
            check(ea.checked_div(&eb).unwrap(), dir_div(a, b, TowardNegInf), dir_div(a, b, TowardPosInf), dir_div(a, b, Nearest))?;
        }
    }

    #[test]
    fn error_free_transformations_are_exact(a in finite(), b in finite()) {
        if let Ok(p) = two_sum(a, b) {
            prop_assert_eq!(q(p.primary) + q(p.residual), q(a) + q(b));
            prop_assert_eq!(p.primary, a + b);
        }
        match two_product(a, b) {
            Ok(p) => {
                prop_assert_eq!(q(p.primary) + q(p.residual), q(a) * q(b));
                prop_assert_eq!(p.primary, a * b);
            }
            Err(e) => prop_assert!(matches!(e, Error::Overflow | Error::ResidualUnderflow)),
        }
    }

    #[test]
    fn parser_brackets_numerals(int in "[0-9]{1,12}", frac in "[0-9]{0,12}", exp in -30i32..30) {
        let text = format!("{int}.{frac}e{exp}");
        let v = decimal_to_rational(&text).unwrap();
        let lo = parse_decimal(&text, RoundingMode::TowardNegInf).unwrap();
        let hi = parse_decimal(&text, RoundingMode::TowardPosInf).unwrap();
        prop_assert!(q(lo) <= v && v <= q(hi));
        prop_assert_eq!(lo == hi, q(lo) == v);
        prop_assert_eq!(parse_decimal(&text, RoundingMode::Nearest).unwrap(), text.parse::<f64>().unwrap());
    }
}
