//! Helpers around [`BigRational`], the exact scalar type used everywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = BigRational;

/// Builds `n/d` from machine integers.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`, with an optional leading sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    if num.is_empty() || den.is_empty() || den.starts_with(['+', '-']) {
        return Err(bad());
    }
    let digits = |x: &str| x.trim_start_matches(['+', '-']).bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) || num.trim_start_matches(['+', '-']).is_empty() {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The largest rational `g` such that every input is an integer multiple of `g`.
///
/// Zeros are ignored; returns `None` when all inputs are zero.
pub fn rational_gcd<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    let mut any = false;
    for x in xs {
        if x.is_zero() {
            continue;
        }
        any = true;
        num = num.gcd(x.numer());
        den = den.lcm(x.denom());
    }
    any.then(|| Rational::new(num, den))
}

/// `x` as a nonnegative machine integer, if it is one.
pub fn to_index(x: &Rational) -> Option<u64> {
    if !x.is_integer() || x.is_negative() {
        return None;
    }
    u64::try_from(x.numer()).ok()
}

/// Fixed-point decimal rendering truncated toward zero after `digits` places.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (a.numer() * &scale) / a.denom();
    let (whole, frac) = scaled.div_rem(&scale);
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&whole.to_string());
    if digits > 0 {
        s.push('.');
        let f = frac.to_string();
        s.push_str(&"0".repeat(digits - f.len()));
        s.push_str(&f);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("8/3").unwrap(), ratio(8, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational("+7").unwrap(), int(7));
        assert_eq!(parse_rational(" 0/5 ").unwrap(), int(0));
        for bad in ["", "1/0", "a", "1/-2", "1.5", "/3", "3/", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn format_round_trip() {
        for s in ["0", "-3", "5/7", "-22/9"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn gcd_of_rationals() {
        let xs = [ratio(1, 2), int(1), int(0)];
        assert_eq!(rational_gcd(&xs), Some(ratio(1, 2)));
        let ys = [ratio(2, 3), ratio(4, 5)];
        assert_eq!(rational_gcd(&ys), Some(ratio(2, 15)));
        assert_eq!(rational_gcd(&[int(0)]), None);
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal(&ratio(1, 3), 4), "0.3333");
        assert_eq!(to_decimal(&ratio(-5, 4), 3), "-1.250");
        assert_eq!(to_decimal(&ratio(1, 100), 1), "0.0");
        assert_eq!(to_decimal(&int(12), 0), "12");
    }
}
