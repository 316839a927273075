//! Certified rational enclosures of the constants the audits compare against.

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::rational::parse_rational;
use crate::arith::Rational;

/// π truncated after 50 decimals; the next digit is 5, so π lies strictly
/// inside `[PI_TRUNCATED, PI_TRUNCATED + 10^-50]`.
const PI_TRUNCATED: &str = "314159265358979323846264338327950288419716939937510";
const PI_DECIMALS: u32 = 50;

/// Lower and upper rational bounds for π.
pub fn pi_enclosure() -> (Rational, Rational) {
    let scale = BigInt::from(10u32).pow(PI_DECIMALS);
    let lo = Rational::new(
        parse_rational(PI_TRUNCATED).unwrap().to_integer(),
        scale.clone(),
    );
    let hi = &lo + Rational::new(BigInt::one(), scale);
    (lo, hi)
}

/// Lower and upper rational bounds for π².
pub fn pi_squared_enclosure() -> (Rational, Rational) {
    let (lo, hi) = pi_enclosure();
    (&lo * &lo, &hi * &hi)
}

/// Midpoint of the π² enclosure; within `10^-48` of π².
pub fn pi_squared() -> Rational {
    let (lo, hi) = pi_squared_enclosure();
    (lo + hi) / Rational::from_integer(2.into())
}

/// Decides `numerator / denominator >= c / π²` for positive integers, i.e.
/// `numerator * π² >= c * denominator`, from the enclosure alone.
///
/// Returns `None` only if the enclosure cannot separate the two sides.
pub fn at_least_over_pi_squared(value: &Rational, c: &Rational) -> Option<bool> {
    let (lo, hi) = pi_squared_enclosure();
    if value * &lo >= *c {
        Some(true)
    } else if value * &hi < *c {
        Some(false)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, to_decimal};

    #[test]
    fn enclosure_brackets_known_digits() {
        let (lo, hi) = pi_enclosure();
        assert!(lo < hi);
        assert_eq!(to_decimal(&lo, 20), "3.14159265358979323846");
        let p2 = pi_squared();
        assert_eq!(to_decimal(&p2, 30), "9.869604401089358618834490999876");
    }

    #[test]
    fn separation() {
        // 10 / pi^2 ~ 1.0132, so measured 1 fails and 2 holds.
        assert_eq!(at_least_over_pi_squared(&int(1), &int(10)), Some(false));
        assert_eq!(at_least_over_pi_squared(&int(2), &int(10)), Some(true));
        assert_eq!(at_least_over_pi_squared(&int(1), &int(9)), Some(true));
    }
}
