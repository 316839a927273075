//! Squarefree values along arithmetic progressions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::constants::pi_squared;
use crate::arith::factor::primes_up_to;
use crate::arith::{factorize, is_squarefree_integer, FieldElement, Rational};
use crate::error::{domain, Error, Result};
use crate::progression::ArithmeticProgression;

/// Largest `x` accepted by [`squarefree_density`].
pub const DENSITY_LIMIT: u64 = 100_000_000;

const SEGMENT: u64 = 1 << 20;

/// Squarefree counts for `a + b k`, `0 <= k <= x`, against the predicted density.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub a: u64,
    pub b: u64,
    pub x: u64,
    pub count: u64,
    /// `count / (x + 1)`.
    pub ratio: Rational,
    /// `6/π² · Π_{p | b} (1 - p^-2)^-1`, accurate to well beyond 20 digits.
    pub predicted: Rational,
    pub abs_error: Rational,
}

/// Density constant for squarefree values of `a + b k` with `gcd(a, b) = 1`.
pub fn predicted_density(b: u64) -> Result<Rational> {
    let mut c = Rational::from_integer(6.into()) / pi_squared();
    if b > 1 {
        for (p, _) in factorize(&Rational::from_integer(b.into()))?.iter() {
            let p2 = Rational::from_integer(BigInt::from(p) * p);
            c = c * &p2 / (&p2 - Rational::one());
        }
    }
    Ok(c)
}

fn isqrt(n: u128) -> u64 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r as u64
}

fn mod_inverse(a: u128, m: u128) -> u128 {
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i128) as u128
}

/// Counts `k <= x` with `a + b k` squarefree by sieving out multiples of `p²`.
///
/// Requires `b >= 1` and `gcd(a, b) = 1`. Zero is not squarefree, one is.
pub fn squarefree_density(a: u64, b: u64, x: u64) -> Result<DensityReport> {
    if b == 0 {
        return domain("b must be at least 1");
    }
    if a.gcd(&b) != 1 {
        return domain(format!("gcd({a}, {b}) != 1"));
    }
    if x > DENSITY_LIMIT {
        return Err(Error::CostGuard(format!("x = {x} exceeds {DENSITY_LIMIT}")));
    }
    let top = a as u128 + b as u128 * x as u128;
    let primes = primes_up_to(isqrt(top));
    // First k with p² | a + b k, per prime not dividing b.
    let residues: Vec<(u128, u128)> = primes
        .iter()
        .filter(|&&p| !b.is_multiple_of(p))
        .map(|&p| {
            let p2 = p as u128 * p as u128;
            let inv = mod_inverse(b as u128 % p2, p2);
            let neg_a = (p2 - a as u128 % p2) % p2;
            (p2, neg_a * inv % p2)
        })
        .collect();

    let mut count = 0u64;
    let mut lo = 0u64;
    let mut marked = vec![false; SEGMENT as usize];
    loop {
        let hi = (lo + SEGMENT - 1).min(x);
        let len = (hi - lo + 1) as usize;
        marked[..len].iter_mut().for_each(|m| *m = false);
        for &(p2, k0) in &residues {
            let lo128 = lo as u128;
            let mut k = if k0 >= lo128 {
                k0
            } else {
                k0 + (lo128 - k0).div_ceil(p2) * p2
            };
            while k <= hi as u128 {
                marked[(k - lo128) as usize] = true;
                k += p2;
            }
        }
        count += marked[..len].iter().filter(|m| !**m).count() as u64;
        if hi == x {
            break;
        }
        lo = hi + 1;
    }
    if a == 0 && residues.is_empty() {
        // value 0 at k = 0 was not sieved (no primes below sqrt(top)).
        count -= 1;
    }
    let ratio = Rational::new(count.into(), (x + 1).into());
    let predicted = predicted_density(b)?;
    let abs_error = (&ratio - &predicted).abs();
    Ok(DensityReport {
        a,
        b,
        x,
        count,
        ratio,
        predicted,
        abs_error,
    })
}

/// `B^(n)`: the terms `v + d h` of `A^(n)` with `a + b h` squarefree, where
/// `v / d = a / b` in lowest terms.
#[derive(Debug, Clone)]
pub struct FilterReport {
    pub a: BigInt,
    pub b: BigInt,
    pub n: usize,
    /// `(h, v + d h)` for every kept term.
    pub kept: Vec<(u64, FieldElement)>,
}

impl FilterReport {
    /// `|B^(n)| / n`.
    pub fn fraction(&self) -> Rational {
        Rational::new(self.kept.len().into(), self.n.max(1).into())
    }
}

pub fn squarefree_filter(ap: &ArithmeticProgression, n: usize) -> Result<FilterReport> {
    let t = ap.start().checked_div(ap.difference())?;
    let Some(t) = t.as_rational().cloned() else {
        return domain(format!("v/d = {t} is irrational; the squarefree filter needs rational v/d"));
    };
    let (a, b) = (t.numer().clone(), t.denom().clone());
    let mut kept = Vec::new();
    for (h, term) in ap.prefix(n).into_iter().enumerate() {
        let value = &a + &b * BigInt::from(h);
        if is_squarefree_integer(&Rational::from_integer(value))? {
            kept.push((h as u64, term));
        }
    }
    Ok(FilterReport { a, b, n, kept })
}

/// All `j <= j_max` with `b s r^j` a squarefree integer.
///
/// Along a prime with `v_p(r) != 0` the valuation `v_p(b s) + j v_p(r)` is
/// strictly monotone in `j`, so it is 0 or 1 for at most two `j`; a third hit
/// is reported as [`Error::Invariant`].
pub fn squarefree_exponent_scan(
    s: &Rational,
    r: &Rational,
    b: &BigInt,
    j_max: u32,
) -> Result<Vec<u32>> {
    if !s.is_positive() {
        return domain(format!("s must be positive, got {s}"));
    }
    if *r <= Rational::one() {
        return domain(format!("r must exceed 1, got {r}"));
    }
    if !b.is_positive() {
        return domain(format!("b must be positive, got {b}"));
    }
    let base = factorize(&Rational::from_integer(b.clone()))?.mul(&factorize(s)?);
    let step = factorize(r)?;
    let hits: Vec<u32> = (0..=j_max)
        .filter(|&j| base.mul(&step.pow(j as i64)).is_squarefree_integer())
        .collect();
    if hits.len() > 2 {
        return Err(Error::Invariant(format!(
            "b*s*r^j is a squarefree integer for j in {hits:?}: more than two exponents"
        )));
    }
    Ok(hits)
}
