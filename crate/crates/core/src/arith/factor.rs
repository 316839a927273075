//! Prime factorization of rationals, p-adic valuations and squarefree tests.
//!
//! Factoring is trial division by the primes below 2^16 followed, for any
//! remaining cofactor that fits in 64 bits, by a deterministic Miller-Rabin
//! test and Pollard's rho. Cofactors wider than 64 bits without small prime
//! factors are rejected as unsupported.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use crate::error::{domain, Error, Result};

const TRIAL_LIMIT: u64 = 1 << 16;

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// n odd composite, no factors below TRIAL_LIMIT.
fn pollard_rho(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64(n: u64, out: &mut BTreeMap<u64, i64>, sign: i64) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        *out.entry(n).or_insert(0) += sign;
        return;
    }
    let d = pollard_rho(n);
    factor_u64(d, out, sign);
    factor_u64(n / d, out, sign);
}

fn factor_natural(n: &BigUint, out: &mut BTreeMap<u64, i64>, sign: i64) -> Result<()> {
    let mut rest = n.clone();
    for &p in small_primes() {
        if rest.is_one() {
            return Ok(());
        }
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0i64;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e != 0 {
            *out.entry(p).or_insert(0) += sign * e;
        }
    }
    if rest.is_one() {
        return Ok(());
    }
    match rest.to_u64() {
        Some(c) => {
            factor_u64(c, out, sign);
            Ok(())
        }
        None => Err(Error::Unsupported(format!(
            "cannot factor {rest}: cofactor exceeds 64 bits"
        ))),
    }
}

/// Exact factorization of a positive rational: prime to nonzero exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FactorMap {
    entries: BTreeMap<u64, i64>,
}

impl FactorMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn exponent(&self, p: u64) -> i64 {
        self.entries.get(&p).copied().unwrap_or(0)
    }

    /// `(prime, exponent)` pairs in ascending prime order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.entries.iter().map(|(&p, &e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Factorization of the product.
    pub fn mul(&self, other: &FactorMap) -> FactorMap {
        let mut entries = self.entries.clone();
        for (p, e) in other.iter() {
            *entries.entry(p).or_insert(0) += e;
        }
        entries.retain(|_, e| *e != 0);
        FactorMap { entries }
    }

    /// Factorization of the `k`-th power.
    pub fn pow(&self, k: i64) -> FactorMap {
        if k == 0 {
            return FactorMap::new();
        }
        FactorMap {
            entries: self.entries.iter().map(|(&p, &e)| (p, e * k)).collect(),
        }
    }

    /// gcd of all exponents (0 for the empty map).
    pub fn exponent_gcd(&self) -> u64 {
        self.entries
            .values()
            .fold(0u64, |g, &e| g.gcd(&e.unsigned_abs()))
    }

    /// The rational this map represents.
    pub fn value(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in self.iter() {
            let pe = BigInt::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        Rational::new(num, den)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(|&e| e > 0)
    }

    /// True for positive squarefree integers (including 1).
    pub fn is_squarefree_integer(&self) -> bool {
        self.entries.values().all(|&e| e == 1)
    }
}

/// Factors a positive rational.
pub fn factorize(x: &Rational) -> Result<FactorMap> {
    if !x.is_positive() {
        return domain(format!("factorize needs a positive rational, got {x}"));
    }
    let mut entries = BTreeMap::new();
    factor_natural(&x.numer().magnitude().clone(), &mut entries, 1)?;
    factor_natural(&x.denom().magnitude().clone(), &mut entries, -1)?;
    Ok(FactorMap { entries })
}

fn is_prime_big(p: &BigInt) -> bool {
    match p.to_u64() {
        Some(v) => is_prime_u64(v),
        None => false,
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(p: &BigInt, x: &Rational) -> Result<i64> {
    if !is_prime_big(p) {
        return domain(format!("{p} is not a prime below 2^64"));
    }
    if x.is_zero() {
        return domain("valuation of 0 is infinite");
    }
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut e = 0i64;
        loop {
            let (q, r) = n.div_rem(p);
            if !r.is_zero() {
                return e;
            }
            n = q;
            e += 1;
        }
    };
    Ok(count(x.numer()) - count(x.denom()))
}

/// Whether `x` is a positive squarefree integer. 1 is squarefree, 0 is not.
pub fn is_squarefree_integer(x: &Rational) -> Result<bool> {
    if !x.is_integer() || !x.is_positive() {
        return Ok(false);
    }
    Ok(factorize(x)?.is_squarefree_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};
    use proptest::prelude::*;

    fn map(pairs: &[(u64, i64)]) -> FactorMap {
        FactorMap {
            entries: pairs.iter().copied().collect(),
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(&ratio(8, 3)).unwrap(), map(&[(2, 3), (3, -1)]));
        assert_eq!(factorize(&int(1)).unwrap(), FactorMap::new());
        assert_eq!(factorize(&int(360)).unwrap(), map(&[(2, 3), (3, 2), (5, 1)]));
        assert!(matches!(factorize(&int(0)), Err(Error::Domain(_))));
        assert!(matches!(factorize(&ratio(-1, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_large_cofactors() {
        // 2^61 - 1 is prime; 4294967291 * 4294967279 is a product of two 32-bit primes.
        let m61 = (1u64 << 61) - 1;
        assert_eq!(factorize(&int(m61 as i64)).unwrap(), map(&[(m61, 1)]));
        let semi = Rational::from_integer(BigInt::from(4294967291u64) * 4294967279u64);
        assert_eq!(
            factorize(&semi).unwrap(),
            map(&[(4294967279, 1), (4294967291, 1)])
        );
        let too_big = Rational::from_integer(BigInt::from(m61) * BigInt::from(m61));
        assert!(matches!(factorize(&too_big), Err(Error::Unsupported(_))));
    }

    #[test]
    fn valuation_examples() {
        let x = ratio(8, 3);
        assert_eq!(valuation(&BigInt::from(2), &x).unwrap(), 3);
        assert_eq!(valuation(&BigInt::from(3), &x).unwrap(), -1);
        assert_eq!(valuation(&BigInt::from(5), &x).unwrap(), 0);
        assert!(valuation(&BigInt::from(2), &int(0)).is_err());
        assert!(valuation(&BigInt::from(4), &x).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree_integer(&int(10)).unwrap());
        assert!(!is_squarefree_integer(&int(12)).unwrap());
        assert!(!is_squarefree_integer(&ratio(8, 3)).unwrap());
        assert!(is_squarefree_integer(&int(1)).unwrap());
        assert!(!is_squarefree_integer(&int(0)).unwrap());
        assert!(!is_squarefree_integer(&int(-6)).unwrap());
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_up_to(5000);
        let by_test: Vec<u64> = (0..=5000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieve, by_test);
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    fn positive_rational() -> impl Strategy<Value = Rational> {
        (1i64..5000, 1i64..5000).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn factorize_is_a_homomorphism(x in positive_rational(), y in positive_rational()) {
            let fx = factorize(&x).unwrap();
            let fy = factorize(&y).unwrap();
            prop_assert_eq!(factorize(&(&x * &y)).unwrap(), fx.mul(&fy));
            prop_assert_eq!(fx.value(), x);
        }

        #[test]
        fn valuation_is_additive(x in positive_rational(), y in positive_rational(),
                                 neg in any::<bool>(), p in prop::sample::select(vec![2u32, 3, 5, 7, 11])) {
            let p = BigInt::from(p);
            let x = if neg { -x } else { x };
            let sum = valuation(&p, &x).unwrap() + valuation(&p, &y).unwrap();
            prop_assert_eq!(valuation(&p, &(&x * &y)).unwrap(), sum);
        }
    }
}
