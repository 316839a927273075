//! Arithmetic in pure root extensions `Q(q)`, `q = r^(1/m)`.
//!
//! Elements are stored in the power basis `1, q, ..., q^(m-1)`. A descriptor is
//! *normalized* when `gcd(m, g) = 1`, `g` being the gcd of the prime exponents
//! of `r`. For `r > 0` this is exactly the condition that `r` is not a `p`-th
//! power for any prime `p | m`, which by Capelli's theorem makes `x^m - r`
//! irreducible over `Q`. The power basis is then linearly independent, so the
//! coordinate vector is a unique normal form and equality is coordinate
//! equality.
//!
//! `q` always denotes the positive real root; signs are decided for that
//! embedding.
//!
//! # Bound for [`FieldElement::rational_power_order`]
//!
//! Let `x > 0` lie in a field of degree `m` and let `j` be least with
//! `x^j = c` rational. If `c = b^p` for a prime `p | j` with `b` rational, then
//! `x^(j/p)` is a real `p`-th root of `b^p`, and since `x > 0` it equals `|b|`,
//! contradicting minimality. So `c` is not a `p`-th power for any `p | j`, and
//! as `c > 0`, `t^j - c` is irreducible. It is the minimal polynomial of `x`,
//! hence `j = [Q(x) : Q]` divides `m`. Checking `j = 1..=m` is therefore
//! exhaustive: if none succeeds, no power of `x` is rational and `x` is not the
//! real root of any rational.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::{factorize, FactorMap};
use super::rational::{format_rational, Rational};
use crate::error::{domain, Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 64;

/// `(r, m)` describing `q = r^(1/m)`.
///
/// Every descriptor with `m = 1` denotes `Q` itself; those compare equal
/// regardless of `r`, and `r = 1` is accepted for them as the canonical form.
#[derive(Debug, Clone, Eq)]
pub struct RootDescriptor {
    r: Rational,
    m: u32,
}

impl PartialEq for RootDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && (self.m == 1 || self.r == other.r)
    }
}

impl Hash for RootDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.m.hash(state);
        if self.m > 1 {
            self.r.hash(state);
        }
    }
}

impl RootDescriptor {
    /// Validates an already normalized descriptor.
    pub fn new(r: Rational, m: u32) -> Result<Self> {
        if m == 0 || m > MAX_DEGREE {
            return domain(format!("degree m = {m} outside 1..={MAX_DEGREE}"));
        }
        if m == 1 && r.is_one() {
            return Ok(Self::rationals());
        }
        if r <= Rational::one() {
            return domain(format!("root descriptor needs r > 1, got {}", format_rational(&r)));
        }
        let g = factorize(&r)?.exponent_gcd();
        if (m as u64).gcd(&g) != 1 {
            let n = normalize_root(&r, m)?;
            return domain(format!(
                "descriptor ({}, {m}) is not normalized; use ({}, {})",
                format_rational(&r),
                format_rational(n.r()),
                n.m()
            ));
        }
        Ok(Self { r, m })
    }

    /// The field `Q`.
    pub fn rationals() -> Self {
        Self {
            r: Rational::one(),
            m: 1,
        }
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_rational_field(&self) -> bool {
        self.m == 1
    }

    /// Dyadic enclosure `L / 2^bits <= q <= (L + 1) / 2^bits`; returns `L`.
    fn root_floor(&self, bits: u64) -> BigInt {
        let scaled = (self.r.numer() << (bits * self.m as u64)) / self.r.denom();
        scaled.nth_root(self.m)
    }
}

impl fmt::Display for RootDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.r), self.m)
    }
}

/// Rewrites `r^(1/m)` with the smallest possible degree.
///
/// Returns `(r', m')` with `m' = m / gcd(m, g)` and `r' = r^(1/gcd(m, g))`.
pub fn normalize_root(r: &Rational, m: u32) -> Result<RootDescriptor> {
    if m == 0 {
        return domain("root degree must be positive");
    }
    if *r <= Rational::one() {
        return domain(format!("root base must exceed 1, got {}", format_rational(r)));
    }
    let f = factorize(r)?;
    let d = (m as u64).gcd(&f.exponent_gcd());
    let reduced: FactorMap = {
        let mut acc = FactorMap::new();
        for (p, e) in f.iter() {
            let single = factorize(&Rational::from_integer(BigInt::from(p)))?;
            acc = acc.mul(&single.pow(e / d as i64));
        }
        acc
    };
    RootDescriptor::new(reduced.value(), m / d as u32)
}

/// An element of `Q(q)` in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Arc<RootDescriptor>,
    coords: Vec<Rational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{}", format_rational(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", format_rational(&a))?;
                    }
                    if i == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FieldElement {
    pub fn from_coords(field: Arc<RootDescriptor>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.m as usize {
            return Err(Error::Usage(format!(
                "expected {} coordinates for field {}, got {}",
                field.m,
                field,
                coords.len()
            )));
        }
        Ok(Self { field, coords })
    }

    pub fn from_rational(field: Arc<RootDescriptor>, x: Rational) -> Self {
        let mut coords = vec![Rational::zero(); field.m as usize];
        coords[0] = x;
        Self { field, coords }
    }

    /// A rational number as an element of `Q`.
    pub fn rational(x: Rational) -> Self {
        Self::from_rational(Arc::new(RootDescriptor::rationals()), x)
    }

    pub fn zero(field: Arc<RootDescriptor>) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: Arc<RootDescriptor>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// `c * q^i` for `0 <= i < m`.
    pub fn monomial(field: Arc<RootDescriptor>, c: Rational, i: usize) -> Self {
        let mut e = Self::zero(field);
        e.coords[i] = c;
        e
    }

    /// The generator `q`; for `m = 1` this is the rational `r`.
    pub fn generator(field: Arc<RootDescriptor>) -> Self {
        if field.m == 1 {
            let r = field.r.clone();
            return Self::from_rational(field, r);
        }
        Self::monomial(field, Rational::one(), 1)
    }

    pub fn field(&self) -> &Arc<RootDescriptor> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// The same value embedded in another field. Only rationals move between fields.
    pub fn lift(&self, field: &Arc<RootDescriptor>) -> Result<Self> {
        if *self.field == **field {
            return Ok(Self {
                field: field.clone(),
                coords: self.coords.clone(),
            });
        }
        match self.as_rational() {
            Some(x) => Ok(Self::from_rational(field.clone(), x.clone())),
            None => Err(Error::Usage(format!(
                "cannot move {self} from field {} to {}",
                self.field, field
            ))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coords[0])
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "field mismatch: {} vs {}",
                self.field, other.field
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.is_rational() {
            return Ok(other.scale(&self.coords[0]));
        }
        if other.is_rational() {
            return Ok(self.scale(&other.coords[0]));
        }
        // Integer numerators over a common denominator: one gcd per output
        // coordinate instead of one per product.
        let (a, da) = integral(&self.coords);
        let (b, db) = integral(&other.coords);
        let m = a.len();
        let mut wide = vec![BigInt::zero(); 2 * m - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    wide[i + j] += x * y;
                }
            }
        }
        let (r1, r2) = (self.field.r.numer(), self.field.r.denom());
        let den = da * db * r2;
        let coords = (0..m)
            .map(|k| {
                let high = wide.get(k + m).map_or_else(BigInt::zero, |w| w * r1);
                Rational::new(&wide[k] * r2 + high, den.clone())
            })
            .collect();
        Ok(Self {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    // Folds q^i, i >= m, back using q^m = r.
    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let m = self.coords.len();
        let r = &self.field.r;
        for i in (m..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if !c.is_zero() {
                poly[i - m] += c * r;
            }
        }
        poly.truncate(m);
        poly.resize(m, Rational::zero());
        poly
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo `x^m - r`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("division by zero");
        }
        if let Some(x) = self.as_rational() {
            return Ok(Self::from_rational(self.field.clone(), x.recip()));
        }
        let m = self.coords.len();
        let mut modulus = vec![Rational::zero(); m + 1];
        modulus[0] = -self.field.r.clone();
        modulus[m] = Rational::one();

        let (mut r0, mut r1) = (modulus, trim(self.coords.clone()));
        let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, rem);
            let next = poly_sub(&t0, &poly_mul(&quot, &t1));
            t0 = std::mem::replace(&mut t1, next);
        }
        if r0.len() != 1 {
            return Err(Error::Invariant(format!(
                "x^{m} - {} is reducible; descriptor not normalized",
                self.field.r
            )));
        }
        let c = r0[0].recip();
        let mut coords = t0.into_iter().map(|a| a * &c).collect::<Vec<_>>();
        coords.resize(m.max(coords.len()), Rational::zero());
        Ok(Self {
            field: self.field.clone(),
            coords: self.reduce(coords),
        })
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.field.clone());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Exact sign under the real embedding with `q > 0`.
    ///
    /// Zero is read off the coordinates. Otherwise the element is evaluated
    /// on a dyadic enclosure of `q` with 64 bits, doubling the precision until
    /// the resulting interval excludes zero.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(x) = self.as_rational() {
            return if x.is_positive() { 1 } else { -1 };
        }
        let den = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let m = ints.len() as u64;
        let mut bits = 64u64;
        loop {
            let lo_q = self.field.root_floor(bits);
            let hi_q = &lo_q + 1u32;
            let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
            let (mut plo, mut phi) = (BigInt::one(), BigInt::one());
            for (i, a) in ints.iter().enumerate() {
                if !a.is_zero() {
                    let shift = bits * (m - 1 - i as u64);
                    let small = (a * &plo) << shift;
                    let large = (a * &phi) << shift;
                    if a.sign() == Sign::Plus {
                        lo += small;
                        hi += large;
                    } else {
                        lo += large;
                        hi += small;
                    }
                }
                plo *= &lo_q;
                phi *= &hi_q;
            }
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// Exact comparison of real values.
    pub fn cmp_value(&self, other: &Self) -> Result<std::cmp::Ordering> {
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// Least `j` in `1..=m` with `self^j` rational, for `self > 0`.
    pub fn rational_power_order(&self) -> Result<Option<u32>> {
        if self.signum() <= 0 {
            return domain(format!("rational_power_order needs a positive element, got {self}"));
        }
        let mut p = self.clone();
        for j in 1..=self.field.m {
            if p.is_rational() {
                return Ok(Some(j));
            }
            p = &p * self;
        }
        Ok(None)
    }

    /// A dyadic rational within `2^-bits` (relative to the enclosure of `q`) of the value.
    pub fn approximate(&self, bits: u64) -> Rational {
        if let Some(x) = self.as_rational() {
            return x.clone();
        }
        let l = self.field.root_floor(bits);
        let qa = Rational::new(l, BigInt::one() << bits);
        let mut acc = Rational::zero();
        let mut p = Rational::one();
        for c in &self.coords {
            acc += c * &p;
            p *= &qa;
        }
        acc
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

// Requires b nonempty with nonzero leading coefficient.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().recip();
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics when the operands live in different fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field element operands must share a field")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Exact `floor(log2)` of a positive natural, used by callers that need magnitudes.
pub fn bit_length(n: &BigUint) -> u64 {
    n.bits()
}

// Coordinates as integers over their least common denominator.
fn integral(coords: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let nums = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};
    use proptest::prelude::*;

    fn field(r: i64, m: u32) -> Arc<RootDescriptor> {
        Arc::new(RootDescriptor::new(int(r), m).unwrap())
    }

    fn elem(f: &Arc<RootDescriptor>, cs: &[(i64, i64)]) -> FieldElement {
        FieldElement::from_coords(f.clone(), cs.iter().map(|&(n, d)| ratio(n, d)).collect())
            .unwrap()
    }

    #[test]
    fn normalize_examples() {
        let n = normalize_root(&int(4), 2).unwrap();
        assert_eq!((n.r().clone(), n.m()), (int(2), 1));
        let n = normalize_root(&int(2), 2).unwrap();
        assert_eq!((n.r().clone(), n.m()), (int(2), 2));
        let n = normalize_root(&int(64), 4).unwrap();
        assert_eq!((n.r().clone(), n.m()), (int(8), 2));
        let n = normalize_root(&ratio(9, 4), 2).unwrap();
        assert_eq!((n.r().clone(), n.m()), (ratio(3, 2), 1));
        assert!(normalize_root(&int(1), 2).is_err());
        assert!(normalize_root(&ratio(1, 2), 3).is_err());
    }

    #[test]
    fn normalize_oracle_via_exponents() {
        // (r', m') represents the same real iff m * exponents(r') == m' * exponents(r).
        for (r, m) in [(64i64, 4u32), (729, 6), (32, 10), (12, 4), (1024, 6)] {
            let n = normalize_root(&int(r), m).unwrap();
            let lhs = factorize(n.r()).unwrap().pow(m as i64);
            let rhs = factorize(&int(r)).unwrap().pow(n.m() as i64);
            assert_eq!(lhs, rhs, "({r}, {m})");
            let again = normalize_root(n.r(), n.m()).unwrap();
            assert_eq!(again.r(), n.r());
            assert_eq!(again.m(), n.m());
        }
    }

    #[test]
    fn descriptor_validation() {
        assert!(RootDescriptor::new(int(4), 2).is_err());
        assert!(RootDescriptor::new(int(2), 0).is_err());
        assert!(RootDescriptor::new(int(2), 65).is_err());
        assert!(RootDescriptor::new(int(2), 64).is_ok());
        assert!(RootDescriptor::new(ratio(1, 1), 1).is_ok());
        assert_eq!(
            RootDescriptor::new(int(5), 1).unwrap(),
            RootDescriptor::rationals()
        );
    }

    #[test]
    fn arithmetic_examples() {
        let f = field(2, 2);
        let q = FieldElement::generator(f.clone());
        assert_eq!(&q * &q, elem(&f, &[(2, 1), (0, 1)]));
        let one_plus_q = elem(&f, &[(1, 1), (1, 1)]);
        assert_eq!(one_plus_q.pow(-1).unwrap(), elem(&f, &[(-1, 1), (1, 1)]));
        let a = elem(&f, &[(3, 1), (1, 1)]);
        let b = elem(&f, &[(3, 1), (-1, 1)]);
        assert_eq!(&a * &b, elem(&f, &[(7, 1), (0, 1)]));
        assert!(matches!(
            FieldElement::zero(f.clone()).inverse(),
            Err(Error::Domain(_))
        ));
        let other = FieldElement::generator(field(3, 2));
        assert!(matches!(q.checked_add(&other), Err(Error::Usage(_))));
    }

    #[test]
    fn cube_root_inverse() {
        let f = field(2, 3);
        let x = elem(&f, &[(1, 1), (2, 1), (-3, 2)]);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, FieldElement::one(f.clone()));
        let q = FieldElement::generator(f.clone());
        assert_eq!(q.pow(3).unwrap(), FieldElement::from_rational(f, int(2)));
    }

    #[test]
    fn sign_examples() {
        let f = field(2, 2);
        assert_eq!(elem(&f, &[(0, 1), (0, 1)]).signum(), 0);
        assert_eq!(elem(&f, &[(-1, 1), (1, 1)]).signum(), 1);
        assert_eq!(elem(&f, &[(3, 1), (-2, 1)]).signum(), 1);
        assert_eq!(elem(&f, &[(-3, 1), (2, 1)]).signum(), -1);
        // 3 - 2*sqrt(2) > 0 cross-check: 9 > 8.
        assert!(int(9) > int(8));
        // Convergents of sqrt 2 from above; differences checked with mpmath.
        assert_eq!(elem(&f, &[(-99, 70), (1, 1)]).signum(), -1);
        assert_eq!(elem(&f, &[(-577, 408), (1, 1)]).signum(), -1);
        // sqrt(2) - 665857/470832 ~ -1.6e-12
        assert_eq!(elem(&f, &[(-665857, 470832), (1, 1)]).signum(), -1);
    }

    #[test]
    fn power_order_examples() {
        let f = field(2, 2);
        assert_eq!(
            FieldElement::generator(f.clone()).rational_power_order().unwrap(),
            Some(2)
        );
        let x = elem(&f, &[(1, 1), (1, 1)]);
        assert!(!x.pow(2).unwrap().is_rational());
        assert_eq!(x.rational_power_order().unwrap(), None);
        assert_eq!(
            FieldElement::rational(ratio(3, 2)).rational_power_order().unwrap(),
            Some(1)
        );
        assert!(elem(&f, &[(1, 1), (-1, 1)]).rational_power_order().is_err());
        let g = field(5, 4);
        let q2 = FieldElement::generator(g).pow(2).unwrap();
        assert_eq!(q2.rational_power_order().unwrap(), Some(2));
    }

    #[test]
    fn display() {
        let f = field(2, 3);
        assert_eq!(elem(&f, &[(1, 1), (-1, 2), (2, 1)]).to_string(), "1 - 1/2*q + 2*q^2");
        assert_eq!(elem(&f, &[(0, 1), (0, 1), (0, 1)]).to_string(), "0");
        assert_eq!(elem(&f, &[(0, 1), (-1, 1), (0, 1)]).to_string(), "-q");
    }

    fn fields() -> impl Strategy<Value = Arc<RootDescriptor>> {
        prop::sample::select(vec![(2i64, 2u32), (3, 2), (2, 3), (5, 4), (6, 5)])
            .prop_map(|(r, m)| field(r, m))
    }

    fn element_in(f: Arc<RootDescriptor>) -> impl Strategy<Value = FieldElement> {
        let m = f.m() as usize;
        prop::collection::vec((-20i64..20, 1i64..6), m).prop_map(move |cs| {
            FieldElement::from_coords(f.clone(), cs.iter().map(|&(n, d)| ratio(n, d)).collect())
                .unwrap()
        })
    }

    fn triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
        fields().prop_flat_map(|f| {
            (
                element_in(f.clone()),
                element_in(f.clone()),
                element_in(f),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn field_axioms((x, y, z) in triple()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !y.is_zero() {
                prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
            }
        }

        #[test]
        fn sign_is_multiplicative((x, y, _z) in triple()) {
            prop_assert_eq!((&x * &y).signum(), x.signum() * y.signum());
        }

        #[test]
        fn sign_matches_approximation((x, _y, _z) in triple()) {
            // A 200-bit approximation is far finer than any gap in these small elements.
            let s = x.signum();
            let a = x.approximate(200);
            if s != 0 {
                prop_assert_eq!(s, if a.is_positive() { 1 } else { -1 });
            }
        }

        #[test]
        fn power_order_is_least((x, _y, _z) in triple()) {
            if x.signum() > 0 {
                match x.rational_power_order().unwrap() {
                    Some(j) => {
                        prop_assert!(x.pow(j as i64).unwrap().is_rational());
                        for jj in 1..j {
                            prop_assert!(!x.pow(jj as i64).unwrap().is_rational());
                        }
                    }
                    None => {
                        for jj in 1..=x.field().m() {
                            prop_assert!(!x.pow(jj as i64).unwrap().is_rational());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normalized_roots_agree_numerically() {
        // r^(1/m) and r'^(1/m') at 128 bits must agree to 1e-30.
        for (r, m) in [(64i64, 4u32), (729, 6), (32, 10), (1024, 6)] {
            let orig = RootDescriptor { r: int(r), m };
            let n = normalize_root(&int(r), m).unwrap();
            let a = Rational::new(orig.root_floor(128), BigInt::one() << 128);
            let b = Rational::new(n.root_floor(128), BigInt::one() << 128);
            let tol = Rational::new(BigInt::one(), BigInt::from(10u32).pow(30));
            assert!((a - b).abs() < tol);
        }
    }
}

