//! Single-progression coverability with explicit witnesses.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::rational_gcd;
use crate::arith::{factorize, FieldElement, Rational, RootDescriptor};
use crate::error::{domain, Error, Result};
use crate::progression::{ArithmeticProgression, GeometricProgression};

/// Prime exponents of `e / e0`, indexed by an ascending list of primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    pub coordinates: Vec<i64>,
}

/// Exponent vectors of every element relative to the first one, plus the
/// prime support they are indexed by.
pub fn exponent_vectors(elements: &[Rational]) -> Result<(Vec<u64>, Vec<ExponentVector>)> {
    let Some(base) = elements.first() else {
        return Ok((Vec::new(), Vec::new()));
    };
    let maps = elements
        .iter()
        .map(|e| factorize(&(e / base)))
        .collect::<Result<Vec<_>>>()?;
    let mut primes: Vec<u64> = maps.iter().flat_map(|m| m.primes()).collect();
    primes.sort_unstable();
    primes.dedup();
    let vectors = maps
        .iter()
        .map(|m| ExponentVector {
            coordinates: primes.iter().map(|&p| m.exponent(p)).collect(),
        })
        .collect();
    Ok((primes, vectors))
}

fn min_element(xs: &[FieldElement]) -> Result<&FieldElement> {
    let mut best = &xs[0];
    for x in &xs[1..] {
        if x.cmp_value(best)? == std::cmp::Ordering::Less {
            best = x;
        }
    }
    Ok(best)
}

fn max_element(xs: &[FieldElement]) -> Result<&FieldElement> {
    let mut best = &xs[0];
    for x in &xs[1..] {
        if x.cmp_value(best)? == std::cmp::Ordering::Greater {
            best = x;
        }
    }
    Ok(best)
}

/// An AP containing every element of `set`, if one exists.
///
/// A set is AP-coverable iff every difference is a rational multiple of one
/// reference difference. The witness starts at `min(set)` and steps by the
/// rational gcd of the differences, measured in units of `max - min`.
pub fn ap_coverable(set: &[FieldElement]) -> Result<Option<ArithmeticProgression>> {
    let field = match set.first() {
        Some(x) => x.field().clone(),
        None => Arc::new(RootDescriptor::rationals()),
    };
    for x in set {
        if x.signum() < 0 {
            return domain(format!("AP covers need nonnegative elements, got {x}"));
        }
    }
    let one = FieldElement::one(field.clone());
    if set.is_empty() {
        return ArithmeticProgression::new(FieldElement::zero(field), one).map(Some);
    }
    let lo = min_element(set)?.clone();
    let hi = max_element(set)?.clone();
    let span = hi.checked_sub(&lo)?;
    if span.is_zero() {
        return ArithmeticProgression::new(lo, one).map(Some);
    }
    let span_inv = span.inverse()?;
    let mut multiples = Vec::with_capacity(set.len());
    for x in set {
        match (&x.checked_sub(&lo)? * &span_inv).as_rational() {
            Some(c) => multiples.push(c.clone()),
            None => return Ok(None),
        }
    }
    let g = rational_gcd(&multiples).expect("span is a nonzero multiple");
    ArithmeticProgression::new(lo, span.scale(&g)).map(Some)
}

fn rational_of(x: &FieldElement) -> Result<Rational> {
    let r = x.as_rational().cloned().ok_or_else(|| {
        Error::Unsupported(format!("GP covers are limited to rational elements, got {x}"))
    })?;
    if r.is_zero() {
        return domain("0 lies in no geometric progression");
    }
    if r.is_negative() {
        return domain(format!("GP covers need positive elements, got {r}"));
    }
    Ok(r)
}

/// Checks that every element is a positive rational and returns the values.
pub(crate) fn gp_values(set: &[FieldElement]) -> Result<Vec<Rational>> {
    set.iter().map(rational_of).collect()
}

/// A GP containing every element of `set` (positive rationals), if one exists.
///
/// The exponent vectors must lie on one line with a primitive integer
/// direction; the witness ratio is that direction oriented to exceed 1 and
/// the start is `min(set)`.
pub fn gp_coverable(set: &[FieldElement]) -> Result<Option<GeometricProgression>> {
    let values = gp_values(set)?;
    let two = Rational::from_integer(BigInt::from(2));
    let Some(u) = values.iter().min().cloned() else {
        return GeometricProgression::new(
            FieldElement::rational(Rational::one()),
            FieldElement::rational(two),
        )
        .map(Some);
    };
    let rel: Vec<Rational> = std::iter::once(u.clone()).chain(values.iter().cloned()).collect();
    let (primes, vectors) = exponent_vectors(&rel)?;
    let vectors = &vectors[1..];
    let Some(first) = vectors.iter().find(|v| v.coordinates.iter().any(|&c| c != 0)) else {
        return GeometricProgression::new(FieldElement::rational(u), FieldElement::rational(two))
            .map(Some);
    };
    let g = first
        .coordinates
        .iter()
        .fold(0i64, |acc, &c| acc.gcd(&c));
    let mut direction: Vec<i64> = first.coordinates.iter().map(|c| c / g).collect();
    let mut ratio = Rational::one();
    for (&p, &e) in primes.iter().zip(&direction) {
        let pe = Rational::from_integer(BigInt::from(p)).pow(e as i32);
        ratio *= pe;
    }
    if ratio < Rational::one() {
        ratio = ratio.recip();
        direction.iter_mut().for_each(|c| *c = -*c);
    }
    let pivot = direction.iter().position(|&c| c != 0).unwrap();
    for v in vectors {
        let k = v.coordinates[pivot] / direction[pivot];
        let exact = v.coordinates[pivot] % direction[pivot] == 0
            && v.coordinates.iter().zip(&direction).all(|(&c, &d)| c == k * d);
        if !exact || k < 0 {
            return Ok(None);
        }
    }
    let gp = GeometricProgression::new(FieldElement::rational(u), FieldElement::rational(ratio))?;
    for x in &values {
        if gp.index_of(&FieldElement::rational(x.clone()))?.is_none() {
            return Err(Error::Invariant(format!(
                "collinear exponent vectors but {x} is not in G({}, {})",
                gp.start(),
                gp.ratio()
            )));
        }
    }
    Ok(Some(gp))
}
