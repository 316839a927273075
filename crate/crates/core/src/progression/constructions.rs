//! Structural statements about `A ∩ G` and the explicit AP cover of `G^(n)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{common_field, intersect_prefix, ArithmeticProgression, GeometricProgression, IntersectionPoint};
use crate::arith::{FieldElement, Rational};
use crate::error::{domain, Error, Result};

/// Whether the intersection was large enough for the rational-ratio lemma to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma1Status {
    /// At least three intersection points were found.
    Applicable,
    /// Fewer than three points; the hypothesis is unmet and nothing is claimed.
    Inconclusive,
}

/// Decomposition of an intersection `A(v, d) ∩ G(u, q)` for `q = r^(1/m)`.
#[derive(Debug, Clone)]
pub struct Lemma1Report {
    pub status: Lemma1Status,
    /// Degree `m`: least `j` with `q^j` rational.
    pub modulus: u32,
    /// `v / d`, when rational.
    pub t: Option<Rational>,
    /// `s` and `ell` with `u / d = s q^(-ell)`, when such a form exists.
    pub s: Option<Rational>,
    pub ell: Option<u32>,
    /// Every intersection exponent is `ell` mod `m`.
    pub residues_ok: bool,
    pub points: Vec<IntersectionPoint>,
}

/// Analyzes `A ∩ G^(N)`: rationality of `v / d`, the form `u / d = s q^(-ell)` and
/// the residue class of every intersection exponent.
///
/// The ratio must be a root of a rational. With three or more points a missing
/// decomposition is reported as [`Error::Invariant`].
pub fn lemma1_analyze(
    ap: &ArithmeticProgression,
    gp: &GeometricProgression,
    n: usize,
) -> Result<Lemma1Report> {
    let f = common_field(ap.field(), gp.field())?;
    let ratio = gp.ratio().lift(&f)?;
    let Some(m) = ratio.rational_power_order()? else {
        return domain(format!(
            "ratio {ratio} is not a root of a rational; the rational-ratio lemma does not apply"
        ));
    };
    let points = intersect_prefix(ap, gp, n)?;
    let d = ap.difference().lift(&f)?;
    let t = ap.start().lift(&f)?.checked_div(&d)?.as_rational().cloned();
    let xi = gp.start().lift(&f)?.checked_div(&d)?;

    let mut decomposition = None;
    let mut w = xi;
    for ell in 0..m {
        if let Some(s) = w.as_rational() {
            decomposition = Some((s.clone(), ell));
            break;
        }
        w = &w * &ratio;
    }

    let status = if points.len() >= 3 {
        Lemma1Status::Applicable
    } else {
        Lemma1Status::Inconclusive
    };
    if status == Lemma1Status::Applicable {
        if t.is_none() {
            return Err(Error::Invariant(format!(
                "{} intersection points but v/d is irrational",
                points.len()
            )));
        }
        if decomposition.is_none() {
            return Err(Error::Invariant(format!(
                "{} intersection points but u/d is not of the form s*q^(-l)",
                points.len()
            )));
        }
    }
    let residues_ok = match &decomposition {
        Some((_, ell)) => points.iter().all(|p| p.k % m as u64 == *ell as u64),
        None => false,
    };
    let (s, ell) = decomposition.unzip();
    Ok(Lemma1Report {
        status,
        modulus: m,
        t,
        s,
        ell,
        residues_ok,
        points,
    })
}

/// A term `u q^k` of `G^(n)` located in the cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveredTerm {
    pub k: u64,
    /// Which progression (`k mod m`).
    pub class: u32,
    /// Index within that progression: `r1^floor(k/m) * r2^(n - floor(k/m))`.
    pub index: BigInt,
}

#[derive(Debug, Clone)]
pub struct Theorem2Cover {
    pub modulus: u32,
    pub progressions: Vec<ArithmeticProgression>,
    pub terms: Vec<CoveredTerm>,
}

/// Covers `G^(n)` by the `m` progressions `A(0, u q^i / r2^n)`, `0 <= i < m`,
/// where `q^m = r = r1 / r2` in lowest terms, and checks every term exactly.
pub fn theorem2_cover(gp: &GeometricProgression, n: usize) -> Result<Theorem2Cover> {
    if n == 0 {
        return domain("n must be positive");
    }
    let f = gp.field().clone();
    let ratio = gp.ratio();
    let Some(m) = ratio.rational_power_order()? else {
        return domain(format!("ratio {ratio} is not a root of a rational"));
    };
    let r = ratio
        .pow(m as i64)?
        .as_rational()
        .cloned()
        .expect("q^m is rational by construction");
    let (r1, r2) = (r.numer().clone(), r.denom().clone());
    let scale = Rational::new(BigInt::one(), r2.pow(n as u32));

    let zero = FieldElement::zero(f.clone());
    let mut progressions = Vec::with_capacity(m as usize);
    let mut qi = FieldElement::one(f.clone());
    for _ in 0..m {
        let d = (gp.start() * &qi).scale(&scale);
        progressions.push(ArithmeticProgression::new(zero.clone(), d)?);
        qi = &qi * ratio;
    }

    let mut terms = Vec::with_capacity(n);
    for (k, term) in gp.prefix(n).into_iter().enumerate() {
        let (class, e) = (k % m as usize, k / m as usize);
        let index = r1.pow(e as u32) * r2.pow((n - e) as u32);
        let d = progressions[class].difference();
        let located = d.scale(&Rational::from_integer(index.clone()));
        let quotient = term.checked_div(d)?;
        if located != term || quotient.as_rational() != Some(&Rational::from_integer(index.clone())) {
            return Err(Error::Invariant(format!(
                "term u*q^{k} is not the {index}-th term of progression {class}"
            )));
        }
        if index < BigInt::zero() {
            return Err(Error::Invariant(format!("negative index for term {k}")));
        }
        terms.push(CoveredTerm {
            k: k as u64,
            class: class as u32,
            index,
        });
    }
    Ok(Theorem2Cover {
        modulus: m,
        progressions,
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DjCheck {
    pub count: usize,
    pub ok: bool,
}

/// Largest intersection of an AP with a GP whose ratio is not a root of a rational.
pub const DJ_BOUND: usize = 6;

/// Counts `|A ∩ G^(N)|` and checks it against [`DJ_BOUND`].
///
/// Rejects ratios with a rational power, naming the least such exponent.
pub fn assert_dj_bound(
    ap: &ArithmeticProgression,
    gp: &GeometricProgression,
    n: usize,
) -> Result<DjCheck> {
    if let Some(j) = gp.ratio().rational_power_order()? {
        return domain(format!(
            "ratio {} has a rational {j}-th power; the intersection bound does not apply",
            gp.ratio()
        ));
    }
    let count = intersect_prefix(ap, gp, n)?.len();
    Ok(DjCheck {
        count,
        ok: count <= DJ_BOUND,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, ratio};
    use crate::arith::RootDescriptor;
    use std::sync::Arc;

    fn field(r: i64, m: u32) -> Arc<RootDescriptor> {
        Arc::new(RootDescriptor::new(int(r), m).unwrap())
    }

    fn rat(n: i64, d: i64) -> FieldElement {
        FieldElement::rational(ratio(n, d))
    }

    fn el(f: &Arc<RootDescriptor>, cs: &[i64]) -> FieldElement {
        FieldElement::from_coords(f.clone(), cs.iter().map(|&c| int(c)).collect()).unwrap()
    }

    #[test]
    fn lemma1_examples() {
        let f = field(2, 2);
        let q = FieldElement::generator(f.clone());
        let a = ArithmeticProgression::new(rat(0, 1), rat(1, 1)).unwrap();
        let g = GeometricProgression::new(rat(1, 1), q.clone()).unwrap();
        let rep = lemma1_analyze(&a, &g, 6).unwrap();
        assert_eq!(rep.status, Lemma1Status::Applicable);
        assert_eq!((rep.t, rep.s, rep.ell), (Some(int(0)), Some(int(1)), Some(0)));
        assert!(rep.residues_ok);

        let a3 = ArithmeticProgression::new(rat(0, 1), rat(3, 1)).unwrap();
        let g3 = GeometricProgression::new(el(&f, &[0, 3]), q).unwrap();
        let rep = lemma1_analyze(&a3, &g3, 7).unwrap();
        assert_eq!((rep.t, rep.s, rep.ell), (Some(int(0)), Some(int(2)), Some(1)));
        assert!(rep.residues_ok);
        // Oracle: 3q^(k+1) is a multiple of 3 exactly when k is odd.
        let ks: Vec<u64> = rep.points.iter().map(|p| p.k).collect();
        assert_eq!(ks, vec![1, 3, 5]);

        let g2 = GeometricProgression::new(rat(1, 1), rat(2, 1)).unwrap();
        let rep = lemma1_analyze(&a, &g2, 4).unwrap();
        assert_eq!(rep.modulus, 1);
        assert_eq!((rep.t, rep.s, rep.ell), (Some(int(0)), Some(int(1)), Some(0)));
        assert!(rep.residues_ok);
    }

    #[test]
    fn lemma1_inconclusive_and_guard() {
        let a = ArithmeticProgression::new(rat(1, 1), rat(2, 1)).unwrap();
        let g2 = GeometricProgression::new(rat(1, 1), rat(2, 1)).unwrap();
        let rep = lemma1_analyze(&a, &g2, 10).unwrap();
        assert_eq!(rep.status, Lemma1Status::Inconclusive);
        assert_eq!(rep.points.len(), 1);

        let f = field(2, 2);
        let g = GeometricProgression::new(rat(1, 1), el(&f, &[1, 1])).unwrap();
        assert!(matches!(lemma1_analyze(&a, &g, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn theorem2_examples() {
        let f = field(2, 2);
        let g = GeometricProgression::new(rat(1, 1), FieldElement::generator(f.clone())).unwrap();
        let c = theorem2_cover(&g, 4).unwrap();
        // r = 2 = 2/1, so d_i = q^i / 1^4.
        assert_eq!(c.progressions.len(), 2);
        assert_eq!(c.progressions[0].difference(), &el(&f, &[1, 0]));
        assert_eq!(c.progressions[1].difference(), &el(&f, &[0, 1]));
        let idx: Vec<(u32, BigInt)> = c.terms.iter().map(|t| (t.class, t.index.clone())).collect();
        assert_eq!(
            idx,
            vec![(0, 1.into()), (1, 1.into()), (0, 2.into()), (1, 2.into())]
        );

        let g = GeometricProgression::new(rat(1, 1), rat(3, 2)).unwrap();
        let c = theorem2_cover(&g, 3).unwrap();
        assert_eq!(c.progressions.len(), 1);
        assert_eq!(c.progressions[0].difference(), &rat(1, 8));
        let idx: Vec<BigInt> = c.terms.iter().map(|t| t.index.clone()).collect();
        // r1 = 3, r2 = 2: 3^k 2^(3-k)
        assert_eq!(idx, vec![8.into(), 12.into(), 18.into()]);

        let g = GeometricProgression::new(rat(5, 1), FieldElement::generator(f)).unwrap();
        let c = theorem2_cover(&g, 1).unwrap();
        assert_eq!(c.progressions.len(), 2);
        assert_eq!(c.terms[0].class, 0);
    }

    #[test]
    fn dj_examples() {
        let f = field(2, 2);
        let g = GeometricProgression::new(rat(1, 1), el(&f, &[1, 1])).unwrap();
        let a = ArithmeticProgression::new(rat(1, 1), rat(1, 1)).unwrap();
        assert_eq!(assert_dj_bound(&a, &g, 100).unwrap(), DjCheck { count: 1, ok: true });
        let aq = ArithmeticProgression::new(rat(0, 1), FieldElement::generator(f)).unwrap();
        assert!(assert_dj_bound(&aq, &g, 100).unwrap().ok);
        let a0 = ArithmeticProgression::new(rat(0, 1), rat(1, 1)).unwrap();
        let g2 = GeometricProgression::new(rat(1, 1), rat(2, 1)).unwrap();
        let err = assert_dj_bound(&a0, &g2, 10).unwrap_err();
        assert!(err.to_string().contains("1-th power"), "{err}");
    }
}
