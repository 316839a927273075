//! Arithmetic and geometric progressions over a root-extension field, their
//! membership tests and prefix intersections.

mod constructions;

use std::sync::Arc;

use crate::arith::rational::to_index;
use num_traits::Zero;
use crate::arith::{FieldElement, RootDescriptor};
use crate::error::{domain, Error, Result};

pub use constructions::{
    assert_dj_bound, lemma1_analyze, theorem2_cover, CoveredTerm, DjCheck, Lemma1Report,
    Lemma1Status, Theorem2Cover, DJ_BOUND,
};

/// The field both elements can be viewed in: equal fields, or `Q` lifted into the other.
pub(crate) fn common_field(
    a: &Arc<RootDescriptor>,
    b: &Arc<RootDescriptor>,
) -> Result<Arc<RootDescriptor>> {
    if a == b || **a == **b {
        Ok(a.clone())
    } else if a.is_rational_field() {
        Ok(b.clone())
    } else if b.is_rational_field() {
        Ok(a.clone())
    } else {
        Err(Error::Usage(format!("field mismatch: {a} vs {b}")))
    }
}

/// `A(v, d) = {v, v + d, v + 2d, ...}` with `v >= 0`, `d > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArithmeticProgression {
    v: FieldElement,
    d: FieldElement,
}

impl ArithmeticProgression {
    pub fn new(v: FieldElement, d: FieldElement) -> Result<Self> {
        let f = common_field(v.field(), d.field())?;
        let (v, d) = (v.lift(&f)?, d.lift(&f)?);
        if v.signum() < 0 {
            return domain(format!("AP start must be >= 0, got {v}"));
        }
        if d.signum() <= 0 {
            return domain(format!("AP difference must be > 0, got {d}"));
        }
        Ok(Self { v, d })
    }

    pub fn start(&self) -> &FieldElement {
        &self.v
    }

    pub fn difference(&self) -> &FieldElement {
        &self.d
    }

    pub fn field(&self) -> &Arc<RootDescriptor> {
        self.v.field()
    }

    /// The `h`-th term `v + h d`.
    pub fn term(&self, h: u64) -> FieldElement {
        &self.v + &self.d.scale(&crate::arith::rational::int(h as i64))
    }

    /// `A^(n)`: the first `n` terms.
    pub fn prefix(&self, n: usize) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(n);
        let mut t = self.v.clone();
        for _ in 0..n {
            let next = &t + &self.d;
            out.push(std::mem::replace(&mut t, next));
        }
        out
    }

    /// Index `h` with `x = v + h d`, if any.
    pub fn index_of(&self, x: &FieldElement) -> Result<Option<u64>> {
        let f = common_field(self.field(), x.field())?;
        let a = ArithmeticProgression {
            v: self.v.lift(&f)?,
            d: self.d.lift(&f)?,
        };
        Ok(a.index_in_field(&x.lift(&f)?))
    }

    // All three in one field. `(x - v) / d` is rational exactly when the
    // coordinate vectors of `x - v` and `d` are proportional, so no inverse is needed.
    pub(crate) fn index_in_field(&self, x: &FieldElement) -> Option<u64> {
        let (xs, vs, ds) = (x.coords(), self.v.coords(), self.d.coords());
        let j = ds.iter().position(|c| !c.is_zero())?;
        let h = (&xs[j] - &vs[j]) / &ds[j];
        let h_int = to_index(&h)?;
        let consistent = (0..ds.len()).all(|i| i == j || &xs[i] - &vs[i] == &h * &ds[i]);
        consistent.then_some(h_int)
    }
}

/// `G(u, q) = {u, uq, uq^2, ...}` with `u > 0`, `q > 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeometricProgression {
    u: FieldElement,
    ratio: FieldElement,
}

impl GeometricProgression {
    pub fn new(u: FieldElement, ratio: FieldElement) -> Result<Self> {
        let f = common_field(u.field(), ratio.field())?;
        let (u, ratio) = (u.lift(&f)?, ratio.lift(&f)?);
        if u.signum() <= 0 {
            return domain(format!("GP start must be > 0, got {u}"));
        }
        if (&ratio - &FieldElement::one(f)).signum() <= 0 {
            return domain(format!("GP ratio must be > 1, got {ratio}"));
        }
        Ok(Self { u, ratio })
    }

    pub fn start(&self) -> &FieldElement {
        &self.u
    }

    pub fn ratio(&self) -> &FieldElement {
        &self.ratio
    }

    pub fn field(&self) -> &Arc<RootDescriptor> {
        self.u.field()
    }

    pub fn term(&self, k: u64) -> FieldElement {
        &self.u * &self.ratio.pow(k as i64).expect("nonnegative power")
    }

    /// `G^(n)`: the first `n` terms.
    pub fn prefix(&self, n: usize) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(n);
        let mut t = self.u.clone();
        for _ in 0..n {
            let next = &t * &self.ratio;
            out.push(std::mem::replace(&mut t, next));
        }
        out
    }

    /// Exponent `k` with `x = u q^k`, if any.
    ///
    /// `k` is bracketed by repeated squaring of `q` against `x / u` using exact
    /// comparisons, then fixed bit by bit; `O(log k)` multiplications.
    pub fn index_of(&self, x: &FieldElement) -> Result<Option<u64>> {
        let f = common_field(self.field(), x.field())?;
        let y = x.lift(&f)?.checked_div(&self.u.lift(&f)?)?;
        let one = FieldElement::one(f.clone());
        match y.cmp_value(&one)? {
            std::cmp::Ordering::Less => return Ok(None),
            std::cmp::Ordering::Equal => return Ok(Some(0)),
            std::cmp::Ordering::Greater => {}
        }
        let ratio = self.ratio.lift(&f)?;
        // squares[i] = q^(2^i); stop at the first one exceeding y.
        let mut squares = vec![ratio];
        loop {
            let last = squares.last().unwrap();
            if last.cmp_value(&y)? == std::cmp::Ordering::Greater {
                break;
            }
            if squares.len() >= 63 {
                return Ok(None);
            }
            let next = last * last;
            squares.push(next);
        }
        let mut k = 0u64;
        let mut acc = one;
        for i in (0..squares.len()).rev() {
            let cand = &acc * &squares[i];
            if cand.cmp_value(&y)? != std::cmp::Ordering::Greater {
                acc = cand;
                k += 1 << i;
            }
        }
        Ok((acc == y).then_some(k))
    }
}

/// A common term `u q^k = v + d h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub k: u64,
    pub h: u64,
    pub value: FieldElement,
}

/// All points of `A ∩ G^(N)`, ascending in `k`.
pub fn intersect_prefix(
    ap: &ArithmeticProgression,
    gp: &GeometricProgression,
    n: usize,
) -> Result<Vec<IntersectionPoint>> {
    let f = common_field(ap.field(), gp.field())?;
    let a = ArithmeticProgression {
        v: ap.v.lift(&f)?,
        d: ap.d.lift(&f)?,
    };
    let ratio = gp.ratio.lift(&f)?;
    let mut term = gp.u.lift(&f)?;
    let mut out = Vec::new();
    for k in 0..n as u64 {
        if let Some(h) = a.index_in_field(&term) {
            out.push(IntersectionPoint {
                k,
                h,
                value: term.clone(),
            });
        }
        term = &term * &ratio;
    }
    Ok(out)
}
