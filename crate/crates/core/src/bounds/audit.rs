//! Lower and upper bound audits on exact cover numbers of progression prefixes.

use std::time::Instant;

use crate::arith::rational::{int, to_decimal};
use crate::arith::{FieldElement, Rational};
use crate::cover::{min_ap_cover, min_gp_cover, CoverInstance};
use crate::error::{domain, Error, Result};
use crate::progression::{ArithmeticProgression, GeometricProgression};

use super::constants::{at_least_over_pi_squared, pi_squared};

/// Largest `n` for the GP-cover audit of an AP prefix.
pub const G_AUDIT_LIMIT: usize = 25;
/// Largest `n` for the AP-cover audit of a GP prefix.
pub const A_AUDIT_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditKind {
    /// `g(A^(n)) >= n / π²`.
    GLowerBound,
    /// `a(G^(n)) <= m`, with equality once `n >= 2m`.
    ARootRatio { m: u32 },
    /// `a(G^(n)) >= n / 6`.
    AIrrationalRatio,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub n: usize,
    /// Number of elements actually covered (differs from `n` when 0 is dropped).
    pub size: usize,
    pub measured: usize,
    /// Exact bound value, when rational.
    pub bound: Option<Rational>,
    /// Decimal rendering of the bound.
    pub bound_text: String,
    pub holds: bool,
    /// `measured <= ceil(size / 2)`.
    pub within_pair_bound: bool,
    pub runtime_ms: u128,
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub kind: AuditKind,
    pub rows: Vec<BoundRow>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds && r.within_pair_bound)
    }

    /// Least `n0` such that every row with `n >= n0` holds.
    pub fn empirical_threshold(&self) -> Option<usize> {
        let mut threshold = None;
        for row in self.rows.iter().rev() {
            if !row.holds {
                break;
            }
            threshold = Some(row.n);
        }
        threshold
    }

    /// `min(measured / n)` over the rows.
    pub fn min_ratio(&self) -> Option<Rational> {
        self.rows
            .iter()
            .map(|r| Rational::new(r.measured.into(), r.n.into()))
            .min()
    }
}

fn pair_bound(size: usize, measured: usize) -> bool {
    size < 2 || measured <= size.div_ceil(2)
}

/// `g(A^(n))` for `n = 2..=n_max` against `n / π²`.
///
/// A zero term (only possible when `v = 0`) lies in no geometric progression;
/// it is dropped from the covered set and noted.
pub fn g_lower_bound_audit(ap: &ArithmeticProgression, n_max: usize) -> Result<BoundReport> {
    if n_max > G_AUDIT_LIMIT {
        return Err(Error::CostGuard(format!(
            "n_max = {n_max} exceeds {G_AUDIT_LIMIT}"
        )));
    }
    if !(ap.start().is_rational() && ap.difference().is_rational()) {
        return domain("the GP-cover audit needs rational v and d");
    }
    let mut notes = Vec::new();
    let drop_zero = ap.start().is_zero();
    if drop_zero {
        notes.push("v = 0: the term 0 lies in no geometric progression and is excluded".into());
    }
    let p2 = pi_squared();
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let started = Instant::now();
        let terms: Vec<FieldElement> = ap
            .prefix(n)
            .into_iter()
            .filter(|t| !t.is_zero())
            .collect();
        let size = terms.len();
        let solution = min_gp_cover(&CoverInstance::from_elements(terms)?)?;
        let measured = solution.count;
        let holds = at_least_over_pi_squared(&int(measured as i64), &int(n as i64))
            .ok_or_else(|| Error::Unsupported(format!("cannot separate {measured} from {n}/pi^2")))?;
        rows.push(BoundRow {
            n,
            size,
            measured,
            bound: None,
            bound_text: to_decimal(&(int(n as i64) / &p2), 30),
            holds,
            within_pair_bound: pair_bound(size, measured),
            runtime_ms: started.elapsed().as_millis(),
        });
    }
    Ok(BoundReport {
        kind: AuditKind::GLowerBound,
        rows,
        notes,
    })
}

/// `a(G^(n))` for `n = 1..=n_max`.
///
/// Root ratios (`q^m` rational for least `m`) are checked against `<= m`, and
/// `= m` from `n = 2m` on. Other ratios are checked against `>= n / 6`.
pub fn a_bound_audit(gp: &GeometricProgression, n_max: usize) -> Result<BoundReport> {
    if n_max > A_AUDIT_LIMIT {
        return Err(Error::CostGuard(format!(
            "n_max = {n_max} exceeds {A_AUDIT_LIMIT}"
        )));
    }
    let order = gp.ratio().rational_power_order()?;
    let kind = match order {
        Some(m) => AuditKind::ARootRatio { m },
        None => AuditKind::AIrrationalRatio,
    };
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let started = Instant::now();
        let instance = CoverInstance::new(gp.field().clone(), gp.prefix(n))?;
        let measured = min_ap_cover(&instance)?.count;
        let (bound, holds) = match order {
            Some(m) => {
                let m = m as usize;
                let holds = measured <= m && (n < 2 * m || measured == m);
                (int(m as i64), holds)
            }
            None => {
                let b = Rational::new(n.into(), 6.into());
                let holds = int(measured as i64) >= b;
                (b, holds)
            }
        };
        rows.push(BoundRow {
            n,
            size: n,
            measured,
            bound_text: to_decimal(&bound, 30),
            bound: Some(bound),
            holds,
            within_pair_bound: pair_bound(n, measured),
            runtime_ms: started.elapsed().as_millis(),
        });
    }
    Ok(BoundReport {
        kind,
        rows,
        notes: Vec::new(),
    })
}
