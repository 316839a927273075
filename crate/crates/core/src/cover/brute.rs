use super::coverable::{ap_coverable, gp_coverable};
use super::{CoverInstance, Mode};
use crate::error::{Error, Result};

/// Largest instance the exhaustive oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 15;

/// Minimum cover size by exhaustive search over all coverable subsets.
///
/// Every subset is tested with [`ap_coverable`] or [`gp_coverable`]; the
/// minimum is then a bitmask recurrence over partitions. Independent of the
/// structural solvers, and exponential.
pub fn brute_force_min_cover(instance: &CoverInstance, mode: Mode) -> Result<usize> {
    let n = instance.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::CostGuard(format!(
            "brute force is limited to {BRUTE_FORCE_LIMIT} elements, got {n}"
        )));
    }
    instance.check_mode(mode)?;
    let full = (1usize << n) - 1;
    let mut coverable = vec![false; full + 1];
    for (mask, slot) in coverable.iter_mut().enumerate().skip(1) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let elems = instance.subset(&members);
        *slot = match mode {
            Mode::Ap => ap_coverable(&elems)?.is_some(),
            Mode::Gp => gp_coverable(&elems)?.is_some(),
        };
    }
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // Submasks of `rest`, each joined with the lowest element.
        let mut sub = rest;
        loop {
            let part = sub | low;
            if coverable[part] {
                let cand = best[mask ^ part] + 1;
                if cand < best[mask] {
                    best[mask] = cand;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    Ok(best[full])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;
    use crate::arith::{FieldElement, RootDescriptor};
    use crate::progression::GeometricProgression;
    use std::sync::Arc;

    fn ints(xs: &[i64]) -> CoverInstance {
        CoverInstance::from_elements(xs.iter().map(|&x| FieldElement::rational(int(x))).collect())
            .unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(brute_force_min_cover(&ints(&[0, 1, 2]), Mode::Ap).unwrap(), 1);
        assert_eq!(brute_force_min_cover(&ints(&[1, 2, 3]), Mode::Gp).unwrap(), 2);
        let f = Arc::new(RootDescriptor::new(int(2), 2).unwrap());
        let g = GeometricProgression::new(FieldElement::one(f.clone()), FieldElement::generator(f.clone()))
            .unwrap();
        let inst = CoverInstance::new(f, g.prefix(4)).unwrap();
        assert_eq!(brute_force_min_cover(&inst, Mode::Ap).unwrap(), 2);
        assert_eq!(brute_force_min_cover(&ints(&[]), Mode::Ap).unwrap(), 0);
    }

    #[test]
    fn oracle_cost_guard() {
        let big = ints(&(1..=16).collect::<Vec<_>>());
        assert!(matches!(brute_force_min_cover(&big, Mode::Ap), Err(Error::CostGuard(_))));
    }
}
