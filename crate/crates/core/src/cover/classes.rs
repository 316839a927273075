use super::lines::{big_lines, bits, pair_lines, Mask};
use super::CoverInstance;
use crate::arith::Rational;
use crate::error::Result;

/// Partition of an instance into difference-commensurability classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classes {
    /// Index sets, each sorted; classes listed in the order they were formed.
    pub classes: Vec<Vec<usize>>,
    /// True when no element lies on two different AP-coverable subsets of size
    /// three or more, i.e. commensurability is transitive on this set.
    pub consistent: bool,
}

pub(crate) fn coordinates(instance: &CoverInstance) -> Vec<Vec<Rational>> {
    instance
        .elements()
        .iter()
        .map(|e| e.coords().to_vec())
        .collect()
}

// Lexicographic order of the sorted index lists of two equal-size masks.
fn lex_less(a: Mask, b: Mask) -> bool {
    let diff = a ^ b;
    diff != 0 && (a >> diff.trailing_zeros()) & 1 == 1
}

/// Groups elements whose mutual differences are rational multiples of a
/// common reference difference.
///
/// Classes are carved out greedily: the largest set of still-unassigned
/// elements lying in one `x0 + Q*delta`, ties broken by the smallest sorted
/// index list, until every element is placed.
pub fn commensurability_classes(instance: &CoverInstance) -> Result<Classes> {
    let n = instance.len();
    let table = pair_lines(&coordinates(instance));
    let big = big_lines(&table);
    let consistent = big
        .iter()
        .enumerate()
        .all(|(i, a)| big[i + 1..].iter().all(|b| a & b == 0));

    let mut unassigned: Mask = if n == 64 { !0 } else { (1 << n) - 1 };
    let mut classes = Vec::new();
    while unassigned != 0 {
        let mut best: Mask = 1 << unassigned.trailing_zeros();
        for i in bits(unassigned) {
            for j in bits(unassigned) {
                if j <= i {
                    continue;
                }
                let cand = table[i][j] & unassigned;
                let (cc, bc) = (cand.count_ones(), best.count_ones());
                if cc > bc || (cc == bc && lex_less(cand, best)) {
                    best = cand;
                }
            }
        }
        classes.push(bits(best).collect());
        unassigned &= !best;
    }
    Ok(Classes {
        classes,
        consistent,
    })
}
