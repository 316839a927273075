use super::classes::{commensurability_classes, coordinates};
use super::coverable::{ap_coverable, exponent_vectors, gp_coverable, gp_values};
use super::lines::{assemble_blocks, big_lines, bits, min_line_cover, pair_lines, Mask};
use super::{Block, CoverInstance, CoverSolution, Mode, Witness};
use crate::arith::Rational;
use crate::error::{Error, Result};

fn build_solution(instance: &CoverInstance, mode: Mode, masks: Vec<Mask>) -> Result<CoverSolution> {
    let mut blocks = Vec::with_capacity(masks.len());
    for mask in masks {
        let members: Vec<usize> = bits(mask).collect();
        let elems = instance.subset(&members);
        let witness = match mode {
            Mode::Ap => ap_coverable(&elems)?.map(Witness::Ap),
            Mode::Gp => gp_coverable(&elems)?.map(Witness::Gp),
        }
        .ok_or_else(|| {
            Error::Invariant(format!("solver block {members:?} has no single-progression witness"))
        })?;
        blocks.push(Block { members, witness });
    }
    let solution = CoverSolution {
        count: blocks.len(),
        blocks,
        exact: true,
    };
    solution.verify(instance)?;
    Ok(solution)
}

fn trivial(instance: &CoverInstance, mode: Mode) -> Option<Result<CoverSolution>> {
    match instance.len() {
        0 => Some(Ok(CoverSolution {
            count: 0,
            blocks: Vec::new(),
            exact: true,
        })),
        1 => Some(build_solution(instance, mode, vec![1])),
        _ => None,
    }
}

/// Exact `a(S)`.
///
/// Any block of three or more elements lies inside one commensurability class
/// and any two elements form a block. When the classes are consistent, the
/// best cover takes the `j` largest classes whole and pairs the rest, so
/// `a(S) = min_j (j + ceil(rest_j / 2))`. When some element lies on two large
/// coverable subsets the exact line-cover search is used instead.
pub fn min_ap_cover(instance: &CoverInstance) -> Result<CoverSolution> {
    instance.check_mode(Mode::Ap)?;
    if let Some(s) = trivial(instance, Mode::Ap) {
        return s;
    }
    let n = instance.len();
    let classes = commensurability_classes(instance)?;
    if !classes.consistent {
        let big = big_lines(&pair_lines(&coordinates(instance)));
        let cover = min_line_cover(n, &big);
        let solution = build_solution(instance, Mode::Ap, assemble_blocks(n, &cover.chosen))?;
        debug_assert_eq!(solution.count, cover.count);
        return Ok(solution);
    }

    let mut order: Vec<&Vec<usize>> = classes.classes.iter().collect();
    order.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let (mut best_j, mut best) = (0, n.div_ceil(2));
    let mut taken = 0;
    for (j, c) in order.iter().enumerate() {
        taken += c.len();
        let cost = j + 1 + (n - taken).div_ceil(2);
        if cost <= best {
            best = cost;
            best_j = j + 1;
        }
    }
    let chosen: Vec<Mask> = order[..best_j]
        .iter()
        .map(|c| c.iter().fold(0, |m, &i| m | (1 << i)))
        .collect();
    let solution = build_solution(instance, Mode::Ap, assemble_blocks(n, &chosen))?;
    if solution.count != best {
        return Err(Error::Invariant(format!(
            "class formula gave {best} but assembled {} blocks",
            solution.count
        )));
    }
    Ok(solution)
}

/// Exact `g(S)` for a set of positive rationals: minimum line cover of the
/// exponent vectors.
pub fn min_gp_cover(instance: &CoverInstance) -> Result<CoverSolution> {
    instance.check_mode(Mode::Gp)?;
    if let Some(s) = trivial(instance, Mode::Gp) {
        return s;
    }
    let n = instance.len();
    let values = gp_values(instance.elements())?;
    let (_, vectors) = exponent_vectors(&values)?;
    let points: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.coordinates.iter().map(|&c| Rational::from_integer(c.into())).collect())
        .collect();
    let big = big_lines(&pair_lines(&points));
    let cover = min_line_cover(n, &big);
    let solution = build_solution(instance, Mode::Gp, assemble_blocks(n, &cover.chosen))?;
    debug_assert_eq!(solution.count, cover.count);
    Ok(solution)
}
