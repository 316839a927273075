//! Minimum covers of finite point sets in `Q^k` by affine lines.
//!
//! Both cover problems reduce to this: a set is AP-coverable iff its power-basis
//! coordinates are collinear, and GP-coverable iff its exponent vectors are.
//! Any two points are collinear, so a cover is a choice of *big* lines (three or
//! more points) with everything left over paired off. The search branches on
//! the lowest uncovered point that lies on a big line: cover it by one of those
//! lines, or leave it for the pairs.

use std::collections::{BTreeSet, HashMap};

use crate::arith::Rational;
use num_traits::Zero;

pub(crate) type Mask = u64;

pub(crate) fn bits(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

/// Mask of all points on the affine line through points `i` and `j`.
pub(crate) fn line_through(points: &[Vec<Rational>], i: usize, j: usize) -> Mask {
    let (pi, pj) = (&points[i], &points[j]);
    let dir: Vec<Rational> = pj.iter().zip(pi).map(|(a, b)| a - b).collect();
    let pivot = dir
        .iter()
        .position(|c| !c.is_zero())
        .expect("distinct points");
    let mut mask = 0;
    for (k, pk) in points.iter().enumerate() {
        let lambda = (&pk[pivot] - &pi[pivot]) / &dir[pivot];
        let on = pk
            .iter()
            .zip(pi)
            .zip(&dir)
            .all(|((a, b), d)| a - b == &lambda * d);
        if on {
            mask |= 1 << k;
        }
    }
    mask
}

/// Pairwise line masks, `table[i][j]` for `i != j`.
pub(crate) fn pair_lines(points: &[Vec<Rational>]) -> Vec<Vec<Mask>> {
    let n = points.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if table[i][j] != 0 {
                continue;
            }
            let line = line_through(points, i, j);
            for a in bits(line) {
                for b in bits(line) {
                    if a != b {
                        table[a][b] = line;
                    }
                }
            }
        }
    }
    table
}

/// Distinct lines containing at least three points, largest first.
pub(crate) fn big_lines(table: &[Vec<Mask>]) -> Vec<Mask> {
    let set: BTreeSet<Mask> = table
        .iter()
        .flatten()
        .copied()
        .filter(|m| m.count_ones() >= 3)
        .collect();
    let mut lines: Vec<Mask> = set.into_iter().collect();
    lines.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    lines
}

pub(crate) struct LineCover {
    pub count: usize,
    /// Big lines used, in the order they were chosen.
    pub chosen: Vec<Mask>,
}

struct Search<'a> {
    lines: &'a [Mask],
    best: usize,
    best_chosen: Vec<Mask>,
    seen: HashMap<(Mask, u32), usize>,
}

fn ceil_half(x: usize) -> usize {
    x.div_ceil(2)
}

impl Search<'_> {
    // Every completion uses some big lines, each covering at most its current
    // size, and pairs for the rest.
    fn lower_bound(&self, uncovered: Mask, pool: usize, sizes: &mut [usize]) -> usize {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let total = pool + uncovered.count_ones() as usize;
        let mut best = ceil_half(total);
        let mut covered = 0;
        for (k, s) in sizes.iter().enumerate() {
            covered += s;
            best = best.min(k + 1 + ceil_half(total.saturating_sub(covered)));
        }
        best
    }

    fn dfs(&mut self, uncovered: Mask, pool: usize, chosen: &mut Vec<Mask>) {
        let relevant: Vec<Mask> = self
            .lines
            .iter()
            .copied()
            .filter(|l| (l & uncovered).count_ones() >= 3)
            .collect();
        if relevant.is_empty() {
            let cost = chosen.len() + ceil_half(pool + uncovered.count_ones() as usize);
            if cost < self.best {
                self.best = cost;
                self.best_chosen = chosen.clone();
            }
            return;
        }
        let mut sizes: Vec<usize> = relevant
            .iter()
            .map(|l| (l & uncovered).count_ones() as usize)
            .collect();
        if chosen.len() + self.lower_bound(uncovered, pool, &mut sizes) >= self.best {
            return;
        }
        let key = (uncovered, pool as u32);
        match self.seen.get(&key) {
            Some(&c) if c <= chosen.len() => return,
            _ => {
                self.seen.insert(key, chosen.len());
            }
        }
        let on_big = relevant.iter().fold(0, |acc, l| acc | (l & uncovered));
        let x = on_big.trailing_zeros();
        for &l in relevant.iter().filter(|l| (*l >> x) & 1 == 1) {
            chosen.push(l);
            self.dfs(uncovered & !l, pool, chosen);
            chosen.pop();
        }
        self.dfs(uncovered & !(1 << x), pool + 1, chosen);
    }
}

/// Exact minimum number of lines covering `n` points, given all big lines.
pub(crate) fn min_line_cover(n: usize, lines: &[Mask]) -> LineCover {
    let all: Mask = if n == 64 { !0 } else { (1 << n) - 1 };
    // One above the pair bound, so the first optimum in line-first order is kept.
    let mut search = Search {
        lines,
        best: ceil_half(n) + 1,
        best_chosen: Vec::new(),
        seen: HashMap::new(),
    };
    search.dfs(all, 0, &mut Vec::new());
    LineCover {
        count: search.best,
        chosen: search.best_chosen,
    }
}

/// Turns chosen lines into disjoint member sets: each point goes to the first
/// chosen line containing it, leftovers are paired in index order. Sorted by
/// smallest member.
pub(crate) fn assemble_blocks(n: usize, chosen: &[Mask]) -> Vec<Mask> {
    let mut assigned: Mask = 0;
    let mut blocks = Vec::new();
    for &l in chosen {
        let members = l & !assigned;
        if members != 0 {
            blocks.push(members);
            assigned |= members;
        }
    }
    let rest: Vec<usize> = (0..n).filter(|&i| (assigned >> i) & 1 == 0).collect();
    for pair in rest.chunks(2) {
        blocks.push(pair.iter().fold(0, |acc, &i| acc | (1 << i)));
    }
    blocks.sort_by_key(|m| m.trailing_zeros());
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn pts(xs: &[(i64, i64)]) -> Vec<Vec<Rational>> {
        xs.iter().map(|&(a, b)| vec![int(a), int(b)]).collect()
    }

    #[test]
    fn grid_lines() {
        // 3x3 grid: 8 big lines (3 rows, 3 columns, 2 diagonals).
        let p = pts(&[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]);
        let table = pair_lines(&p);
        assert_eq!(big_lines(&table).len(), 8);
        let cover = min_line_cover(9, &big_lines(&table));
        assert_eq!(cover.count, 3);
        let blocks = assemble_blocks(9, &cover.chosen);
        assert_eq!(blocks.iter().fold(0, |a, b| a | b), (1 << 9) - 1);
    }

    #[test]
    fn overlapping_lines() {
        // Two lines through the origin plus a stray point.
        let p = pts(&[(0, 0), (1, 0), (2, 0), (0, 1), (0, 2), (5, 7)]);
        let table = pair_lines(&p);
        let lines = big_lines(&table);
        assert_eq!(lines.len(), 2);
        let cover = min_line_cover(6, &lines);
        assert_eq!(cover.count, 3);
    }

    #[test]
    fn no_big_lines_pairs_off() {
        let p = pts(&[(0, 0), (1, 0), (0, 1), (1, 1), (3, 5)]);
        let cover = min_line_cover(5, &big_lines(&pair_lines(&p)));
        assert_eq!(cover.count, 3);
        assert!(cover.chosen.is_empty());
        assert_eq!(assemble_blocks(5, &[]), vec![0b11, 0b1100, 0b10000]);
    }
}
