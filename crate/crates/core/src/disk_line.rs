//! Congruent disks stabbed by one horizontal line.
//!
//! With every center on or above the line, disjointness is transitive along
//! the x-order of the centers, the graph has no induced cycle of length five
//! or more, and triangle-free subsets are therefore bipartite. The exact
//! solver is a dynamic program over x-ordered triples `(i, j, k)`: the best
//! triangle-free set whose three leftmost disks are `i, j, k` either stops
//! there, or continues with some `l > k` such that `{i, j, k, l}` is
//! triangle-free and the best set starting `j, k, l`.
//!
//! When centers lie on both sides, each side's maximum independent set is
//! computed (a longest chain of pairwise disjoint disks in x-order) and the
//! two are unioned, which is within a factor two of optimal.

use crate::error::{Error, Result};
use crate::geometry::{DiskScene, Point};
use crate::graph::{Coloring, IntersectionGraph};
use crate::rational::{self, Rational};
use crate::solution::Solution;

/// Largest scene the cubic-space table accepts.
pub const DP_LIMIT: usize = 256;

const NO_SUCCESSOR: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    OnOrAbove,
    Either,
}

fn validate(disks: &DiskScene, line_y: &Rational, side: Side) -> Result<()> {
    disks.validate()?;
    for (i, c) in disks.centers.iter().enumerate() {
        let dy = &c.y - line_y;
        if side == Side::OnOrAbove && dy < rational::int(0) {
            return Err(Error::validation(format!(
                "disk {i}: center lies strictly below the line y = {}",
                rational::format(line_y)
            )));
        }
        if dy.clone() * &dy > &disks.radius * &disks.radius {
            return Err(Error::validation(format!(
                "disk {i} does not meet the line y = {}",
                rational::format(line_y)
            )));
        }
    }
    Ok(())
}

/// Indices sorted by center x, ties by index.
pub fn x_order(centers: &[Point]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..centers.len()).collect();
    order.sort_by(|&a, &b| centers[a].x.cmp(&centers[b].x).then(a.cmp(&b)));
    order
}

fn ordered_graph(disks: &DiskScene, order: &[usize]) -> IntersectionGraph {
    IntersectionGraph::from_predicate(order.len(), |a, b| disks.intersects(order[a], order[b]))
}

fn is_triangle(g: &IntersectionGraph, a: usize, b: usize, c: usize) -> bool {
    g.adjacent(a, b) && g.adjacent(a, c) && g.adjacent(b, c)
}

/// `D[i,j,k]`: positions `l > k` such that `{i, j, k, l}` is triangle-free.
/// Positions refer to the x-order.
pub fn candidate_set(g: &IntersectionGraph, i: usize, j: usize, k: usize) -> Vec<usize> {
    if is_triangle(g, i, j, k) {
        return Vec::new();
    }
    (k + 1..g.n())
        .filter(|&l| {
            !is_triangle(g, i, j, l) && !is_triangle(g, i, k, l) && !is_triangle(g, j, k, l)
        })
        .collect()
}

/// The triple table `B[i,j,k]` with successor pointers, over x-order
/// positions `i < j < k`.
#[derive(Clone, Debug)]
pub struct DpTable {
    n: usize,
    order: Vec<usize>,
    value: Vec<u16>,
    successor: Vec<u32>,
}

impl DpTable {
    /// Fills the table for a one-sided stabbed scene. `O(n^4)` time.
    pub fn build(disks: &DiskScene, line_y: &Rational) -> Result<DpTable> {
        validate(disks, line_y, Side::OnOrAbove)?;
        let n = disks.len();
        if n > DP_LIMIT {
            return Err(Error::Capacity {
                what: "one-sided disk table",
                limit: DP_LIMIT,
                actual: n,
            });
        }
        let order = x_order(&disks.centers);
        let g = ordered_graph(disks, &order);
        let mut table = DpTable {
            n,
            order,
            value: vec![0; n * n * n],
            successor: vec![NO_SUCCESSOR; n * n * n],
        };
        // B[i,j,k] reads only B[j,k,l] with j > i, so fill by decreasing i.
        for i in (0..n).rev() {
            for j in i + 1..n {
                for k in j + 1..n {
                    if is_triangle(&g, i, j, k) {
                        continue;
                    }
                    let mut best: Option<(u16, usize)> = None;
                    for l in k + 1..n {
                        if is_triangle(&g, i, j, l)
                            || is_triangle(&g, i, k, l)
                            || is_triangle(&g, j, k, l)
                        {
                            continue;
                        }
                        let v = table.value[table.idx(j, k, l)];
                        if best.is_none_or(|(b, _)| v > b) {
                            best = Some((v, l));
                        }
                    }
                    let at = table.idx(i, j, k);
                    match best {
                        None => table.value[at] = 3,
                        Some((v, l)) => {
                            table.value[at] = v + 1;
                            table.successor[at] = l as u32;
                        }
                    }
                }
            }
        }
        Ok(table)
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Original index of the disk at x-order position `p`.
    pub fn original(&self, p: usize) -> usize {
        self.order[p]
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> u16 {
        assert!(
            i < j && j < k && k < self.n,
            "triple must be strictly increasing"
        );
        self.value[self.idx(i, j, k)]
    }

    pub fn successor(&self, i: usize, j: usize, k: usize) -> Option<usize> {
        assert!(
            i < j && j < k && k < self.n,
            "triple must be strictly increasing"
        );
        let s = self.successor[self.idx(i, j, k)];
        (s != NO_SUCCESSOR).then_some(s as usize)
    }

    /// First triple (lexicographically) holding the table maximum.
    pub fn best_triple(&self) -> Option<((usize, usize, usize), u16)> {
        let mut best: Option<((usize, usize, usize), u16)> = None;
        for i in 0..self.n {
            for j in i + 1..self.n {
                for k in j + 1..self.n {
                    let v = self.value[self.idx(i, j, k)];
                    if best.is_none_or(|(_, b)| v > b) {
                        best = Some(((i, j, k), v));
                    }
                }
            }
        }
        best
    }

    /// Follows successor pointers from `(i, j, k)`; returns x-order positions.
    pub fn reconstruct(&self, i: usize, j: usize, k: usize) -> Vec<usize> {
        let mut chain = vec![i, j, k];
        let (mut a, mut b, mut c) = (i, j, k);
        while let Some(l) = self.successor(a, b, c) {
            chain.push(l);
            (a, b, c) = (b, c, l);
        }
        chain
    }
}

/// Exact maximum bipartite subset when every disk meets the line `y = line_y`
/// and every center is on or above it.
pub fn solve_one_sided(disks: &DiskScene, line_y: &Rational) -> Result<Solution> {
    validate(disks, line_y, Side::OnOrAbove)?;
    let n = disks.len();
    let g = IntersectionGraph::from_predicate(n, |a, b| disks.intersects(a, b));
    if n <= 2 {
        return Solution::new((0..n).collect()).certify(&g);
    }
    let table = DpTable::build(disks, line_y)?;
    let picked = match table.best_triple() {
        Some(((i, j, k), v)) if v >= 3 => table
            .reconstruct(i, j, k)
            .into_iter()
            .map(|p| table.original(p))
            .collect(),
        // Every triple is a triangle: any two disks are optimal.
        _ => vec![0, 1],
    };
    Solution::new(picked).certify(&g)
}

/// Maximum independent set of a one-sided stabbed scene: the longest chain
/// of pairwise disjoint disks in x-order. `O(n^2)`.
pub fn one_sided_mis(disks: &DiskScene, line_y: &Rational) -> Result<Solution> {
    validate(disks, line_y, Side::OnOrAbove)?;
    Ok(longest_disjoint_chain(disks))
}

fn longest_disjoint_chain(disks: &DiskScene) -> Solution {
    let order = x_order(&disks.centers);
    let n = order.len();
    let mut length = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for b in 0..n {
        for a in 0..b {
            if !disks.intersects(order[a], order[b]) && length[a] + 1 > length[b] {
                length[b] = length[a] + 1;
                prev[b] = a;
            }
        }
    }
    let Some(mut end) = (0..n).max_by(|&a, &b| length[a].cmp(&length[b]).then(b.cmp(&a))) else {
        return Solution::with_coloring(Coloring::new());
    };
    let mut chain = Coloring::new();
    loop {
        chain.insert(order[end], 0);
        if prev[end] == usize::MAX {
            break;
        }
        end = prev[end];
    }
    Solution::with_coloring(chain)
}

/// Factor-two approximation when the disks meet `y = line_y` from both
/// sides: independent sets of the upper and lower halves, colored 0 and 1.
pub fn solve_two_sided(disks: &DiskScene, line_y: &Rational) -> Result<Solution> {
    validate(disks, line_y, Side::Either)?;
    let (above, below): (Vec<usize>, Vec<usize>) =
        (0..disks.len()).partition(|&i| disks.centers[i].y >= *line_y);
    let upper = longest_disjoint_chain(&disks.subset(&above));
    let twice = line_y + line_y;
    let lower_reflected = DiskScene::new(
        disks.radius.clone(),
        below
            .iter()
            .map(|&i| {
                let c = &disks.centers[i];
                Point::new(c.x.clone(), &twice - &c.y)
            })
            .collect(),
    );
    let lower = longest_disjoint_chain(&lower_reflected);
    let mut coloring = Coloring::new();
    coloring.extend(upper.selected().iter().map(|&v| (above[v], 0)));
    coloring.extend(lower.selected().iter().map(|&v| (below[v], 1)));
    Ok(Solution::with_coloring(coloring))
}

/// [`solve_two_sided`] against the vertical line `x = line_x`, by reflecting
/// the scene across the diagonal.
pub(crate) fn solve_two_sided_vertical(disks: &DiskScene, line_x: &Rational) -> Result<Solution> {
    let mirrored = DiskScene::new(
        disks.radius.clone(),
        disks
            .centers
            .iter()
            .map(|c| Point::new(c.y.clone(), c.x.clone()))
            .collect(),
    );
    solve_two_sided(&mirrored, line_x)
}
