//! Near-optimal maximum bipartite subgraph of a circular-arc graph.
//!
//! Cutting the circle at a point `p` and discarding the arcs through `p`
//! leaves an interval graph. Every arc endpoint is tried as a cut, together
//! with one point inside each elementary segment between endpoints; each cut
//! is solved exactly by the interval sweep and the largest candidate wins.
//! The result is at most one vertex short of the optimum.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, Arc, Scene};
use crate::interval::{self, IntervalOptions};
use crate::rational::{self, Rational};
use crate::solution::Solution;

/// The interval instance obtained by cutting the circle at `point`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleCut {
    pub point: Rational,
    /// Original indices of the arcs that avoid `point`.
    pub survivors: Vec<usize>,
    /// Survivor `k` laid out on `(0, 1)` starting from `point`.
    pub intervals: Vec<crate::geometry::Interval>,
}

pub fn cut_circle(arcs: &[Arc], point: &Rational) -> CircleCut {
    let mut survivors = Vec::new();
    let mut intervals = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        if a.contains(point) {
            continue;
        }
        let start = wrap_angle(&(&a.start - point));
        let end = &start + a.length();
        survivors.push(i);
        intervals.push(crate::geometry::Interval::new(start, end));
    }
    CircleCut {
        point: point.clone(),
        survivors,
        intervals,
    }
}

/// One interior point of every elementary segment between consecutive
/// distinct arc endpoints, in circular order.
pub fn segment_points(arcs: &[Arc]) -> Vec<Rational> {
    let mut marks: Vec<Rational> = arcs
        .iter()
        .flat_map(|a| [a.start.clone(), a.end.clone()])
        .collect();
    marks.sort();
    marks.dedup();
    let Some(first) = marks.first().cloned() else {
        return Vec::new();
    };
    let mut next = marks.iter().skip(1).cloned().collect::<Vec<_>>();
    next.push(first + rational::int(1));
    marks
        .iter()
        .zip(&next)
        .map(|(a, b)| wrap_angle(&((a + b) / rational::int(2))))
        .collect()
}

/// A point of the circle covered by no arc, if one exists.
pub fn uncovered_point(arcs: &[Arc]) -> Option<Rational> {
    segment_points(arcs)
        .into_iter()
        .find(|m| arcs.iter().all(|a| !a.contains(m)))
}

/// Candidate cut points in evaluation order: `start(u), end(u)` for every
/// arc `u`, then one point inside every elementary segment. The segment
/// points include an uncovered point whenever the arcs leave a gap, so the
/// whole instance is solved exactly in that case.
pub fn cut_points(arcs: &[Arc]) -> Vec<Rational> {
    let mut points: Vec<Rational> = arcs
        .iter()
        .flat_map(|a| [a.start.clone(), a.end.clone()])
        .collect();
    points.extend(segment_points(arcs));
    points
}

fn solve_cut(arcs: &[Arc], point: &Rational) -> Result<Solution> {
    let cut = cut_circle(arcs, point);
    // Arcs may share endpoints; symbolic perturbation keeps the cut graph exact.
    let local = interval::solve_intervals(&cut.intervals, IntervalOptions::perturbed())?;
    Ok(local.remap(&cut.survivors))
}

/// Best of the cut candidates: largest, then lexicographically smallest.
pub fn solve_arcs(arcs: &[Arc]) -> Result<Solution> {
    let scene = Scene::Arcs(arcs.to_vec());
    scene.validate()?;
    scene.require_nonempty()?;
    let points = cut_points(arcs);
    let candidates: Vec<Solution> = points
        .par_iter()
        .map(|p| solve_cut(arcs, p))
        .collect::<Result<_>>()?;
    candidates
        .into_iter()
        .reduce(|best, c| {
            if c.len() > best.len() || (c.len() == best.len() && c.lex_key() < best.lex_key()) {
                c
            } else {
                best
            }
        })
        .ok_or_else(|| Error::Internal("no cut candidates".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::IntersectionGraph;
    use crate::oracle;
    use crate::rational::ratio;

    fn arc(s: (i64, i64), e: (i64, i64)) -> Arc {
        Arc::new(ratio(s.0, s.1), ratio(e.0, e.1))
    }

    /// Five arcs, each overlapping only its two cyclic neighbours.
    fn c5() -> Vec<Arc> {
        (0..5)
            .map(|i| arc((2 * i, 10), ((2 * i + 3) % 10, 10)))
            .collect()
    }

    #[test]
    fn five_cycle_gives_four() {
        let arcs = c5();
        let g = IntersectionGraph::build(&Scene::Arcs(arcs.clone())).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2));
        let sol = solve_arcs(&arcs).unwrap();
        assert_eq!(sol.len(), 4);
        assert_eq!(oracle::exact_mbs(&g).unwrap().len(), 4);
        assert!(sol.is_certified_bipartite(&g).unwrap());
    }

    #[test]
    fn endpoint_cuts_alone_lose_one_on_five_cycle() {
        // Each endpoint of an induced 5-cycle lies in two arcs.
        let arcs = c5();
        let best = arcs
            .iter()
            .flat_map(|a| [a.start.clone(), a.end.clone()])
            .map(|p| solve_cut(&arcs, &p).unwrap().len())
            .max()
            .unwrap();
        assert_eq!(best, 3);
    }

    #[test]
    fn disjoint_arcs_all_selected() {
        let arcs = vec![
            arc((0, 1), (1, 10)),
            arc((2, 10), (3, 10)),
            arc((5, 10), (9, 10)),
        ];
        assert_eq!(solve_arcs(&arcs).unwrap().len(), 3);
    }

    #[test]
    fn three_covering_arcs_form_a_triangle() {
        let arcs = vec![
            arc((0, 1), (1, 2)),
            arc((1, 3), (5, 6)),
            arc((2, 3), (1, 6)),
        ];
        let g = IntersectionGraph::build(&Scene::Arcs(arcs.clone())).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(solve_arcs(&arcs).unwrap().len(), 2);
    }

    #[test]
    fn uncovered_point_found_only_when_gap() {
        assert_eq!(uncovered_point(&c5()), None);
        let arcs = vec![arc((0, 1), (1, 4)), arc((1, 2), (3, 4))];
        let p = uncovered_point(&arcs).unwrap();
        assert!(arcs.iter().all(|a| !a.contains(&p)));
    }

    #[test]
    fn cut_preserves_adjacency() {
        let arcs = vec![
            arc((9, 10), (2, 10)),
            arc((1, 10), (4, 10)),
            arc((3, 10), (6, 10)),
            arc((7, 10), (1, 20)),
        ];
        let cut = cut_circle(&arcs, &ratio(13, 20));
        for (a, &ia) in cut.survivors.iter().enumerate() {
            for (b, &ib) in cut.survivors.iter().enumerate() {
                if a != b {
                    assert_eq!(
                        cut.intervals[a].intersects(&cut.intervals[b]),
                        arcs[ia].intersects(&arcs[ib])
                    );
                }
            }
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(solve_arcs(&[]), Err(Error::Validation(_))));
    }
}
