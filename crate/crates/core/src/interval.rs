//! Exact maximum bipartite subgraph of an interval graph by a single sweep.
//!
//! Intervals are scanned by right endpoint while tracking `y`, the rightmost
//! point covered once by the current selection, and `x`, the rightmost point
//! covered twice. An interval is taken when it starts past `y`, or strictly
//! between `x` and `y`; otherwise it would create a point of depth three.
//! Since interval graphs are chordal, depth at most two is exactly
//! bipartiteness.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::Interval;
use crate::graph::Coloring;
use crate::rational::{self, Rational};
use crate::solution::Solution;

/// What to do when two endpoints coincide.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TiePolicy {
    /// Reject the instance with a validation error.
    #[default]
    Reject,
    /// Break ties symbolically: at equal coordinates left endpoints precede
    /// right endpoints, and equal endpoints of the same side are ordered by
    /// index. This keeps the closed intersection graph unchanged.
    Perturb,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntervalOptions {
    /// Caller guarantees the input is ordered by right endpoint.
    pub presorted: bool,
    pub ties: TiePolicy,
}

impl IntervalOptions {
    pub fn perturbed() -> Self {
        IntervalOptions {
            presorted: false,
            ties: TiePolicy::Perturb,
        }
    }
}

/// Totally ordered endpoint: coordinate, then side (left before right), then
/// interval index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Endpoint<'a> {
    value: &'a Rational,
    side: u8,
    index: usize,
}

fn left_of(intervals: &[Interval], i: usize) -> Endpoint<'_> {
    Endpoint {
        value: &intervals[i].left,
        side: 0,
        index: i,
    }
}

fn right_of(intervals: &[Interval], i: usize) -> Endpoint<'_> {
    Endpoint {
        value: &intervals[i].right,
        side: 1,
        index: i,
    }
}

/// Sweep variables after one iteration; `None` stands for −∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepState {
    pub x: Option<Rational>,
    pub y: Option<Rational>,
}

fn validate(intervals: &[Interval], opts: &IntervalOptions) -> Result<Vec<usize>> {
    for (i, iv) in intervals.iter().enumerate() {
        if iv.left >= iv.right {
            return Err(Error::validation(format!(
                "interval {i}: left endpoint must be below right endpoint"
            )));
        }
    }
    if opts.ties == TiePolicy::Reject {
        let mut values: Vec<&Rational> = intervals
            .iter()
            .flat_map(|iv| [&iv.left, &iv.right])
            .collect();
        values.sort_unstable();
        if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::validation(format!(
                "duplicate endpoint {}; endpoints must be distinct (or enable perturbation)",
                rational::format(w[0])
            )));
        }
    }
    let order: Vec<usize> = (0..intervals.len()).collect();
    if opts.presorted {
        if let Some(w) = order
            .windows(2)
            .find(|w| right_of(intervals, w[0]) > right_of(intervals, w[1]))
        {
            return Err(Error::validation(format!(
                "intervals {} and {} are not ordered by right endpoint",
                w[0], w[1]
            )));
        }
        Ok(order)
    } else {
        let mut order = order;
        order.sort_by(|&a, &b| right_of(intervals, a).cmp(&right_of(intervals, b)));
        Ok(order)
    }
}

fn sweep(intervals: &[Interval], opts: &IntervalOptions) -> Result<(Vec<usize>, Vec<SweepState>)> {
    let order = validate(intervals, opts)?;
    let mut selected = Vec::new();
    let mut trace = Vec::with_capacity(order.len());
    let mut x: Option<Endpoint> = None;
    let mut y: Option<Endpoint> = None;
    for i in order {
        let left = Some(left_of(intervals, i));
        if left > y {
            selected.push(i);
            y = Some(right_of(intervals, i));
        } else if x < left && left < y {
            selected.push(i);
            x = y;
            y = Some(right_of(intervals, i));
        }
        trace.push(SweepState {
            x: x.as_ref().map(|e| e.value.clone()),
            y: y.as_ref().map(|e| e.value.clone()),
        });
    }
    Ok((selected, trace))
}

/// 2-colors a selection of depth at most two by a left-to-right sweep: each
/// interval takes the opposite color of the (at most one) selected interval
/// still open at its left endpoint.
fn sweep_coloring(intervals: &[Interval], selected: &[usize]) -> Result<Coloring> {
    let mut by_left = selected.to_vec();
    by_left.sort_by(|&a, &b| left_of(intervals, a).cmp(&left_of(intervals, b)));
    let mut coloring = Coloring::new();
    let mut open: Vec<usize> = Vec::new();
    for i in by_left {
        let start = left_of(intervals, i);
        open.retain(|&j| right_of(intervals, j).cmp(&start) == Ordering::Greater);
        let color = match open.as_slice() {
            [] => 0,
            [j] => 1 - coloring[j],
            _ => {
                return Err(Error::Internal(format!(
                    "interval {i} starts inside {} selected intervals",
                    open.len()
                )))
            }
        };
        coloring.insert(i, color);
        open.push(i);
    }
    Ok(coloring)
}

/// Maximum bipartite subset of `intervals`, with a 2-coloring certificate.
pub fn solve_intervals(intervals: &[Interval], opts: IntervalOptions) -> Result<Solution> {
    let (selected, _) = sweep(intervals, &opts)?;
    Ok(Solution::with_coloring(sweep_coloring(
        intervals, &selected,
    )?))
}

/// Sweep variables after every iteration, in scan order.
pub fn sweep_states(intervals: &[Interval], opts: IntervalOptions) -> Result<Vec<SweepState>> {
    Ok(sweep(intervals, &opts)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Scene;
    use crate::graph::IntersectionGraph;
    use crate::oracle;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn iv(l: Rational, r: Rational) -> Interval {
        Interval::new(l, r)
    }

    #[test]
    fn three_mutually_overlapping() {
        let s = vec![
            iv(int(0), int(2)),
            iv(int(1), int(3)),
            iv(ratio(3, 2), int(4)),
        ];
        let sol = solve_intervals(&s, IntervalOptions::default()).unwrap();
        assert_eq!(sol.selected(), &[0, 1]);
    }

    #[test]
    fn disjoint_all_taken() {
        let s = vec![iv(int(0), int(1)), iv(int(2), int(3)), iv(int(4), int(5))];
        let sol = solve_intervals(&s, IntervalOptions::default()).unwrap();
        assert_eq!(sol.len(), 3);
        let one = solve_intervals(&s[..1], IntervalOptions::default()).unwrap();
        assert_eq!(one.selected(), &[0]);
    }

    #[test]
    fn long_interval_over_two_short_ones() {
        let s = vec![iv(int(0), int(10)), iv(int(1), int(2)), iv(int(3), int(4))];
        let sol = solve_intervals(&s, IntervalOptions::default()).unwrap();
        assert_eq!(sol.len(), 3);
        let c = sol.coloring().unwrap();
        assert_ne!(c[&0], c[&1]);
        assert_ne!(c[&0], c[&2]);
    }

    #[test]
    fn duplicate_endpoints_rejected_unless_perturbed() {
        let s = vec![iv(int(0), int(1)), iv(int(1), int(2)), iv(int(1), int(3))];
        assert!(matches!(
            solve_intervals(&s, IntervalOptions::default()),
            Err(Error::Validation(_))
        ));
        // All three contain the point 1: a triangle under closed semantics.
        let sol = solve_intervals(&s, IntervalOptions::perturbed()).unwrap();
        assert_eq!(sol.len(), 2);
    }

    #[test]
    fn presorted_flag_is_checked() {
        let s = vec![iv(int(0), int(5)), iv(int(1), int(2))];
        let opts = IntervalOptions {
            presorted: true,
            ..Default::default()
        };
        assert!(solve_intervals(&s, opts).is_err());
        let sorted = vec![iv(int(1), int(2)), iv(int(0), int(5))];
        assert_eq!(solve_intervals(&sorted, opts).unwrap().len(), 2);
    }

    fn arb_intervals(max_n: usize, distinct: bool) -> impl Strategy<Value = Vec<Interval>> {
        (1..=max_n).prop_flat_map(move |n| {
            let coords = if distinct {
                Just((0..2 * n as i64).collect::<Vec<_>>())
                    .prop_shuffle()
                    .boxed()
            } else {
                proptest::collection::vec(0i64..8, 2 * n).boxed()
            };
            coords.prop_filter_map("degenerate", |c| {
                c.chunks(2)
                    .map(|p| (p[0] != p[1]).then(|| iv(int(p[0].min(p[1])), int(p[0].max(p[1])))))
                    .collect::<Option<Vec<_>>>()
            })
        })
    }

    proptest! {
        #[test]
        fn optimal_against_oracle(s in arb_intervals(12, true)) {
            let sol = solve_intervals(&s, IntervalOptions::default()).unwrap();
            let g = IntersectionGraph::build(&Scene::Intervals(s.clone())).unwrap();
            prop_assert_eq!(sol.len(), oracle::exact_mbs(&g).unwrap().len());
            prop_assert!(sol.is_certified_bipartite(&g).unwrap());
        }

        #[test]
        fn perturbed_optimal_with_ties(s in arb_intervals(10, false)) {
            let sol = solve_intervals(&s, IntervalOptions::perturbed()).unwrap();
            let g = IntersectionGraph::build(&Scene::Intervals(s.clone())).unwrap();
            prop_assert_eq!(sol.len(), oracle::exact_mbs(&g).unwrap().len());
            prop_assert!(sol.is_certified_bipartite(&g).unwrap());
        }

        #[test]
        fn no_point_stabs_three(s in arb_intervals(16, true)) {
            let sol = solve_intervals(&s, IntervalOptions::default()).unwrap();
            for p in s.iter().flat_map(|i| [&i.left, &i.right]) {
                let depth = sol.selected().iter().filter(|&&j| s[j].contains(p)).count();
                prop_assert!(depth <= 2);
            }
        }

        #[test]
        fn sweep_state_is_monotone(s in arb_intervals(16, true)) {
            let states = sweep_states(&s, IntervalOptions::default()).unwrap();
            for w in states.windows(2) {
                prop_assert!(w[0].x <= w[1].x && w[0].y <= w[1].y);
            }
            for st in &states {
                if st.y.is_some() {
                    prop_assert!(st.x <= st.y);
                }
            }
        }
    }
}
