//! 2-approximation for unit-height rectangles.
//!
//! With `a` the lowest bottom edge, rectangle `R` goes to group
//! `⌊y_min(R) − a⌋`. Every member of group `j` crosses the line
//! `y = a + j + 1`, so inside a group two rectangles meet exactly when their
//! x-projections do, and each group is solved exactly as an interval
//! instance. Groups two apart are vertically separated, so the even groups
//! and the odd groups each give a valid union; the larger one is returned.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::{Interval, Rect, Scene};
use crate::interval::{self, IntervalOptions};
use crate::rational;
use crate::solution::Solution;

/// Group number of every rectangle.
pub fn unit_height_groups(rects: &[Rect]) -> Result<Vec<BigInt>> {
    Scene::UnitHeightRects(rects.to_vec()).validate()?;
    let Some(a) = rects.iter().map(|r| &r.y_min).min() else {
        return Ok(Vec::new());
    };
    Ok(rects
        .iter()
        .map(|r| rational::floor_int(&(&r.y_min - a)))
        .collect())
}

/// Larger of the even-group and odd-group unions of exact per-group
/// interval solutions. Ties favour the even groups.
pub fn solve_unit_height(rects: &[Rect]) -> Result<Solution> {
    Scene::UnitHeightRects(rects.to_vec()).require_nonempty()?;
    let groups = unit_height_groups(rects)?;
    let mut members: BTreeMap<&BigInt, Vec<usize>> = BTreeMap::new();
    for (i, g) in groups.iter().enumerate() {
        members.entry(g).or_default().push(i);
    }
    let solved: Vec<(bool, Solution)> = members
        .into_par_iter()
        .map(|(g, m)| {
            let projections: Vec<Interval> = m.iter().map(|&i| rects[i].x_projection()).collect();
            let local = interval::solve_intervals(&projections, IntervalOptions::perturbed())?;
            Ok((g.is_odd(), local.remap(&m)))
        })
        .collect::<Result<_>>()?;
    let parity_union = |odd: bool| {
        Solution::disjoint_union(solved.iter().filter(|(o, _)| *o == odd).map(|(_, s)| s))
    };
    let (even, odd) = (parity_union(false), parity_union(true));
    Ok(if odd.len() > even.len() { odd } else { even })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::IntersectionGraph;
    use crate::oracle;
    use crate::rational::{int, ratio, Rational};
    use proptest::prelude::*;

    fn rect(x0: Rational, x1: Rational, y: Rational) -> Rect {
        Rect::new(x0, x1, y.clone(), y + int(1))
    }

    #[test]
    fn one_group_triangle() {
        let r = vec![
            rect(int(0), int(3), int(0)),
            rect(int(1), int(4), ratio(1, 2)),
            rect(int(2), int(5), ratio(1, 4)),
        ];
        let g = IntersectionGraph::build(&Scene::UnitHeightRects(r.clone())).unwrap();
        assert_eq!(oracle::exact_mbs(&g).unwrap().len(), 2);
        assert_eq!(solve_unit_height(&r).unwrap().len(), 2);
    }

    #[test]
    fn groups_zero_and_two_both_kept() {
        let r = vec![
            rect(int(0), int(1), int(0)),
            rect(int(0), int(1), ratio(5, 2)),
        ];
        assert_eq!(
            unit_height_groups(&r).unwrap(),
            vec![BigInt::from(0), BigInt::from(2)]
        );
        assert_eq!(solve_unit_height(&r).unwrap().len(), 2);
    }

    #[test]
    fn disjoint_across_adjacent_groups() {
        let r = vec![
            rect(int(0), int(1), int(0)),
            rect(int(2), int(3), int(1)),
            rect(int(4), int(5), ratio(1, 2)),
        ];
        assert!(solve_unit_height(&r).unwrap().len() >= 2);
    }

    #[test]
    fn rejects_non_unit_height() {
        let r = vec![Rect::new(int(0), int(1), int(0), int(2))];
        assert!(solve_unit_height(&r).is_err());
        assert!(solve_unit_height(&[]).is_err());
    }

    fn arb_rects(max_n: usize) -> impl Strategy<Value = Vec<Rect>> {
        proptest::collection::vec((0i64..16, 1i64..6, 0i64..12), 1..=max_n).prop_map(|v| {
            v.iter()
                .map(|&(x, w, y)| rect(ratio(x, 2), ratio(x + w, 2), ratio(y, 3)))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn grouping_invariants(r in arb_rects(14)) {
            let groups = unit_height_groups(&r).unwrap();
            for a in 0..r.len() {
                for b in 0..r.len() {
                    if a == b { continue; }
                    if groups[a] == groups[b] {
                        prop_assert_eq!(r[a].intersects(&r[b]), r[a].x_projection().intersects(&r[b].x_projection()));
                    } else if (&groups[a] - &groups[b]).is_even() {
                        prop_assert!(!r[a].intersects(&r[b]));
                    }
                }
            }
        }

        #[test]
        fn within_factor_two(r in arb_rects(11)) {
            let g = IntersectionGraph::build(&Scene::UnitHeightRects(r.clone())).unwrap();
            let sol = solve_unit_height(&r).unwrap();
            prop_assert!(2 * sol.len() >= oracle::exact_mbs(&g).unwrap().len());
            prop_assert!(sol.is_certified_bipartite(&g).unwrap());
        }
    }
}
