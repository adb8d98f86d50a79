//! Arbitrary congruent disks.
//!
//! The 3-approximation stabs the scene with horizontal lines spaced one
//! radius apart, assigning each disk to the highest line at or below its
//! center. Every group then meets the one-sided exact solver's precondition.
//! Groups whose line indices differ by three or more are separated by more
//! than a diameter, so the unions over each residue class mod 3 are valid and
//! the best of the three keeps a third of the optimum.
//!
//! The logarithmic algorithm splits at the median center x: disks within one
//! radius of the median vertical line are solved by the two-sided
//! 2-approximation, the left and right remainders recursively, and the
//! better of the middle and the union of the sides is returned.
//!
//! Both results are finally extended greedily by any disk that keeps the
//! selection bipartite, which never lowers the guarantee.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::disk_line::{self, x_order};
use crate::error::Result;
use crate::geometry::{DiskScene, Scene};
use crate::graph::IntersectionGraph;
use crate::rational::{self, Rational};
use crate::solution::Solution;

/// Disks grouped by stabbing line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlabAssignment {
    /// y-values of the occupied lines, increasing, spaced by multiples of
    /// the radius.
    pub lines: Vec<Rational>,
    /// Disk index to position in `lines`.
    pub group: Vec<usize>,
}

impl SlabAssignment {
    /// Lines `y = y_min + t·r`; a disk belongs to the largest `t` whose line
    /// is at or below its center.
    pub fn build(disks: &DiskScene) -> Result<SlabAssignment> {
        disks.validate()?;
        let Some(base) = disks.centers.iter().map(|c| &c.y).min().cloned() else {
            return Ok(SlabAssignment {
                lines: Vec::new(),
                group: Vec::new(),
            });
        };
        let level: Vec<BigInt> = disks
            .centers
            .iter()
            .map(|c| rational::floor_int(&((&c.y - &base) / &disks.radius)))
            .collect();
        let mut occupied: Vec<&BigInt> = level.iter().collect();
        occupied.sort();
        occupied.dedup();
        let position: BTreeMap<&BigInt, usize> =
            occupied.iter().enumerate().map(|(p, &t)| (t, p)).collect();
        Ok(SlabAssignment {
            lines: occupied
                .iter()
                .map(|&t| &base + Rational::from_integer(t.clone()) * &disks.radius)
                .collect(),
            group: level.iter().map(|t| position[t]).collect(),
        })
    }

    pub fn members(&self, line: usize) -> Vec<usize> {
        (0..self.group.len())
            .filter(|&d| self.group[d] == line)
            .collect()
    }
}

fn graph(disks: &DiskScene) -> IntersectionGraph {
    IntersectionGraph::from_predicate(disks.len(), |a, b| disks.intersects(a, b))
}

/// Exact per-line solutions `B_i`, in original indices.
pub fn group_solutions(disks: &DiskScene, slabs: &SlabAssignment) -> Result<Vec<Solution>> {
    (0..slabs.lines.len())
        .into_par_iter()
        .map(|line| {
            let members = slabs.members(line);
            let local = disk_line::solve_one_sided(&disks.subset(&members), &slabs.lines[line])?;
            Ok(local.remap(&members))
        })
        .collect()
}

/// Best of the three residue-class unions of exact per-line solutions.
pub fn solve_3approx(disks: &DiskScene) -> Result<Solution> {
    Scene::UnitDisks(disks.clone()).require_nonempty()?;
    let slabs = SlabAssignment::build(disks)?;
    let groups = group_solutions(disks, &slabs)?;
    let mut best = Solution::new(Vec::new());
    for residue in 0..3 {
        let class = Solution::disjoint_union(groups.iter().skip(residue).step_by(3));
        if class.len() > best.len() {
            best = class;
        }
    }
    best.extend_greedily(&graph(disks))
}

/// Median divide and conquer; at least `OPT / max(1, 2·log₂ n)`.
pub fn solve_logn(disks: &DiskScene) -> Result<Solution> {
    let scene = Scene::UnitDisks(disks.clone());
    scene.validate()?;
    scene.require_nonempty()?;
    let all: Vec<usize> = x_order(&disks.centers);
    split(disks, &all)?.extend_greedily(&graph(disks))
}

/// `members` is sorted by (x, index).
fn split(disks: &DiskScene, members: &[usize]) -> Result<Solution> {
    if members.len() <= 2 {
        let local = disks.subset(members);
        return Ok(Solution::new((0..members.len()).collect())
            .certify(&graph(&local))?
            .remap(members));
    }
    let median = &disks.centers[members[(members.len() - 1) / 2]].x;
    let r = &disks.radius;
    let mut left = Vec::new();
    let mut middle = Vec::new();
    let mut right = Vec::new();
    for &d in members {
        let dx = &disks.centers[d].x - median;
        if dx < -r.clone() {
            left.push(d);
        } else if dx > *r {
            right.push(d);
        } else {
            middle.push(d);
        }
    }
    let b_med = disk_line::solve_two_sided_vertical(&disks.subset(&middle), median)?.remap(&middle);
    let (b_left, b_right) = rayon::join(|| split(disks, &left), || split(disks, &right));
    let sides = Solution::disjoint_union([&b_left?, &b_right?]);
    Ok(if b_med.len() >= sides.len() {
        b_med
    } else {
        sides
    })
}

/// `max(1, 2·log₂ n)`, the approximation factor of [`solve_logn`].
pub fn logn_factor(n: usize) -> f64 {
    (2.0 * (n.max(1) as f64).log2()).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::oracle;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn scene(r: Rational, pts: &[(Rational, Rational)]) -> DiskScene {
        DiskScene::new(
            r,
            pts.iter()
                .map(|(x, y)| Point::new(x.clone(), y.clone()))
                .collect(),
        )
    }

    fn triangle_at(x: i64, y: i64) -> Vec<(Rational, Rational)> {
        vec![(int(x), int(y)), (int(x + 1), int(y)), (int(x), int(y + 1))]
    }

    #[test]
    fn single_line_matches_one_sided() {
        let d = scene(
            int(1),
            &[
                (int(0), ratio(1, 3)),
                (int(1), int(0)),
                (int(2), ratio(1, 2)),
                (int(5), ratio(2, 3)),
            ],
        );
        let slabs = SlabAssignment::build(&d).unwrap();
        assert_eq!(slabs.lines, vec![int(0)]);
        assert_eq!(
            solve_3approx(&d).unwrap(),
            disk_line::solve_one_sided(&d, &int(0)).unwrap()
        );
    }

    #[test]
    fn two_far_triangles_give_four() {
        let mut pts = triangle_at(0, 0);
        pts.extend(triangle_at(50, 50));
        let d = scene(int(1), &pts);
        assert_eq!(oracle::exact_mbs(&graph(&d)).unwrap().len(), 4);
        assert_eq!(solve_3approx(&d).unwrap().len(), 4);
    }

    #[test]
    fn disjoint_disks_all_selected() {
        let d = scene(
            int(1),
            &[
                (int(0), int(0)),
                (int(3), int(1)),
                (int(0), int(7)),
                (int(9), int(-4)),
            ],
        );
        assert_eq!(solve_3approx(&d).unwrap().len(), 4);
        assert_eq!(solve_logn(&d).unwrap().len(), 4);
        let one = scene(int(1), &[(int(2), int(2))]);
        assert_eq!(solve_logn(&one).unwrap().selected(), &[0]);
    }

    #[test]
    fn groups_two_apart_can_touch() {
        // Lines at 0, 1, 2 with radius 1: centers 11/10 apart in y.
        let d = scene(
            int(1),
            &[(int(0), int(0)), (int(0), ratio(9, 10)), (int(0), int(2))],
        );
        let slabs = SlabAssignment::build(&d).unwrap();
        assert_eq!(slabs.group, vec![0, 0, 1]);
        assert_eq!(slabs.lines, vec![int(0), int(2)]);
        assert!(d.intersects(1, 2));
    }

    #[test]
    fn empty_rejected() {
        assert!(solve_3approx(&DiskScene::new(int(1), Vec::new())).is_err());
        assert!(solve_logn(&DiskScene::new(int(1), Vec::new())).is_err());
    }

    fn arb_scene(max_n: usize) -> impl Strategy<Value = DiskScene> {
        proptest::collection::vec((0i64..40, 0i64..40), 1..=max_n).prop_map(|v| {
            scene(
                int(1),
                &v.iter()
                    .map(|&(x, y)| (ratio(x, 4), ratio(y, 4)))
                    .collect::<Vec<_>>(),
            )
        })
    }

    proptest! {
        #[test]
        fn lines_stab_and_separate(d in arb_scene(14)) {
            let slabs = SlabAssignment::build(&d).unwrap();
            for (i, &line) in slabs.group.iter().enumerate() {
                let dy = &d.centers[i].y - &slabs.lines[line];
                prop_assert!(dy >= int(0) && dy < d.radius);
            }
            for a in 0..d.len() {
                for b in 0..d.len() {
                    if slabs.group[a] >= slabs.group[b] + 3 {
                        prop_assert!(!d.intersects(a, b));
                    }
                }
            }
        }

        #[test]
        fn ratios_hold(d in arb_scene(11)) {
            let g = graph(&d);
            let opt = oracle::exact_mbs(&g).unwrap().len();
            let slabs = SlabAssignment::build(&d).unwrap();
            let total: usize = group_solutions(&d, &slabs).unwrap().iter().map(Solution::len).sum();
            prop_assert!(total >= opt);
            let three = solve_3approx(&d).unwrap();
            prop_assert!(3 * three.len() >= opt);
            prop_assert!(three.is_certified_bipartite(&g).unwrap());
            let logn = solve_logn(&d).unwrap();
            prop_assert!(logn_factor(d.len()) * logn.len() as f64 >= opt as f64);
            prop_assert!(logn.is_certified_bipartite(&g).unwrap());
        }
    }
}
