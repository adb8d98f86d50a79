//! The doubling transformation: every object is duplicated in place.
//!
//! Co-located copies intersect each other and everything the original
//! intersects, so the output graph is `G′` with `|V(G′)| = 2n`. A maximum
//! bipartite subset of `G′` has exactly twice the size of a maximum
//! independent set of `G`.

use crate::error::{Error, Result};
use crate::geometry::Scene;
use crate::rational::Rational;

/// Originals keep indices `0..n`; the copy of object `i` is `n + i`.
pub fn double_instance(scene: &Scene) -> Scene {
    let n = scene.len();
    let order: Vec<usize> = (0..n).chain(0..n).collect();
    scene.subset(&order)
}

/// Weights matching [`double_instance`].
pub fn double_weights(weights: &[Rational]) -> Vec<Rational> {
    weights.iter().chain(weights).cloned().collect()
}

/// Original object behind vertex `v` of a doubled scene of `2n` objects.
pub fn original_of(v: usize, n: usize) -> Result<usize> {
    if v >= 2 * n {
        return Err(Error::validation(format!(
            "vertex {v} outside a doubled scene of {} objects",
            2 * n
        )));
    }
    Ok(v % n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{DiskScene, Interval, Point};
    use crate::graph::IntersectionGraph;
    use crate::oracle;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn single_object_becomes_an_edge() {
        let s = Scene::Intervals(vec![Interval::new(int(0), int(1))]);
        let g = IntersectionGraph::build(&double_instance(&s)).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn edgeless_becomes_matching() {
        let s = Scene::Intervals(
            (0..4)
                .map(|i| Interval::new(int(3 * i), int(3 * i + 1)))
                .collect(),
        );
        let g = IntersectionGraph::build(&double_instance(&s)).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!((0..4).all(|i| g.adjacent(i, i + 4)));
        assert_eq!(original_of(6, 4).unwrap(), 2);
        assert!(original_of(8, 4).is_err());
    }

    proptest! {
        #[test]
        fn doubling_identity(pts in proptest::collection::vec((0i64..12, 0i64..12), 1..=7)) {
            let s = Scene::UnitDisks(DiskScene::new(
                int(1),
                pts.iter().map(|&(x, y)| Point::new(ratio(x, 2), ratio(y, 2))).collect(),
            ));
            let g = IntersectionGraph::build(&s).unwrap();
            let gd = IntersectionGraph::build(&double_instance(&s)).unwrap();
            prop_assert_eq!(gd.n(), 2 * g.n());
            for v in 0..g.n() {
                prop_assert_eq!(gd.degree(v + g.n()), 2 * g.degree(v) + 1);
            }
            prop_assert_eq!(
                oracle::exact_mbs(&gd).unwrap().len(),
                2 * oracle::exact_mis(&g).unwrap().len()
            );
        }
    }
}
