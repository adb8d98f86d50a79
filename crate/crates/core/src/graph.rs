//! Intersection graphs and the feasibility checkers shared by every solver.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::geometry::Scene;

/// Proper 2-coloring of a vertex subset: vertex → color in `{0, 1}`.
pub type Coloring = BTreeMap<usize, u8>;

/// Simple undirected graph on `{0..n-1}` stored as a dense adjacency matrix
/// plus neighbor lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    n: usize,
    matrix: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl IntersectionGraph {
    pub fn empty(n: usize) -> Self {
        IntersectionGraph {
            n,
            matrix: vec![false; n * n],
            neighbors: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Self-loops and out-of-range
    /// endpoints are rejected; duplicate edges are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::validation(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::validation(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        g.finish();
        Ok(g)
    }

    /// All-pairs closed intersection test over the scene.
    pub fn build(scene: &Scene) -> Result<Self> {
        scene.validate()?;
        Ok(Self::from_predicate(scene.len(), |a, b| {
            scene.intersects(a, b)
        }))
    }

    pub(crate) fn from_predicate(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for a in 0..n {
            for b in a + 1..n {
                if adjacent(a, b) {
                    g.add_edge(a, b);
                }
            }
        }
        g.finish();
        g
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        if !self.matrix[u * self.n + v] {
            self.matrix[u * self.n + v] = true;
            self.matrix[v * self.n + u] = true;
            self.neighbors[u].push(v);
            self.neighbors[v].push(u);
        }
    }

    fn finish(&mut self) {
        for list in &mut self.neighbors {
            list.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in order.
    pub fn induced(&self, vertices: &[usize]) -> IntersectionGraph {
        Self::from_predicate(vertices.len(), |a, b| {
            self.adjacent(vertices[a], vertices[b])
        })
    }

    pub(crate) fn check_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.n];
        for &v in subset {
            if v >= self.n {
                return Err(Error::validation(format!(
                    "vertex {v} out of range for a graph on {} vertices",
                    self.n
                )));
            }
            if seen[v] {
                return Err(Error::validation(format!("vertex {v} listed twice")));
            }
            seen[v] = true;
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        Ok(sorted)
    }
}

/// Outcome of a bipartiteness test on an induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BipartiteCheck {
    Bipartite(Coloring),
    /// Vertices of an odd cycle, in cycle order.
    OddCycle(Vec<usize>),
}

/// BFS 2-coloring of the subgraph induced by `subset`. Each component's
/// smallest vertex gets color 0.
pub fn check_bipartite(g: &IntersectionGraph, subset: &[usize]) -> Result<BipartiteCheck> {
    let sorted = g.check_subset(subset)?;
    let mut member = vec![false; g.n];
    for &v in &sorted {
        member[v] = true;
    }
    let mut color: Vec<Option<u8>> = vec![None; g.n];
    let mut parent = vec![usize::MAX; g.n];
    let mut depth = vec![0usize; g.n];
    let mut queue = VecDeque::new();
    for &root in &sorted {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in g.neighbors(u) {
                if !member[w] {
                    continue;
                }
                match color[w] {
                    None => {
                        color[w] = Some(1 - cu);
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        return Ok(BipartiteCheck::OddCycle(tree_cycle(&parent, &depth, u, w)));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(BipartiteCheck::Bipartite(
        sorted.iter().map(|&v| (v, color[v].unwrap())).collect(),
    ))
}

/// Closes the BFS-tree paths from `u` and `w` at their common ancestor.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

pub fn is_bipartite(g: &IntersectionGraph, subset: &[usize]) -> Result<Option<Coloring>> {
    Ok(match check_bipartite(g, subset)? {
        BipartiteCheck::Bipartite(c) => Some(c),
        BipartiteCheck::OddCycle(_) => None,
    })
}

/// Lexicographically first triangle inside `subset`, if any.
pub fn is_triangle_free(g: &IntersectionGraph, subset: &[usize]) -> Result<Option<[usize; 3]>> {
    let s = g.check_subset(subset)?;
    for (ia, &a) in s.iter().enumerate() {
        for (ib, &b) in s.iter().enumerate().skip(ia + 1) {
            if !g.adjacent(a, b) {
                continue;
            }
            if let Some(&c) = s[ib + 1..]
                .iter()
                .find(|&&c| g.adjacent(a, c) && g.adjacent(b, c))
            {
                return Ok(Some([a, b, c]));
            }
        }
    }
    Ok(None)
}

/// Lexicographically first edge inside `subset`, if any.
pub fn is_independent(g: &IntersectionGraph, subset: &[usize]) -> Result<Option<(usize, usize)>> {
    let s = g.check_subset(subset)?;
    for (ia, &a) in s.iter().enumerate() {
        if let Some(&b) = s[ia + 1..].iter().find(|&&b| g.adjacent(a, b)) {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// Checks a claimed 2-coloring; returns the first monochromatic edge.
pub fn monochromatic_edge(
    g: &IntersectionGraph,
    coloring: &Coloring,
) -> Result<Option<(usize, usize)>> {
    let vertices: Vec<usize> = coloring.keys().copied().collect();
    g.check_subset(&vertices)?;
    if let Some((&v, &c)) = coloring.iter().find(|(_, &c)| c > 1) {
        return Err(Error::validation(format!(
            "vertex {v} has color {c}, expected 0 or 1"
        )));
    }
    for (&u, &cu) in coloring {
        for &w in g.neighbors(u) {
            if w > u && coloring.get(&w) == Some(&cu) {
                return Ok(Some((u, w)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{DiskScene, Interval, Point};
    use crate::rational::int;
    use proptest::prelude::*;

    pub(crate) fn cycle(n: usize) -> IntersectionGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        IntersectionGraph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn complete(n: usize) -> IntersectionGraph {
        IntersectionGraph::from_predicate(n, |_, _| true)
    }

    #[test]
    fn overlapping_intervals_share_an_edge() {
        let scene = Scene::Intervals(vec![
            Interval::new(int(0), int(2)),
            Interval::new(int(1), int(3)),
        ]);
        let g = IntersectionGraph::build(&scene).unwrap();
        assert!(g.adjacent(0, 1));
    }

    #[test]
    fn disk_examples() {
        let pts = |v: &[(i64, i64)]| v.iter().map(|&(x, y)| Point::new(int(x), int(y))).collect();
        let tangent = Scene::UnitDisks(DiskScene::new(int(1), pts(&[(0, 0), (2, 0)])));
        assert_eq!(IntersectionGraph::build(&tangent).unwrap().edge_count(), 1);
        let apart = Scene::UnitDisks(DiskScene::new(int(1), pts(&[(0, 0), (5, 0), (10, 0)])));
        assert_eq!(IntersectionGraph::build(&apart).unwrap().edge_count(), 0);
    }

    #[test]
    fn four_cycle_coloring() {
        let c = is_bipartite(&cycle(4), &[0, 1, 2, 3]).unwrap().unwrap();
        let expected: Coloring = [(0, 0), (1, 1), (2, 0), (3, 1)].into_iter().collect();
        assert_eq!(c, expected);
    }

    #[test]
    fn triangle_is_not_bipartite() {
        assert_eq!(is_bipartite(&complete(3), &[0, 1, 2]).unwrap(), None);
        match check_bipartite(&cycle(7), &[0, 1, 2, 3, 4, 5, 6]).unwrap() {
            BipartiteCheck::OddCycle(c) => assert_eq!(c.len(), 7),
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn empty_subset_is_trivially_fine() {
        let g = complete(3);
        assert_eq!(is_bipartite(&g, &[]).unwrap(), Some(Coloring::new()));
        assert_eq!(is_triangle_free(&g, &[]).unwrap(), None);
        assert_eq!(is_independent(&g, &[1]).unwrap(), None);
    }

    #[test]
    fn triangle_witnesses() {
        assert_eq!(is_triangle_free(&cycle(5), &[0, 1, 2, 3, 4]).unwrap(), None);
        assert_eq!(
            is_triangle_free(&complete(3), &[0, 1, 2]).unwrap(),
            Some([0, 1, 2])
        );
        let w = is_triangle_free(&complete(4), &[3, 2, 1, 0])
            .unwrap()
            .unwrap();
        assert!(w[0] < w[1] && w[1] < w[2] && w[2] < 4);
    }

    #[test]
    fn independence_witnesses() {
        let g = IntersectionGraph::empty(4);
        assert_eq!(is_independent(&g, &[0, 1, 2, 3]).unwrap(), None);
        let e = IntersectionGraph::from_edges(3, &[(0, 2)]).unwrap();
        assert_eq!(is_independent(&e, &[2, 0]).unwrap(), Some((0, 2)));
    }

    #[test]
    fn out_of_range_is_rejected() {
        let g = complete(3);
        assert!(matches!(is_bipartite(&g, &[3]), Err(Error::Validation(_))));
        assert!(matches!(
            is_triangle_free(&g, &[0, 0]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            is_independent(&g, &[7]),
            Err(Error::Validation(_))
        ));
    }

    fn arb_graph() -> impl Strategy<Value = IntersectionGraph> {
        (1usize..10).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n)
                .prop_map(move |bits| IntersectionGraph::from_predicate(n, |a, b| bits[a * n + b]))
        })
    }

    proptest! {
        #[test]
        fn coloring_is_proper_and_cycles_are_odd(g in arb_graph(), mask in any::<u16>()) {
            let subset: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            match check_bipartite(&g, &subset).unwrap() {
                BipartiteCheck::Bipartite(c) => {
                    prop_assert_eq!(monochromatic_edge(&g, &c).unwrap(), None);
                    prop_assert_eq!(is_triangle_free(&g, &subset).unwrap(), None);
                }
                BipartiteCheck::OddCycle(cyc) => {
                    prop_assert!(cyc.len() % 2 == 1 && cyc.len() >= 3);
                    for i in 0..cyc.len() {
                        prop_assert!(g.adjacent(cyc[i], cyc[(i + 1) % cyc.len()]));
                        prop_assert!(subset.contains(&cyc[i]));
                    }
                }
            }
        }
    }
}
