use crate::error::{Error, Result};
use crate::graph::{self, Coloring, IntersectionGraph};

/// A selected vertex set, optionally with a bipartition certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Solution {
    selected: Vec<usize>,
    coloring: Option<Coloring>,
}

impl Solution {
    /// Sorts and deduplicates `selected`.
    pub fn new(mut selected: Vec<usize>) -> Self {
        selected.sort_unstable();
        selected.dedup();
        Solution {
            selected,
            coloring: None,
        }
    }

    /// The coloring's key set becomes the selection.
    pub fn with_coloring(coloring: Coloring) -> Self {
        Solution {
            selected: coloring.keys().copied().collect(),
            coloring: Some(coloring),
        }
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        self.coloring.as_ref()
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    /// Replaces each local index `i` by `map[i]`, keeping the coloring.
    pub fn remap(&self, map: &[usize]) -> Solution {
        match &self.coloring {
            Some(c) => Solution::with_coloring(c.iter().map(|(&v, &col)| (map[v], col)).collect()),
            None => Solution::new(self.selected.iter().map(|&v| map[v]).collect()),
        }
    }

    /// Union of solutions on pairwise non-adjacent vertex sets.
    pub fn disjoint_union<'a>(parts: impl IntoIterator<Item = &'a Solution>) -> Solution {
        let mut selected = Vec::new();
        let mut coloring = Some(Coloring::new());
        for part in parts {
            selected.extend_from_slice(&part.selected);
            match (&mut coloring, &part.coloring) {
                (Some(acc), Some(c)) => acc.extend(c.iter().map(|(&k, &v)| (k, v))),
                _ => coloring = None,
            }
        }
        match coloring {
            Some(c) => Solution::with_coloring(c),
            None => Solution::new(selected),
        }
    }

    /// Attaches a fresh BFS certificate, failing if the selection is not
    /// bipartite in `g`.
    pub fn certify(self, g: &IntersectionGraph) -> Result<Solution> {
        match graph::is_bipartite(g, &self.selected)? {
            Some(c) => Ok(Solution::with_coloring(c)),
            None => Err(Error::Internal(format!(
                "selection {:?} is not bipartite",
                self.selected
            ))),
        }
    }

    /// Whether the attached certificate (or a BFS check when absent) proves
    /// the selection bipartite in `g`.
    pub fn is_certified_bipartite(&self, g: &IntersectionGraph) -> Result<bool> {
        match &self.coloring {
            Some(c) => Ok(graph::monochromatic_edge(g, c)?.is_none()),
            None => Ok(graph::is_bipartite(g, &self.selected)?.is_some()),
        }
    }

    /// Lexicographic comparison of the sorted selections.
    pub(crate) fn lex_key(&self) -> &[usize] {
        &self.selected
    }

    /// Adds every unselected vertex, in index order, whose addition keeps the
    /// selection bipartite, then re-certifies. Never shrinks the selection.
    pub fn extend_greedily(self, g: &IntersectionGraph) -> Result<Solution> {
        let n = g.n();
        let selected = g.check_subset(&self.selected)?;
        let mut parity = ParityForest::new(n);
        let mut chosen = vec![false; n];
        for v in selected.into_iter().chain(0..n) {
            if !chosen[v]
                && parity.try_attach(v, g.neighbors(v).iter().copied().filter(|&u| chosen[u]))
            {
                chosen[v] = true;
            }
        }
        Solution::new((0..n).filter(|&v| chosen[v]).collect()).certify(g)
    }
}

/// Union-find over selected vertices tracking each vertex's color relative
/// to its root.
struct ParityForest {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityForest {
    fn new(n: usize) -> Self {
        ParityForest {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    fn find(&mut self, v: usize) -> (usize, u8) {
        let p = self.parent[v];
        if p == v {
            return (v, 0);
        }
        let (root, up) = self.find(p);
        self.parent[v] = root;
        self.parity[v] ^= up;
        (root, self.parity[v])
    }

    /// Joins `v` to the components of `neighbors` if `v` can take the color
    /// opposite to all of them; each component may be flipped as a whole.
    fn try_attach(&mut self, v: usize, neighbors: impl Iterator<Item = usize>) -> bool {
        let mut required: Vec<(usize, u8)> = neighbors.map(|u| self.find(u)).collect();
        required.sort_unstable();
        required.dedup();
        if required.windows(2).any(|w| w[0].0 == w[1].0) {
            return false;
        }
        for (root, p) in required {
            self.parent[root] = v;
            self.parity[root] = p ^ 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_extension_skips_odd_cycles() {
        let g =
            IntersectionGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let s = Solution::new(vec![3]).extend_greedily(&g).unwrap();
        assert_eq!(s.selected(), &[0, 1, 3, 4]);
        assert!(s.is_certified_bipartite(&g).unwrap());
    }

    #[test]
    fn greedy_extension_merges_components_with_flip() {
        // 0-1 and 2-3 selected; 4 adjacent to 1 and 3 needs one side flipped.
        let g = IntersectionGraph::from_edges(5, &[(0, 1), (2, 3), (1, 4), (3, 4)]).unwrap();
        let s = Solution::new(vec![0, 1, 2, 3]).extend_greedily(&g).unwrap();
        assert_eq!(s.len(), 5);
    }
}
