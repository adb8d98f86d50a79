//! Exhaustive exact solvers for small graphs.
//!
//! Subsets are scanned by decreasing size and, within a size, in
//! lexicographic order of their sorted index lists, so the first feasible
//! subset is the lexicographically smallest optimum. Infeasible subsets leave
//! behind a witness (odd cycle, triangle or edge) and every later candidate
//! containing a recorded witness is skipped without a full check.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Coloring, IntersectionGraph};
use crate::rational::{self, Rational};
use crate::solution::Solution;

pub const DEFAULT_CAP: usize = 20;
const MAX_WITNESSES: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest vertex count accepted (at most 63).
    pub cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    /// Maximum bipartite subgraph.
    Mbs,
    /// Maximum triangle-free subgraph.
    Mtfs,
    /// Maximum independent set.
    Mis,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Mbs => "mbs",
            Problem::Mtfs => "mtfs",
            Problem::Mis => "mis",
        }
    }
}

impl std::str::FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Problem> {
        match s {
            "mbs" => Ok(Problem::Mbs),
            "mtfs" => Ok(Problem::Mtfs),
            "mis" => Ok(Problem::Mis),
            _ => Err(Error::validation(format!("unknown problem `{s}`"))),
        }
    }
}

/// Adjacency rows as bitmasks.
struct MaskGraph {
    n: usize,
    adj: Vec<u64>,
}

impl MaskGraph {
    fn new(g: &IntersectionGraph, cfg: &OracleConfig) -> Result<Self> {
        let limit = cfg.cap.min(63);
        if g.n() > limit {
            return Err(Error::Capacity {
                what: "exhaustive oracle",
                limit,
                actual: g.n(),
            });
        }
        let adj = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        Ok(MaskGraph { n: g.n(), adj })
    }

    /// Returns the 2-coloring as the mask of color-1 vertices, or the vertex
    /// mask of an odd cycle.
    fn two_color(&self, set: u64) -> Result<u64, u64> {
        let mut colored = 0u64;
        let mut ones = 0u64;
        let mut parent = [usize::MAX; 64];
        let mut depth = [0usize; 64];
        let mut queue = [0usize; 64];
        let mut rest = set;
        while rest != 0 {
            let root = rest.trailing_zeros() as usize;
            colored |= 1 << root;
            let (mut head, mut tail) = (0, 1);
            queue[0] = root;
            while head < tail {
                let u = queue[head];
                head += 1;
                let u_one = ones >> u & 1;
                let mut nb = self.adj[u] & set;
                while nb != 0 {
                    let w = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    if colored >> w & 1 == 0 {
                        colored |= 1 << w;
                        ones |= (1 - u_one) << w;
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue[tail] = w;
                        tail += 1;
                    } else if ones >> w & 1 == u_one {
                        let (mut a, mut b) = (u, w);
                        let mut cycle = 1u64 << a | 1u64 << b;
                        while a != b {
                            if depth[a] >= depth[b] {
                                a = parent[a];
                            } else {
                                b = parent[b];
                            }
                            cycle |= 1 << a | 1 << b;
                        }
                        return Err(cycle);
                    }
                }
            }
            rest &= !colored;
        }
        Ok(ones)
    }

    fn triangle(&self, set: u64) -> Option<u64> {
        let mut rest = set;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut nb = self.adj[a] & rest;
            while nb != 0 {
                let b = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                let common = self.adj[a] & self.adj[b] & set;
                if common != 0 {
                    let c = common.trailing_zeros() as usize;
                    return Some(1 << a | 1 << b | 1 << c);
                }
            }
        }
        None
    }

    fn edge(&self, set: u64) -> Option<u64> {
        let mut rest = set;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nb = self.adj[a] & set;
            if nb != 0 {
                return Some(1 << a | 1 << nb.trailing_zeros());
            }
        }
        None
    }

    fn witness(&self, problem: Problem, set: u64) -> Option<u64> {
        match problem {
            Problem::Mbs => self.two_color(set).err(),
            Problem::Mtfs => self.triangle(set),
            Problem::Mis => self.edge(set),
        }
    }
}

struct Witnesses(Vec<u64>);

impl Witnesses {
    fn blocks(&self, set: u64) -> bool {
        self.0.iter().any(|&w| w & !set == 0)
    }

    fn record(&mut self, w: u64) {
        if self.0.len() < MAX_WITNESSES {
            self.0.push(w);
        }
    }
}

/// Visits `size`-subsets of `0..n` in lexicographic order until `visit`
/// returns true.
fn for_each_combination(n: usize, size: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if size > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if visit(&idx) {
            return true;
        }
        let mut i = size;
        while i > 0 && idx[i - 1] == i - 1 + n - size {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        i -= 1;
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn mask_of(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | 1 << i)
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

fn exact(g: &IntersectionGraph, problem: Problem, cfg: &OracleConfig) -> Result<Solution> {
    let mg = MaskGraph::new(g, cfg)?;
    let mut witnesses = Witnesses(Vec::new());
    let mut best = None;
    for size in (0..=mg.n).rev() {
        let found = for_each_combination(mg.n, size, |idx| {
            let set = mask_of(idx);
            if witnesses.blocks(set) {
                return false;
            }
            match mg.witness(problem, set) {
                Some(w) => {
                    witnesses.record(w);
                    false
                }
                None => {
                    best = Some(set);
                    true
                }
            }
        });
        if found {
            break;
        }
    }
    let set = best.unwrap_or(0);
    Ok(match problem {
        Problem::Mbs => solution_with_coloring(&mg, set),
        _ => Solution::new(bits(set).collect()),
    })
}

fn solution_with_coloring(mg: &MaskGraph, set: u64) -> Solution {
    let ones = mg.two_color(set).expect("oracle optimum must be bipartite");
    let coloring: Coloring = bits(set).map(|v| (v, (ones >> v & 1) as u8)).collect();
    Solution::with_coloring(coloring)
}

pub fn exact_mbs(g: &IntersectionGraph) -> Result<Solution> {
    exact(g, Problem::Mbs, &OracleConfig::default())
}

pub fn exact_mtfs(g: &IntersectionGraph) -> Result<Solution> {
    exact(g, Problem::Mtfs, &OracleConfig::default())
}

pub fn exact_mis(g: &IntersectionGraph) -> Result<Solution> {
    exact(g, Problem::Mis, &OracleConfig::default())
}

/// Exact optimum for `problem` with an explicit size cap.
pub fn solve_exact(
    g: &IntersectionGraph,
    problem: Problem,
    cfg: &OracleConfig,
) -> Result<Solution> {
    exact(g, problem, cfg)
}

/// Maximum-weight bipartite subset by full enumeration. Ties go to the
/// larger set, then to the lexicographically smaller one.
pub fn exact_mbs_weighted(
    g: &IntersectionGraph,
    weights: &[Rational],
    cfg: &OracleConfig,
) -> Result<(Solution, Rational)> {
    if weights.len() != g.n() {
        return Err(Error::validation(format!(
            "{} weights for {} vertices",
            weights.len(),
            g.n()
        )));
    }
    if let Some((i, w)) = weights
        .iter()
        .enumerate()
        .find(|(_, w)| !rational::is_nonnegative(w))
    {
        return Err(Error::validation(format!(
            "weight {i} is negative ({})",
            rational::format(w)
        )));
    }
    let mg = MaskGraph::new(g, cfg)?;
    let mut witnesses = Witnesses(Vec::new());
    let mut best: Option<(Rational, Vec<usize>, u64)> = None;
    for size in (0..=mg.n).rev() {
        for_each_combination(mg.n, size, |idx| {
            let set = mask_of(idx);
            if witnesses.blocks(set) {
                return false;
            }
            if let Err(w) = mg.two_color(set) {
                witnesses.record(w);
                return false;
            }
            let weight: Rational = idx.iter().map(|&i| &weights[i]).sum();
            if best.as_ref().is_none_or(|(bw, _, _)| weight > *bw) {
                best = Some((weight, idx.to_vec(), set));
            }
            false
        });
    }
    let (weight, _, set) = best.unwrap_or((Rational::zero(), Vec::new(), 0));
    Ok((solution_with_coloring(&mg, set), weight))
}
