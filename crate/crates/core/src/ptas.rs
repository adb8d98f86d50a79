//! Shifting-technique PTAS for unit disks and unit squares.
//!
//! Objects are treated through their centers and half-extent `h` (the radius
//! for disks, `1/2` for unit squares). A horizontal slab of height `k·2h` is
//! cut into boxes of width `2h`; objects in boxes two or more apart cannot
//! meet. Per box, every bipartite subset is enumerated together with its
//! 2-colorings, and a path through the boxes picks one colored set per box
//! such that consecutive boxes agree on the colors of their cross edges. The
//! heaviest path is an exact maximum bipartite subset of the slab.
//!
//! Shifting the slab grid through `k` offsets drops every object exactly
//! once, so the best offset keeps at least `(1 − 1/k)` of the optimum.
//! Dropped objects are re-admitted greedily whenever they keep the union
//! bipartite.

use std::collections::BTreeMap;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Point, Scene};
use crate::graph::{Coloring, IntersectionGraph};
use crate::rational::{self, Rational};
use crate::solution::Solution;

/// Default limit on the number of objects in one box.
pub const DEFAULT_BOX_CAP: usize = 16;
/// Default limit on the number of colored feasible sets in one box.
pub const DEFAULT_SET_CAP: usize = 1 << 22;
const MAX_BOX_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PtasConfig {
    pub box_cap: usize,
    pub set_cap: usize,
}

impl Default for PtasConfig {
    fn default() -> Self {
        PtasConfig {
            box_cap: DEFAULT_BOX_CAP,
            set_cap: DEFAULT_SET_CAP,
        }
    }
}

impl PtasConfig {
    fn validate(&self) -> Result<()> {
        if self.box_cap == 0 || self.box_cap > MAX_BOX_CAP {
            return Err(Error::validation(format!(
                "box cap must be between 1 and {MAX_BOX_CAP}"
            )));
        }
        Ok(())
    }
}

/// Vertex weight accumulated along a path.
pub trait Weight: Clone + Ord + Add<Output = Self> + Zero + Send + Sync {}
impl<T: Clone + Ord + Add<Output = T> + Zero + Send + Sync> Weight for T {}

/// Centers and half-extent of a disk or unit-square scene.
struct Packing<'a> {
    scene: &'a Scene,
    centers: Vec<Point>,
    half: Rational,
}

impl<'a> Packing<'a> {
    fn new(scene: &'a Scene) -> Result<Self> {
        scene.validate()?;
        let (centers, half) = match scene {
            Scene::UnitDisks(d) => (d.centers.clone(), d.radius.clone()),
            Scene::UnitSquares(rects) => (
                rects
                    .iter()
                    .map(|r| {
                        let two = rational::int(2);
                        Point::new((&r.x_min + &r.x_max) / &two, (&r.y_min + &r.y_max) / two)
                    })
                    .collect(),
                rational::ratio(1, 2),
            ),
            other => {
                return Err(Error::validation(format!(
                    "the shifting scheme needs unit disks or unit squares, not {}",
                    other.kind()
                )))
            }
        };
        Ok(Packing {
            scene,
            centers,
            half,
        })
    }

    fn diameter(&self) -> Rational {
        &self.half + &self.half
    }

    fn bottom(&self, i: usize) -> Rational {
        &self.centers[i].y - &self.half
    }

    fn top(&self, i: usize) -> Rational {
        &self.centers[i].y + &self.half
    }
}

/// A feasible set of one box with a proper 2-coloring, in original indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredFeasibleSet {
    /// Position of the box among the slab's occupied boxes, left to right.
    pub box_position: usize,
    pub coloring: Coloring,
}

#[derive(Clone, Debug)]
struct SlabBox {
    /// Box number `⌊(x − x_0) / 2h⌋`.
    number: BigInt,
    /// Original indices of the members.
    members: Vec<usize>,
    /// Members with a neighbour in the box immediately to the left / right.
    left_face: u32,
    right_face: u32,
    /// `cross[a]`: members of the next box adjacent to member `a`.
    cross_right: Vec<u32>,
}

#[derive(Clone, Debug)]
struct Vertex<W> {
    box_position: usize,
    set: u32,
    colors: u32,
    weight: W,
}

/// The vertex-weighted box DAG of one slab. The source and target are
/// implicit: every vertex is reachable from the source and reaches the
/// target. Vertices are stored grouped by box, left to right, and edges
/// only go from a lower box to a higher one, so vertex order is a
/// topological order.
#[derive(Clone, Debug)]
pub struct SlabDag<W> {
    boxes: Vec<SlabBox>,
    vertices: Vec<Vertex<W>>,
    /// `first[p]..first[p + 1]` are the vertices of box `p`.
    first: Vec<usize>,
}

impl<W: Weight> SlabDag<W> {
    /// Builds the DAG over the objects `members` of `scene`, with
    /// `weights[i]` the weight of object `i`.
    fn build(
        pack: &Packing,
        members: &[usize],
        weights: &[W],
        cfg: &PtasConfig,
    ) -> Result<SlabDag<W>> {
        cfg.validate()?;
        let width = pack.diameter();
        let x0 = match members.iter().map(|&i| &pack.centers[i].x).min() {
            Some(x) => x.clone(),
            None => {
                return Ok(SlabDag {
                    boxes: Vec::new(),
                    vertices: Vec::new(),
                    first: vec![0],
                })
            }
        };
        let mut grouped: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
        for &i in members {
            let number = rational::floor_int(&((&pack.centers[i].x - &x0) / &width));
            grouped.entry(number).or_default().push(i);
        }
        let mut boxes: Vec<SlabBox> = Vec::with_capacity(grouped.len());
        for (number, mut m) in grouped {
            if m.len() > cfg.box_cap {
                return Err(Error::Capacity {
                    what: "objects per box",
                    limit: cfg.box_cap,
                    actual: m.len(),
                });
            }
            m.sort_unstable();
            boxes.push(SlabBox {
                number,
                members: m,
                left_face: 0,
                right_face: 0,
                cross_right: Vec::new(),
            });
        }
        for p in 0..boxes.len().saturating_sub(1) {
            let (l, r) = boxes.split_at_mut(p + 1);
            let (left, right) = (&mut l[p], &mut r[0]);
            left.cross_right = vec![0; left.members.len()];
            if &right.number - &left.number != BigInt::one() {
                continue;
            }
            for (a, &u) in left.members.iter().enumerate() {
                for (b, &v) in right.members.iter().enumerate() {
                    if pack.scene.intersects(u, v) {
                        left.cross_right[a] |= 1 << b;
                        left.right_face |= 1 << a;
                        right.left_face |= 1 << b;
                    }
                }
            }
        }
        if let Some(last) = boxes.last_mut() {
            last.cross_right = vec![0; last.members.len()];
        }

        let per_box: Vec<Vec<Vertex<W>>> = boxes
            .par_iter()
            .enumerate()
            .map(|(p, b)| enumerate_box(pack, p, b, weights, cfg))
            .collect::<Result<_>>()?;
        let mut first = vec![0];
        let mut vertices = Vec::new();
        for vs in per_box {
            vertices.extend(vs);
            first.push(vertices.len());
        }
        let dag = SlabDag {
            boxes,
            vertices,
            first,
        };
        dag.check_acyclic()?;
        Ok(dag)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }

    pub fn weight(&self, v: usize) -> &W {
        &self.vertices[v].weight
    }

    pub fn feasible_set(&self, v: usize) -> ColoredFeasibleSet {
        let vx = &self.vertices[v];
        let members = &self.boxes[vx.box_position].members;
        ColoredFeasibleSet {
            box_position: vx.box_position,
            coloring: bits(vx.set)
                .map(|a| (members[a], ((vx.colors >> a) & 1) as u8))
                .collect(),
        }
    }

    fn adjacent_boxes(&self, p: usize) -> bool {
        p + 1 < self.boxes.len()
            && &self.boxes[p + 1].number - &self.boxes[p].number == BigInt::one()
    }

    /// Whether the DAG has the edge `u → v`.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = (&self.vertices[u], &self.vertices[v]);
        if a.box_position >= b.box_position {
            return false;
        }
        if b.box_position > a.box_position + 1 || !self.adjacent_boxes(a.box_position) {
            return true;
        }
        let left = &self.boxes[a.box_position];
        compatible(
            left,
            (a.set & left.right_face, a.colors & a.set & left.right_face),
            (b.set & self.boxes[b.box_position].left_face, b.colors),
        )
    }

    /// Every edge goes from a lower box to a higher box and vertices are
    /// stored in box order.
    pub fn check_acyclic(&self) -> Result<()> {
        let ordered = self
            .vertices
            .windows(2)
            .all(|w| w[0].box_position <= w[1].box_position);
        let boxes_increase = self.boxes.windows(2).all(|w| w[0].number < w[1].number);
        if ordered && boxes_increase {
            Ok(())
        } else {
            Err(Error::Internal(
                "slab DAG vertices are not in box order".into(),
            ))
        }
    }

    /// Heaviest source-to-target path, as vertex ids, and its weight.
    pub fn best_path(&self) -> (Vec<usize>, W) {
        let n = self.vertices.len();
        let mut best: Vec<W> = Vec::with_capacity(n);
        let mut pred: Vec<Option<usize>> = Vec::with_capacity(n);
        // Best vertex over all boxes strictly before the current window.
        let mut prefix: Vec<Option<usize>> = Vec::with_capacity(self.boxes.len());
        let mut right_sigs: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for p in 0..self.boxes.len() {
            let linked = p > 0 && self.adjacent_boxes(p - 1);
            let free = match (linked, p) {
                (_, 0) => None,
                (true, 1) => None,
                (true, _) => prefix[p - 2],
                (false, _) => prefix[p - 1],
            };
            let mut memo: BTreeMap<(u32, u32), Option<usize>> = BTreeMap::new();
            let range = self.first[p]..self.first[p + 1];
            for v in range.clone() {
                let vx = &self.vertices[v];
                let mut choice = free;
                if linked {
                    let face = self.boxes[p].left_face;
                    let sig = (vx.set & face, vx.colors & vx.set & face);
                    let from_left = *memo.entry(sig).or_insert_with(|| {
                        let left = &self.boxes[p - 1];
                        right_sigs
                            .iter()
                            .filter(|(&(s, c), _)| compatible(left, (s, c), sig))
                            .map(|(_, &u)| u)
                            .fold(None, |acc: Option<usize>, u| match acc {
                                Some(a) if best[a] >= best[u] => Some(a),
                                _ => Some(u),
                            })
                    });
                    choice = better(&best, choice, from_left);
                }
                let base = choice.map_or_else(W::zero, |u| best[u].clone());
                best.push(base + vx.weight.clone());
                pred.push(choice);
            }
            right_sigs.clear();
            let face = self.boxes[p].right_face;
            for v in range.clone() {
                let vx = &self.vertices[v];
                let sig = (vx.set & face, vx.colors & vx.set & face);
                let slot = right_sigs.entry(sig).or_insert(v);
                if best[v] > best[*slot] {
                    *slot = v;
                }
            }
            let in_box = range.fold(None, |acc, v| better(&best, acc, Some(v)));
            let before = if p == 0 { None } else { prefix[p - 1] };
            prefix.push(better(&best, before, in_box));
        }
        let Some(mut end) = prefix.last().copied().flatten() else {
            return (Vec::new(), W::zero());
        };
        let total = best[end].clone();
        let mut path = vec![end];
        while let Some(u) = pred[end] {
            path.push(u);
            end = u;
        }
        path.reverse();
        (path, total)
    }

    fn path_solution(&self, path: &[usize]) -> Solution {
        let mut coloring = Coloring::new();
        for &v in path {
            coloring.extend(self.feasible_set(v).coloring);
        }
        Solution::with_coloring(coloring)
    }
}

/// The earlier of two candidates unless the later is strictly heavier.
fn better<W: Weight>(best: &[W], a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if best[y] > best[x] { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&a| (mask >> a) & 1 == 1)
}

/// Cross edges between a right-face signature of `left` and a left-face
/// signature of the next box are properly colored.
fn compatible(left: &SlabBox, (rs, rc): (u32, u32), (ls, lc): (u32, u32)) -> bool {
    bits(rs).all(|a| {
        let touched = left.cross_right[a] & ls;
        if (rc >> a) & 1 == 0 {
            touched & !lc == 0
        } else {
            touched & lc == 0
        }
    })
}

/// All colored feasible sets of one box, the empty set first. Components
/// without a cross edge to a neighbouring box get a single coloring; flipping
/// them never affects compatibility.
fn enumerate_box<W: Weight>(
    pack: &Packing,
    position: usize,
    b: &SlabBox,
    weights: &[W],
    cfg: &PtasConfig,
) -> Result<Vec<Vertex<W>>> {
    let m = b.members.len();
    let adj: Vec<u32> = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&c| c != a && pack.scene.intersects(b.members[a], b.members[c]))
                .fold(0, |acc, c| acc | 1 << c)
        })
        .collect();
    let face = b.left_face | b.right_face;
    let mut out = Vec::new();
    for set in 0u32..(1u32 << m) {
        let Some((colors, flippable)) = color_components(&adj, set, face) else {
            continue;
        };
        let weight = bits(set).fold(W::zero(), |acc, a| acc + weights[b.members[a]].clone());
        for t in 0u32..(1u32 << flippable.len()) {
            let flip = bits(t).fold(0, |acc, c| acc | flippable[c]);
            out.push(Vertex {
                box_position: position,
                set,
                colors: colors ^ flip,
                weight: weight.clone(),
            });
            if out.len() > cfg.set_cap {
                return Err(Error::Capacity {
                    what: "colored feasible sets per box",
                    limit: cfg.set_cap,
                    actual: out.len(),
                });
            }
        }
    }
    Ok(out)
}

/// BFS 2-coloring of `set`; the smallest member of each component gets
/// color 0. Returns the coloring and the member masks of components that
/// touch `face`, or `None` when `set` has an odd cycle.
fn color_components(adj: &[u32], set: u32, face: u32) -> Option<(u32, Vec<u32>)> {
    let mut colors = 0u32;
    let mut seen = 0u32;
    let mut flippable = Vec::new();
    for root in bits(set) {
        if (seen >> root) & 1 == 1 {
            continue;
        }
        let mut component = 1u32 << root;
        seen |= 1 << root;
        let mut stack = vec![root];
        while let Some(a) = stack.pop() {
            let ca = (colors >> a) & 1;
            for c in bits(adj[a] & set) {
                if (seen >> c) & 1 == 0 {
                    seen |= 1 << c;
                    component |= 1 << c;
                    colors |= (ca ^ 1) << c;
                    stack.push(c);
                } else if (colors >> c) & 1 == ca {
                    return None;
                }
            }
        }
        if component & face != 0 {
            flippable.push(component);
        }
    }
    Some((colors, flippable))
}

fn unit_weights(n: usize) -> Vec<u64> {
    vec![1; n]
}

fn check_weights(pack: &Packing, weights: &[Rational]) -> Result<()> {
    if weights.len() != pack.centers.len() {
        return Err(Error::validation(format!(
            "{} weights given for {} objects",
            weights.len(),
            pack.centers.len()
        )));
    }
    if let Some(i) = weights.iter().position(|w| !rational::is_nonnegative(w)) {
        return Err(Error::validation(format!("weight {i} is negative")));
    }
    Ok(())
}

/// `k = ⌈1/ε⌉`.
pub fn shift_count(epsilon: &Rational) -> Result<usize> {
    if *epsilon <= Rational::zero() {
        return Err(Error::validation("epsilon must be positive"));
    }
    let k = (Rational::one() / epsilon).ceil().to_integer();
    usize::try_from(k).map_err(|_| Error::validation("epsilon is too small"))
}

fn slab_members(pack: &Packing, members: &[usize], bottom: &Rational, k: usize) -> Result<()> {
    let top = bottom + pack.diameter() * rational::int(k as i64);
    for &i in members {
        if pack.bottom(i) < *bottom || pack.top(i) >= top {
            return Err(Error::validation(format!(
                "object {i} does not fit in the slab [{}, {})",
                rational::format(bottom),
                rational::format(&top)
            )));
        }
    }
    Ok(())
}

fn slab_exact<W: Weight>(
    pack: &Packing,
    members: &[usize],
    weights: &[W],
    cfg: &PtasConfig,
) -> Result<(Solution, W)> {
    let dag = SlabDag::build(pack, members, weights, cfg)?;
    let (path, total) = dag.best_path();
    Ok((dag.path_solution(&path), total))
}

/// The box DAG of a whole unit-weighted scene, for inspection.
pub fn slab_dag(scene: &Scene, cfg: &PtasConfig) -> Result<SlabDag<u64>> {
    let pack = Packing::new(scene)?;
    let all: Vec<usize> = (0..pack.centers.len()).collect();
    SlabDag::build(&pack, &all, &unit_weights(all.len()), cfg)
}

/// Exact maximum bipartite subset of a scene lying inside the half-open
/// slab `[bottom, bottom + k·2h)`.
pub fn solve_slab(
    scene: &Scene,
    bottom: &Rational,
    k: usize,
    cfg: &PtasConfig,
) -> Result<Solution> {
    let pack = Packing::new(scene)?;
    if k == 0 {
        return Err(Error::validation("slab height k must be at least 1"));
    }
    let all: Vec<usize> = (0..pack.centers.len()).collect();
    slab_members(&pack, &all, bottom, k)?;
    Ok(slab_exact(&pack, &all, &unit_weights(all.len()), cfg)?.0)
}

/// Members of each slab for shift `s`; objects crossing a boundary are
/// dropped.
fn shifted_slabs(pack: &Packing, k: usize, s: usize) -> Vec<Vec<usize>> {
    let d = pack.diameter();
    let height = &d * rational::int(k as i64);
    let Some(base) = (0..pack.centers.len()).map(|i| pack.bottom(i)).min() else {
        return Vec::new();
    };
    let origin = base + &d * rational::int(s as i64);
    let mut slabs: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
    for i in 0..pack.centers.len() {
        let j = rational::floor_int(&((pack.bottom(i) - &origin) / &height));
        let top = &origin + (Rational::from_integer(j.clone()) + Rational::one()) * &height;
        if pack.top(i) < top {
            slabs.entry(j).or_default().push(i);
        }
    }
    slabs.into_values().collect()
}

fn shifted<W: Weight>(
    pack: &Packing,
    k: usize,
    weights: &[W],
    cfg: &PtasConfig,
) -> Result<(Solution, W)> {
    let g = IntersectionGraph::build(pack.scene)?;
    let per_shift: Vec<(Solution, W)> = (0..k)
        .into_par_iter()
        .map(|s| {
            let parts: Vec<Solution> = shifted_slabs(pack, k, s)
                .par_iter()
                .map(|members| Ok(slab_exact(pack, members, weights, cfg)?.0))
                .collect::<Result<_>>()?;
            let sol = Solution::disjoint_union(&parts).extend_greedily(&g)?;
            let total = sol
                .selected()
                .iter()
                .fold(W::zero(), |acc, &i| acc + weights[i].clone());
            Ok((sol, total))
        })
        .collect::<Result<_>>()?;
    Ok(per_shift
        .into_iter()
        .reduce(|a, b| if b.1 > a.1 { b } else { a })
        .unwrap_or_else(|| (Solution::new(Vec::new()), W::zero())))
}

/// Best over the `k = ⌈1/ε⌉` slab shifts; at least `(1 − 1/k)·OPT`.
pub fn solve_ptas(scene: &Scene, epsilon: &Rational, cfg: &PtasConfig) -> Result<Solution> {
    let pack = Packing::new(scene)?;
    scene.require_nonempty()?;
    let k = shift_count(epsilon)?;
    Ok(shifted(&pack, k, &unit_weights(pack.centers.len()), cfg)?.0)
}

/// Weighted variant; returns the solution and its total weight. An empty
/// scene yields the empty solution with weight zero.
pub fn solve_ptas_weighted(
    scene: &Scene,
    weights: &[Rational],
    epsilon: &Rational,
    cfg: &PtasConfig,
) -> Result<(Solution, Rational)> {
    let pack = Packing::new(scene)?;
    check_weights(&pack, weights)?;
    let k = shift_count(epsilon)?;
    shifted(&pack, k, weights, cfg)
}
