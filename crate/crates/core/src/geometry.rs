//! Geometric objects and their closed intersection predicates.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn squared_distance(&self, other: &Point) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }
}

/// Closed interval `[left, right]` with `left < right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub left: Rational,
    pub right: Rational,
}

impl Interval {
    pub fn new(left: Rational, right: Rational) -> Self {
        Interval { left, right }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    pub fn contains(&self, p: &Rational) -> bool {
        &self.left <= p && p <= &self.right
    }
}

/// Closed arc of the unit-circumference circle, swept clockwise from `start`
/// to `end`. Angles are fractions of a full turn in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub start: Rational,
    pub end: Rational,
}

/// Reduces an angle into `[0, 1)`.
pub(crate) fn wrap_angle(t: &Rational) -> Rational {
    t - t.floor()
}

impl Arc {
    pub fn new(start: Rational, end: Rational) -> Self {
        Arc { start, end }
    }

    /// Angular length of the clockwise sweep, in `(0, 1)`.
    pub fn length(&self) -> Rational {
        wrap_angle(&(&self.end - &self.start))
    }

    /// Whether the closed arc contains the angle `p` (taken modulo 1).
    pub fn contains(&self, p: &Rational) -> bool {
        wrap_angle(&(p - &self.start)) <= self.length()
    }

    /// Two closed arcs meet iff one of them contains the other's start.
    pub fn intersects(&self, other: &Arc) -> bool {
        self.contains(&other.start) || other.contains(&self.start)
    }
}

/// Axis-parallel closed rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x_min: Rational,
    pub x_max: Rational,
    pub y_min: Rational,
    pub y_max: Rational,
}

impl Rect {
    pub fn new(x_min: Rational, x_max: Rational, y_min: Rational, y_max: Rational) -> Self {
        Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.x_min <= other.x_max
            && other.x_min <= self.x_max
            && self.y_min <= other.y_max
            && other.y_min <= self.y_max
    }

    pub fn width(&self) -> Rational {
        &self.x_max - &self.x_min
    }

    pub fn height(&self) -> Rational {
        &self.y_max - &self.y_min
    }

    pub fn x_projection(&self) -> Interval {
        Interval::new(self.x_min.clone(), self.x_max.clone())
    }
}

/// Congruent closed disks sharing one radius.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiskScene {
    pub radius: Rational,
    pub centers: Vec<Point>,
}

impl DiskScene {
    pub fn new(radius: Rational, centers: Vec<Point>) -> Self {
        DiskScene { radius, centers }
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Closed disks meet iff their centers are at most one diameter apart.
    pub fn intersects(&self, a: usize, b: usize) -> bool {
        let diameter = &self.radius + &self.radius;
        self.centers[a].squared_distance(&self.centers[b]) <= &diameter * &diameter
    }

    pub fn subset(&self, indices: &[usize]) -> DiskScene {
        DiskScene {
            radius: self.radius.clone(),
            centers: indices.iter().map(|&i| self.centers[i].clone()).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.radius.is_positive() {
            return Err(Error::validation(format!(
                "disk radius must be positive, got {}",
                rational::format(&self.radius)
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Intervals,
    Arcs,
    UnitDisks,
    UnitSquares,
    UnitHeightRects,
    Rects,
}

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Intervals,
        Kind::Arcs,
        Kind::UnitDisks,
        Kind::UnitSquares,
        Kind::UnitHeightRects,
        Kind::Rects,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Intervals => "intervals",
            Kind::Arcs => "arcs",
            Kind::UnitDisks => "unit_disks",
            Kind::UnitSquares => "unit_squares",
            Kind::UnitHeightRects => "unit_height_rects",
            Kind::Rects => "rects",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::validation(format!("unknown kind `{s}`")))
    }
}

/// A scene of objects of a single kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scene {
    Intervals(Vec<Interval>),
    Arcs(Vec<Arc>),
    UnitDisks(DiskScene),
    UnitSquares(Vec<Rect>),
    UnitHeightRects(Vec<Rect>),
    Rects(Vec<Rect>),
}

impl Scene {
    pub fn kind(&self) -> Kind {
        match self {
            Scene::Intervals(_) => Kind::Intervals,
            Scene::Arcs(_) => Kind::Arcs,
            Scene::UnitDisks(_) => Kind::UnitDisks,
            Scene::UnitSquares(_) => Kind::UnitSquares,
            Scene::UnitHeightRects(_) => Kind::UnitHeightRects,
            Scene::Rects(_) => Kind::Rects,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Scene::Intervals(v) => v.len(),
            Scene::Arcs(v) => v.len(),
            Scene::UnitDisks(d) => d.len(),
            Scene::UnitSquares(v) | Scene::UnitHeightRects(v) | Scene::Rects(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rects(&self) -> Option<&[Rect]> {
        match self {
            Scene::UnitSquares(v) | Scene::UnitHeightRects(v) | Scene::Rects(v) => Some(v),
            _ => None,
        }
    }

    /// Closed intersection test between objects `a` and `b`.
    pub fn intersects(&self, a: usize, b: usize) -> bool {
        match self {
            Scene::Intervals(v) => v[a].intersects(&v[b]),
            Scene::Arcs(v) => v[a].intersects(&v[b]),
            Scene::UnitDisks(d) => d.intersects(a, b),
            Scene::UnitSquares(v) | Scene::UnitHeightRects(v) | Scene::Rects(v) => {
                v[a].intersects(&v[b])
            }
        }
    }

    /// Checks the per-object invariants of this kind.
    pub fn validate(&self) -> Result<()> {
        match self {
            Scene::Intervals(v) => {
                for (i, iv) in v.iter().enumerate() {
                    if iv.left >= iv.right {
                        return Err(Error::validation(format!(
                            "interval {i}: left endpoint must be below right endpoint"
                        )));
                    }
                }
            }
            Scene::Arcs(v) => {
                for (i, a) in v.iter().enumerate() {
                    for t in [&a.start, &a.end] {
                        if t.is_negative() || *t >= Rational::one() {
                            return Err(Error::validation(format!(
                                "arc {i}: angle {} outside [0, 1)",
                                rational::format(t)
                            )));
                        }
                    }
                    if a.start == a.end {
                        return Err(Error::validation(format!("arc {i}: start equals end")));
                    }
                }
            }
            Scene::UnitDisks(d) => d.validate()?,
            Scene::UnitSquares(v) | Scene::UnitHeightRects(v) | Scene::Rects(v) => {
                let kind = self.kind();
                for (i, r) in v.iter().enumerate() {
                    if r.x_min >= r.x_max || r.y_min >= r.y_max {
                        return Err(Error::validation(format!("rectangle {i}: empty extent")));
                    }
                    if matches!(kind, Kind::UnitSquares | Kind::UnitHeightRects)
                        && !r.height().is_one()
                    {
                        return Err(Error::validation(format!(
                            "rectangle {i}: height {} is not 1",
                            rational::format(&r.height())
                        )));
                    }
                    if kind == Kind::UnitSquares && !r.width().is_one() {
                        return Err(Error::validation(format!(
                            "rectangle {i}: width {} is not 1",
                            rational::format(&r.width())
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::validation("scene has no objects"))
        } else {
            Ok(())
        }
    }

    /// Restricts the scene to `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Scene {
        fn pick<T: Clone>(v: &[T], idx: &[usize]) -> Vec<T> {
            idx.iter().map(|&i| v[i].clone()).collect()
        }
        match self {
            Scene::Intervals(v) => Scene::Intervals(pick(v, indices)),
            Scene::Arcs(v) => Scene::Arcs(pick(v, indices)),
            Scene::UnitDisks(d) => Scene::UnitDisks(d.subset(indices)),
            Scene::UnitSquares(v) => Scene::UnitSquares(pick(v, indices)),
            Scene::UnitHeightRects(v) => Scene::UnitHeightRects(pick(v, indices)),
            Scene::Rects(v) => Scene::Rects(pick(v, indices)),
        }
    }

    /// Moves every object by `(dx, dy)`. Intervals use `dx` only; arcs are
    /// rotated by `dx` turns.
    pub fn translated(&self, dx: &Rational, dy: &Rational) -> Scene {
        let shift_rect =
            |r: &Rect| Rect::new(&r.x_min + dx, &r.x_max + dx, &r.y_min + dy, &r.y_max + dy);
        match self {
            Scene::Intervals(v) => Scene::Intervals(
                v.iter()
                    .map(|iv| Interval::new(&iv.left + dx, &iv.right + dx))
                    .collect(),
            ),
            Scene::Arcs(v) => Scene::Arcs(
                v.iter()
                    .map(|a| Arc::new(wrap_angle(&(&a.start + dx)), wrap_angle(&(&a.end + dx))))
                    .collect(),
            ),
            Scene::UnitDisks(d) => Scene::UnitDisks(DiskScene::new(
                d.radius.clone(),
                d.centers
                    .iter()
                    .map(|p| Point::new(&p.x + dx, &p.y + dy))
                    .collect(),
            )),
            Scene::UnitSquares(v) => Scene::UnitSquares(v.iter().map(shift_rect).collect()),
            Scene::UnitHeightRects(v) => Scene::UnitHeightRects(v.iter().map(shift_rect).collect()),
            Scene::Rects(v) => Scene::Rects(v.iter().map(shift_rect).collect()),
        }
    }
}
