//! Instance and solution files, and independent verification of solutions.
//!
//! Both files are JSON. Rationals are written as strings (`"p/q"` or an
//! integer); integer JSON numbers are accepted on input.
//!
//! ```json
//! {"kind": "unit_disks", "disk_radius": "1",
//!  "objects": [{"x": "0", "y": "1/2"}, {"x": "3/2", "y": "0"}]}
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{Arc, DiskScene, Interval, Kind, Point, Rect, Scene};
use crate::graph::{self, BipartiteCheck, Coloring, IntersectionGraph};
use crate::oracle::Problem;
use crate::rational::{self, Rational};
use crate::solve::total_weight;

/// A scene with optional nonnegative object weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub scene: Scene,
    pub weights: Option<Vec<Rational>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    disk_radius: Option<Value>,
    objects: Vec<BTreeMap<String, Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<Value>>,
}

fn field_names(kind: Kind) -> &'static [&'static str] {
    match kind {
        Kind::Intervals => &["left", "right"],
        Kind::Arcs => &["start", "end"],
        Kind::UnitDisks => &["x", "y"],
        Kind::UnitSquares | Kind::UnitHeightRects | Kind::Rects => {
            &["x_min", "x_max", "y_min", "y_max"]
        }
    }
}

fn value_to_rational(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s).map_err(|e| Error::Parse(format!("{what}: {e}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => rational::parse(&n.to_string()),
        _ => Err(Error::Parse(format!(
            "{what}: expected a rational string, found {v}"
        ))),
    }
}

/// Record values in `field_names` order; lengths are fixed by the parser.
fn fields<const N: usize>(record: Vec<Rational>) -> [Rational; N] {
    record.try_into().expect("record length matches its kind")
}

fn rational_value(q: &Rational) -> Value {
    Value::String(rational::format(q))
}

impl Instance {
    pub fn new(scene: Scene) -> Self {
        Instance {
            scene,
            weights: None,
        }
    }

    pub fn with_weights(scene: Scene, weights: Vec<Rational>) -> Self {
        Instance {
            scene,
            weights: Some(weights),
        }
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        self.weights.as_deref()
    }

    /// Parses and validates an instance document.
    pub fn from_json(text: &str) -> Result<Instance> {
        let raw: RawInstance = serde_json::from_str(text)?;
        let kind: Kind = raw.kind.parse()?;
        let names = field_names(kind);
        let mut records: Vec<Vec<Rational>> = Vec::with_capacity(raw.objects.len());
        for (i, obj) in raw.objects.iter().enumerate() {
            if let Some(extra) = obj.keys().find(|k| !names.contains(&k.as_str())) {
                return Err(Error::validation(format!(
                    "object {i}: field {extra:?} does not belong to kind {kind}"
                )));
            }
            let values = names
                .iter()
                .map(|&name| match obj.get(name) {
                    Some(v) => value_to_rational(v, &format!("object {i} field {name}")),
                    None => Err(Error::validation(format!(
                        "object {i}: missing field {name:?}"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            records.push(values);
        }
        let radius = match (&raw.disk_radius, kind) {
            (Some(v), Kind::UnitDisks) => Some(value_to_rational(v, "disk_radius")?),
            (None, Kind::UnitDisks) => {
                return Err(Error::validation("unit_disks needs disk_radius"))
            }
            (Some(_), _) => {
                return Err(Error::validation(format!(
                    "disk_radius does not apply to {kind}"
                )))
            }
            (None, _) => None,
        };
        let scene = match kind {
            Kind::Intervals => Scene::Intervals(
                records
                    .into_iter()
                    .map(|r| {
                        let [l, h] = fields(r);
                        Interval::new(l, h)
                    })
                    .collect(),
            ),
            Kind::Arcs => Scene::Arcs(
                records
                    .into_iter()
                    .map(|r| {
                        let [s, e] = fields(r);
                        Arc::new(s, e)
                    })
                    .collect(),
            ),
            Kind::UnitDisks => Scene::UnitDisks(DiskScene::new(
                radius.unwrap_or_default(),
                records
                    .into_iter()
                    .map(|r| {
                        let [x, y] = fields(r);
                        Point::new(x, y)
                    })
                    .collect(),
            )),
            Kind::UnitSquares | Kind::UnitHeightRects | Kind::Rects => {
                let rects = records
                    .into_iter()
                    .map(|r| {
                        let [x0, x1, y0, y1] = fields(r);
                        Rect::new(x0, x1, y0, y1)
                    })
                    .collect();
                match kind {
                    Kind::UnitSquares => Scene::UnitSquares(rects),
                    Kind::UnitHeightRects => Scene::UnitHeightRects(rects),
                    _ => Scene::Rects(rects),
                }
            }
        };
        scene.validate()?;
        let weights = match raw.weights {
            None => None,
            Some(ws) => {
                if ws.len() != scene.len() {
                    return Err(Error::validation(format!(
                        "{} weights given for {} objects",
                        ws.len(),
                        scene.len()
                    )));
                }
                let ws = ws
                    .iter()
                    .enumerate()
                    .map(|(i, w)| value_to_rational(w, &format!("weight {i}")))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(i) = ws.iter().position(|w| !rational::is_nonnegative(w)) {
                    return Err(Error::validation(format!("weight {i} is negative")));
                }
                Some(ws)
            }
        };
        Ok(Instance { scene, weights })
    }

    /// Canonical JSON form.
    pub fn to_json(&self) -> String {
        let kind = self.scene.kind();
        let names = field_names(kind);
        let rows: Vec<Vec<&Rational>> = match &self.scene {
            Scene::Intervals(v) => v.iter().map(|i| vec![&i.left, &i.right]).collect(),
            Scene::Arcs(v) => v.iter().map(|a| vec![&a.start, &a.end]).collect(),
            Scene::UnitDisks(d) => d.centers.iter().map(|c| vec![&c.x, &c.y]).collect(),
            Scene::UnitSquares(v) | Scene::UnitHeightRects(v) | Scene::Rects(v) => v
                .iter()
                .map(|r| vec![&r.x_min, &r.x_max, &r.y_min, &r.y_max])
                .collect(),
        };
        let raw = RawInstance {
            kind: kind.name().to_string(),
            disk_radius: match &self.scene {
                Scene::UnitDisks(d) => Some(rational_value(&d.radius)),
                _ => None,
            },
            objects: rows
                .into_iter()
                .map(|row| {
                    names
                        .iter()
                        .zip(row)
                        .map(|(n, q)| (n.to_string(), rational_value(q)))
                        .collect()
                })
                .collect(),
            weights: self
                .weights
                .as_ref()
                .map(|ws| ws.iter().map(rational_value).collect()),
        };
        serde_json::to_string_pretty(&raw).expect("instance serializes")
    }

    pub fn read(path: &Path) -> Result<Instance> {
        Instance::from_json(&read_text(path)?)
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
}

/// A solution document. `coloring[i]` is the color of `selected[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub problem: String,
    pub algorithm: String,
    pub size: usize,
    pub selected: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

impl SolutionFile {
    pub fn new(
        problem: Problem,
        algorithm: &str,
        solution: &crate::Solution,
        weight: Option<&Rational>,
    ) -> Self {
        SolutionFile {
            problem: problem.name().to_string(),
            algorithm: algorithm.to_string(),
            size: solution.len(),
            selected: solution.selected().to_vec(),
            coloring: solution
                .coloring()
                .map(|c| solution.selected().iter().map(|v| c[v]).collect()),
            weight: weight.map(rational::format),
        }
    }

    pub fn from_json(text: &str) -> Result<SolutionFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serializes")
    }

    pub fn read(path: &Path) -> Result<SolutionFile> {
        SolutionFile::from_json(&read_text(path)?)
    }
}

/// Why a solution file is not a feasible solution of its instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    IndexOutOfRange(usize),
    DuplicateIndex(usize),
    SizeMismatch { claimed: usize, actual: usize },
    ColoringLength { colors: usize, selected: usize },
    BadColor { vertex: usize, color: u8 },
    WeightMismatch { claimed: String, actual: String },
    Triangle([usize; 3]),
    OddCycle(Vec<usize>),
    MonochromaticEdge(usize, usize),
    Edge(usize, usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::IndexOutOfRange(v) => write!(f, "index-out-of-range {v}"),
            Witness::DuplicateIndex(v) => write!(f, "duplicate-index {v}"),
            Witness::SizeMismatch { claimed, actual } => {
                write!(f, "size-mismatch claimed={claimed} actual={actual}")
            }
            Witness::ColoringLength { colors, selected } => {
                write!(f, "coloring-length colors={colors} selected={selected}")
            }
            Witness::BadColor { vertex, color } => {
                write!(f, "bad-color vertex={vertex} color={color}")
            }
            Witness::WeightMismatch { claimed, actual } => {
                write!(f, "weight-mismatch claimed={claimed} actual={actual}")
            }
            Witness::Triangle([a, b, c]) => write!(f, "triangle {a} {b} {c}"),
            Witness::OddCycle(c) => {
                write!(f, "odd-cycle")?;
                c.iter().try_for_each(|v| write!(f, " {v}"))
            }
            Witness::MonochromaticEdge(u, v) => write!(f, "monochromatic-edge {u} {v}"),
            Witness::Edge(u, v) => write!(f, "edge {u} {v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Feasible { size: usize },
    Infeasible(Witness),
}

/// Re-checks `file` against `instance` without trusting the solver.
pub fn verify(instance: &Instance, file: &SolutionFile) -> Result<Verdict> {
    let problem: Problem = file.problem.parse()?;
    let n = instance.scene.len();
    let mut seen = vec![false; n];
    for &v in &file.selected {
        if v >= n {
            return Ok(Verdict::Infeasible(Witness::IndexOutOfRange(v)));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Ok(Verdict::Infeasible(Witness::DuplicateIndex(v)));
        }
    }
    let k = file.selected.len();
    if file.size != k {
        return Ok(Verdict::Infeasible(Witness::SizeMismatch {
            claimed: file.size,
            actual: k,
        }));
    }
    if let Some(claimed) = &file.weight {
        let claimed = rational::parse(claimed)?;
        let actual = match instance.weights() {
            Some(w) => total_weight(w, &file.selected),
            None => rational::int(k as i64),
        };
        if claimed != actual {
            return Ok(Verdict::Infeasible(Witness::WeightMismatch {
                claimed: rational::format(&claimed),
                actual: rational::format(&actual),
            }));
        }
    }
    let coloring = match &file.coloring {
        None => None,
        Some(colors) if colors.len() != k => {
            return Ok(Verdict::Infeasible(Witness::ColoringLength {
                colors: colors.len(),
                selected: k,
            }))
        }
        Some(colors) => {
            if let Some((&vertex, &color)) = file.selected.iter().zip(colors).find(|(_, &c)| c > 1)
            {
                return Ok(Verdict::Infeasible(Witness::BadColor { vertex, color }));
            }
            Some(
                file.selected
                    .iter()
                    .copied()
                    .zip(colors.iter().copied())
                    .collect::<Coloring>(),
            )
        }
    };
    let g = IntersectionGraph::build(&instance.scene)?;
    let s = &file.selected;
    let witness = match problem {
        Problem::Mis => graph::is_independent(&g, s)?.map(|(u, v)| Witness::Edge(u, v)),
        Problem::Mtfs => graph::is_triangle_free(&g, s)?.map(Witness::Triangle),
        Problem::Mbs => {
            let failure = match &coloring {
                Some(c) => {
                    graph::monochromatic_edge(&g, c)?.map(|(u, v)| Witness::MonochromaticEdge(u, v))
                }
                None => match graph::check_bipartite(&g, s)? {
                    BipartiteCheck::Bipartite(_) => None,
                    BipartiteCheck::OddCycle(c) => Some(Witness::OddCycle(c)),
                },
            };
            // A triangle is the most readable witness when there is one.
            match failure {
                Some(w) => Some(graph::is_triangle_free(&g, s)?.map_or(w, Witness::Triangle)),
                None => None,
            }
        }
    };
    Ok(match witness {
        Some(w) => Verdict::Infeasible(w),
        None => Verdict::Feasible { size: k },
    })
}
