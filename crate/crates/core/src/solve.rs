//! Algorithm selection and dispatch over all scene kinds.

use std::fmt;
use std::str::FromStr;

use crate::arcs;
use crate::disk_general;
use crate::disk_line;
use crate::error::{Error, Result};
use crate::geometry::{DiskScene, Kind, Scene};
use crate::graph::IntersectionGraph;
use crate::interval::{self, IntervalOptions, TiePolicy};
use crate::oracle::{self, OracleConfig, Problem};
use crate::ptas::{self, PtasConfig};
use crate::rational::{self, Rational};
use crate::rect;
use crate::solution::Solution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Auto,
    Interval,
    Arcs,
    OneSided,
    TwoSided,
    ThreeApprox,
    Logn,
    Ptas,
    UnitHeight,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 10] = [
        Algorithm::Auto,
        Algorithm::Interval,
        Algorithm::Arcs,
        Algorithm::OneSided,
        Algorithm::TwoSided,
        Algorithm::ThreeApprox,
        Algorithm::Logn,
        Algorithm::Ptas,
        Algorithm::UnitHeight,
        Algorithm::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Interval => "interval",
            Algorithm::Arcs => "arcs",
            Algorithm::OneSided => "one-sided",
            Algorithm::TwoSided => "two-sided",
            Algorithm::ThreeApprox => "three-approx",
            Algorithm::Logn => "logn",
            Algorithm::Ptas => "ptas",
            Algorithm::UnitHeight => "unit-height",
            Algorithm::Oracle => "oracle",
        }
    }

    /// Kinds this algorithm accepts.
    pub fn supports(self, kind: Kind) -> bool {
        match self {
            Algorithm::Auto | Algorithm::Oracle => true,
            Algorithm::Interval => kind == Kind::Intervals,
            Algorithm::Arcs => kind == Kind::Arcs,
            Algorithm::OneSided
            | Algorithm::TwoSided
            | Algorithm::ThreeApprox
            | Algorithm::Logn => kind == Kind::UnitDisks,
            Algorithm::Ptas => matches!(kind, Kind::UnitDisks | Kind::UnitSquares),
            Algorithm::UnitHeight => matches!(kind, Kind::UnitSquares | Kind::UnitHeightRects),
        }
    }

    /// Proven guarantee for a scene of `n` objects; `k` is the PTAS shift
    /// count.
    pub fn guarantee(self, n: usize, k: usize) -> Guarantee {
        match self {
            Algorithm::Interval | Algorithm::OneSided | Algorithm::Oracle => Guarantee::Exact,
            Algorithm::Arcs => Guarantee::AdditiveOne,
            Algorithm::TwoSided | Algorithm::UnitHeight => Guarantee::Factor(2.0),
            Algorithm::ThreeApprox => Guarantee::Factor(3.0),
            Algorithm::Logn => Guarantee::Factor(disk_general::logn_factor(n)),
            Algorithm::Ptas if k <= 1 => Guarantee::None,
            Algorithm::Ptas => Guarantee::Factor(k as f64 / (k - 1) as f64),
            Algorithm::Auto => Guarantee::None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::validation(format!("unknown algorithm {s:?}")))
    }
}

/// What a solution size is promised to achieve against the optimum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Guarantee {
    Exact,
    /// At least `OPT − 1`.
    AdditiveOne,
    /// At least `OPT / f`.
    Factor(f64),
    None,
}

impl Guarantee {
    pub fn holds(self, size: usize, opt: usize) -> bool {
        match self {
            Guarantee::Exact => size == opt,
            Guarantee::AdditiveOne => size + 1 >= opt && size <= opt,
            // Tolerate rounding of irrational factors such as 2·log₂ n.
            Guarantee::Factor(f) => f * size as f64 >= opt as f64 - 1e-9 && size <= opt,
            Guarantee::None => size <= opt,
        }
    }

    pub fn describe(self) -> String {
        match self {
            Guarantee::Exact => "exact".into(),
            Guarantee::AdditiveOne => "opt-1".into(),
            Guarantee::Factor(f) => format!("{f:.3}"),
            Guarantee::None => "-".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub epsilon: Rational,
    /// Stabbing line for the line-based disk solvers; inferred when absent.
    pub line: Option<Rational>,
    /// Break endpoint ties symbolically for intervals.
    pub perturb: bool,
    pub oracle: OracleConfig,
    pub ptas: PtasConfig,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            algorithm: Algorithm::Auto,
            epsilon: rational::ratio(1, 2),
            line: None,
            perturb: false,
            oracle: OracleConfig::default(),
            ptas: PtasConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub algorithm: Algorithm,
    pub solution: Solution,
    /// Total weight of the selection when the scene is weighted.
    pub weight: Option<Rational>,
}

/// Center y-range of a disk scene.
fn y_range(d: &DiskScene) -> Option<(Rational, Rational)> {
    let lo = d.centers.iter().map(|c| &c.y).min()?;
    let hi = d.centers.iter().map(|c| &c.y).max()?;
    Some((lo.clone(), hi.clone()))
}

/// The strongest applicable algorithm for `scene`.
pub fn auto_algorithm(scene: &Scene, oracle_cap: usize) -> Result<Algorithm> {
    Ok(match scene {
        Scene::Intervals(_) => Algorithm::Interval,
        Scene::Arcs(_) => Algorithm::Arcs,
        Scene::UnitDisks(d) => match y_range(d).map(|(lo, hi)| hi - lo) {
            Some(spread) if spread <= d.radius => Algorithm::OneSided,
            Some(spread) if spread <= &d.radius + &d.radius => Algorithm::TwoSided,
            _ => Algorithm::ThreeApprox,
        },
        Scene::UnitSquares(_) | Scene::UnitHeightRects(_) => Algorithm::UnitHeight,
        Scene::Rects(v) if v.len() <= oracle_cap => Algorithm::Oracle,
        Scene::Rects(v) => {
            return Err(Error::Capacity {
                what: "arbitrary rectangles (solved only by the oracle)",
                limit: oracle_cap,
                actual: v.len(),
            })
        }
    })
}

fn disks(scene: &Scene) -> &DiskScene {
    match scene {
        Scene::UnitDisks(d) => d,
        _ => unreachable!("kind checked by Algorithm::supports"),
    }
}

/// Runs the requested algorithm; the returned solution always carries a
/// coloring certificate.
pub fn solve(scene: &Scene, weights: Option<&[Rational]>, opts: &SolveOptions) -> Result<Outcome> {
    scene.validate()?;
    scene.require_nonempty()?;
    if let Some(w) = weights {
        if w.len() != scene.len() {
            return Err(Error::validation(format!(
                "{} weights given for {} objects",
                w.len(),
                scene.len()
            )));
        }
    }
    let algorithm = match opts.algorithm {
        Algorithm::Auto => auto_algorithm(scene, opts.oracle.cap)?,
        a => a,
    };
    if !algorithm.supports(scene.kind()) {
        return Err(Error::validation(format!(
            "algorithm {algorithm} does not apply to {}",
            scene.kind()
        )));
    }
    let solution = match algorithm {
        Algorithm::Auto => unreachable!("resolved above"),
        Algorithm::Interval => {
            let Scene::Intervals(v) = scene else {
                unreachable!()
            };
            let ties = if opts.perturb {
                TiePolicy::Perturb
            } else {
                TiePolicy::Reject
            };
            interval::solve_intervals(
                v,
                IntervalOptions {
                    presorted: false,
                    ties,
                },
            )?
        }
        Algorithm::Arcs => {
            let Scene::Arcs(v) = scene else {
                unreachable!()
            };
            arcs::solve_arcs(v)?
        }
        Algorithm::OneSided => {
            let d = disks(scene);
            let line = match &opts.line {
                Some(l) => l.clone(),
                None => y_range(d).map(|(lo, _)| lo).unwrap_or_default(),
            };
            disk_line::solve_one_sided(d, &line)?
        }
        Algorithm::TwoSided => {
            let d = disks(scene);
            let line = match &opts.line {
                Some(l) => l.clone(),
                None => y_range(d)
                    .map(|(lo, hi)| (lo + hi) / rational::int(2))
                    .unwrap_or_default(),
            };
            disk_line::solve_two_sided(d, &line)?
        }
        Algorithm::ThreeApprox => disk_general::solve_3approx(disks(scene))?,
        Algorithm::Logn => disk_general::solve_logn(disks(scene))?,
        Algorithm::Ptas => match weights {
            Some(w) => ptas::solve_ptas_weighted(scene, w, &opts.epsilon, &opts.ptas)?.0,
            None => ptas::solve_ptas(scene, &opts.epsilon, &opts.ptas)?,
        },
        Algorithm::UnitHeight => rect::solve_unit_height(scene.rects().unwrap_or_default())?,
        Algorithm::Oracle => {
            let g = IntersectionGraph::build(scene)?;
            match weights {
                Some(w) => oracle::exact_mbs_weighted(&g, w, &opts.oracle)?.0,
                None => oracle::solve_exact(&g, Problem::Mbs, &opts.oracle)?,
            }
        }
    };
    let solution = match solution.coloring() {
        Some(_) => solution,
        None => solution.certify(&IntersectionGraph::build(scene)?)?,
    };
    let weight = weights.map(|w| total_weight(w, solution.selected()));
    Ok(Outcome {
        algorithm,
        solution,
        weight,
    })
}

pub fn total_weight(weights: &[Rational], selected: &[usize]) -> Rational {
    selected.iter().map(|&i| weights[i].clone()).sum()
}
