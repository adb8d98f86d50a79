//! Ratio benchmark over a generated corpus.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::generate::{self, GeneratorConfig};
use crate::graph::IntersectionGraph;
use crate::oracle::{self, Problem};
use crate::ptas;
use crate::solve::{self, Algorithm, SolveOptions};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Instance `i` is generated with seed `generator.seed + i`.
    pub generator: GeneratorConfig,
    pub count: usize,
    pub algorithms: Vec<Algorithm>,
    /// Compute the exact optimum when the scene is within the oracle cap.
    pub oracle: bool,
    pub solve: SolveOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub id: usize,
    pub algorithm: String,
    pub size: usize,
    pub optimum: Option<usize>,
    /// `optimum / size`; absent without an optimum or for an empty answer.
    pub ratio: Option<f64>,
    pub time_ms: f64,
    pub guarantee: String,
    /// Whether the size meets the guarantee; absent without an optimum.
    pub ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchSummary {
    pub algorithm: String,
    pub rows: usize,
    pub min_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<BenchSummary>,
}

fn run_instance(cfg: &BenchConfig, id: usize) -> Result<Vec<BenchRow>> {
    let gen = GeneratorConfig {
        seed: cfg.generator.seed.wrapping_add(id as u64),
        ..cfg.generator.clone()
    };
    let inst = generate::generate(&gen)?;
    let n = inst.scene.len();
    let optimum = if cfg.oracle && n <= cfg.solve.oracle.cap {
        let g = IntersectionGraph::build(&inst.scene)?;
        Some(oracle::solve_exact(&g, Problem::Mbs, &cfg.solve.oracle)?.len())
    } else {
        None
    };
    let k = ptas::shift_count(&cfg.solve.epsilon)?;
    cfg.algorithms
        .iter()
        .map(|&algorithm| {
            let opts = SolveOptions {
                algorithm,
                ..cfg.solve.clone()
            };
            let start = Instant::now();
            let out = solve::solve(&inst.scene, None, &opts)?;
            let time_ms = start.elapsed().as_secs_f64() * 1e3;
            let size = out.solution.len();
            let guarantee = out.algorithm.guarantee(n, k);
            Ok(BenchRow {
                id,
                algorithm: algorithm.name().to_string(),
                size,
                optimum,
                ratio: optimum.filter(|_| size > 0).map(|o| o as f64 / size as f64),
                time_ms,
                guarantee: guarantee.describe(),
                ok: optimum.map(|o| guarantee.holds(size, o)),
            })
        })
        .collect()
}

pub fn run(cfg: &BenchConfig) -> Result<BenchReport> {
    let per_instance: Vec<Vec<BenchRow>> = (0..cfg.count)
        .into_par_iter()
        .map(|id| run_instance(cfg, id))
        .collect::<Result<_>>()?;
    // Collected in id order; rows within an instance follow `algorithms`.
    let rows: Vec<BenchRow> = per_instance.into_iter().flatten().collect();
    let mut groups: BTreeMap<&str, Vec<&BenchRow>> = BTreeMap::new();
    for row in &rows {
        groups.entry(&row.algorithm).or_default().push(row);
    }
    let summary = cfg
        .algorithms
        .iter()
        .filter_map(|a| groups.get(a.name()).map(|rs| (a.name(), rs)))
        .map(|(name, rs)| {
            let ratios: Vec<f64> = rs.iter().filter_map(|r| r.ratio).collect();
            BenchSummary {
                algorithm: name.to_string(),
                rows: rs.len(),
                min_ratio: ratios.iter().copied().reduce(f64::min),
                mean_ratio: (!ratios.is_empty())
                    .then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
                max_ratio: ratios.iter().copied().reduce(f64::max),
                violations: rs.iter().filter(|r| r.ok == Some(false)).count(),
            }
        })
        .collect();
    Ok(BenchReport { rows, summary })
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn ratio_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

impl BenchReport {
    /// Tab-separated rows, then one `#`-prefixed summary line per algorithm.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("id\talgorithm\tsize\toptimum\tratio\ttime_ms\tguarantee\tok\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{:.3}\t{}\t{}",
                r.id,
                r.algorithm,
                r.size,
                cell(r.optimum),
                ratio_cell(r.ratio),
                r.time_ms,
                r.guarantee,
                cell(r.ok)
            );
        }
        out.push_str("# algorithm\trows\tmin_ratio\tmean_ratio\tmax_ratio\tviolations\n");
        for s in &self.summary {
            let _ = writeln!(
                out,
                "# {}\t{}\t{}\t{}\t{}\t{}",
                s.algorithm,
                s.rows,
                ratio_cell(s.min_ratio),
                ratio_cell(s.mean_ratio),
                ratio_cell(s.max_ratio),
                s.violations
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn violations(&self) -> usize {
        self.summary.iter().map(|s| s.violations).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Kind;

    fn config(kind: Kind, algorithms: Vec<Algorithm>) -> BenchConfig {
        BenchConfig {
            generator: GeneratorConfig::new(kind, 10, 11),
            count: 6,
            algorithms,
            oracle: true,
            solve: SolveOptions::default(),
        }
    }

    #[test]
    fn disk_suite_within_guarantees() {
        let cfg = config(
            Kind::UnitDisks,
            vec![
                Algorithm::ThreeApprox,
                Algorithm::Logn,
                Algorithm::Ptas,
                Algorithm::Oracle,
            ],
        );
        let report = run(&cfg).unwrap();
        assert_eq!(report.rows.len(), 24);
        assert_eq!(report.violations(), 0);
        assert!(report.rows.windows(2).all(|w| w[0].id <= w[1].id));
        let oracle = report
            .summary
            .iter()
            .find(|s| s.algorithm == "oracle")
            .unwrap();
        assert_eq!(oracle.max_ratio, Some(1.0));
        assert!(report.rows.iter().all(|r| r.ratio.is_none_or(|x| x >= 1.0)));
    }

    #[test]
    fn reports_render() {
        let report = run(&config(Kind::Intervals, vec![Algorithm::Interval])).unwrap();
        let tsv = report.to_tsv();
        assert_eq!(tsv.lines().count(), 1 + 6 + 2);
        assert!(tsv.starts_with("id\talgorithm"));
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn deterministic_sizes() {
        let cfg = config(Kind::Arcs, vec![Algorithm::Arcs]);
        let a: Vec<usize> = run(&cfg).unwrap().rows.iter().map(|r| r.size).collect();
        let b: Vec<usize> = run(&cfg).unwrap().rows.iter().map(|r| r.size).collect();
        assert_eq!(a, b);
    }
}
