//! Deterministic random scenes.
//!
//! Coordinates are multiples of `1 / denominator` so instances stay small
//! and exact. The same configuration always yields the same scene.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Arc, DiskScene, Interval, Kind, Point, Rect, Scene};
use crate::io::Instance;
use crate::rational::{self, Rational};

/// Vertical placement of disk centers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DiskMode {
    /// Anywhere in the square `[0, span]²`.
    #[default]
    Free,
    /// `y ∈ [0, r]`: every disk meets `y = 0` from above.
    OneSided,
    /// `y ∈ [−r, r]`: every disk meets `y = 0`.
    TwoSided,
}

impl std::str::FromStr for DiskMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(DiskMode::Free),
            "one-sided" => Ok(DiskMode::OneSided),
            "two-sided" => Ok(DiskMode::TwoSided),
            _ => Err(Error::validation(format!("unknown disk mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub kind: Kind,
    pub n: usize,
    pub seed: u64,
    /// Side of the placement region, in coordinate units.
    pub span: i64,
    /// Coordinates are multiples of `1 / denominator`.
    pub denominator: i64,
    pub disk_radius: Rational,
    pub disk_mode: DiskMode,
    /// Attach integer weights in `1..=5`.
    pub weighted: bool,
}

impl GeneratorConfig {
    pub fn new(kind: Kind, n: usize, seed: u64) -> Self {
        GeneratorConfig {
            kind,
            n,
            seed,
            span: 6,
            denominator: 4,
            disk_radius: rational::int(1),
            disk_mode: DiskMode::Free,
            weighted: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::validation("n must be at least 1"));
        }
        if self.span <= 0 || self.denominator <= 0 {
            return Err(Error::validation("span and denominator must be positive"));
        }
        if self.disk_radius <= rational::int(0) {
            return Err(Error::validation("disk radius must be positive"));
        }
        if self.disk_mode != DiskMode::Free && self.kind != Kind::UnitDisks {
            return Err(Error::validation("disk modes apply to unit_disks only"));
        }
        Ok(())
    }
}

struct Grid {
    rng: ChaCha8Rng,
    den: i64,
}

impl Grid {
    /// Uniform grid point in `[lo, hi]` (in coordinate units).
    fn coord(&mut self, lo: i64, hi: i64) -> Rational {
        rational::ratio(self.rng.gen_range(lo * self.den..=hi * self.den), self.den)
    }
}

pub fn generate(cfg: &GeneratorConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut grid = Grid {
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        den: cfg.denominator,
    };
    let (n, span, den) = (cfg.n, cfg.span, cfg.denominator);
    let scene = match cfg.kind {
        Kind::Intervals => {
            // Distinct endpoints: sample 2n distinct grid cells.
            let cells = (span * den).max(4 * n as i64) as usize;
            let picks = index::sample(&mut grid.rng, cells, 2 * n).into_vec();
            Scene::Intervals(
                picks
                    .chunks(2)
                    .map(|p| {
                        let (a, b) = (p[0].min(p[1]) as i64, p[0].max(p[1]) as i64);
                        Interval::new(rational::ratio(a, den), rational::ratio(b, den))
                    })
                    .collect(),
            )
        }
        Kind::Arcs => {
            let steps = (4 * n as i64).max(16);
            Scene::Arcs(
                (0..n)
                    .map(|_| {
                        let start = grid.rng.gen_range(0..steps);
                        let length = grid.rng.gen_range(1..=steps / 3);
                        Arc::new(
                            rational::ratio(start, steps),
                            rational::ratio((start + length) % steps, steps),
                        )
                    })
                    .collect(),
            )
        }
        Kind::UnitDisks => {
            let r = &cfg.disk_radius;
            let centers = (0..n)
                .map(|_| {
                    let x = grid.coord(0, span);
                    let y = match cfg.disk_mode {
                        DiskMode::Free => grid.coord(0, span),
                        DiskMode::OneSided => r * rational::ratio(grid.rng.gen_range(0..=den), den),
                        DiskMode::TwoSided => {
                            r * rational::ratio(grid.rng.gen_range(-den..=den), den)
                        }
                    };
                    Point::new(x, y)
                })
                .collect();
            Scene::UnitDisks(DiskScene::new(r.clone(), centers))
        }
        Kind::UnitSquares => Scene::UnitSquares(
            (0..n)
                .map(|_| {
                    let (x, y) = (grid.coord(0, span), grid.coord(0, span));
                    Rect::new(
                        x.clone(),
                        x + rational::int(1),
                        y.clone(),
                        y + rational::int(1),
                    )
                })
                .collect(),
        ),
        Kind::UnitHeightRects => Scene::UnitHeightRects(
            (0..n)
                .map(|_| {
                    let (x, y) = (grid.coord(0, span), grid.coord(0, span));
                    let w = rational::ratio(grid.rng.gen_range(1..=2 * den), den);
                    Rect::new(x.clone(), x + w, y.clone(), y + rational::int(1))
                })
                .collect(),
        ),
        Kind::Rects => Scene::Rects(
            (0..n)
                .map(|_| {
                    let (x, y) = (grid.coord(0, span), grid.coord(0, span));
                    let w = rational::ratio(grid.rng.gen_range(1..=2 * den), den);
                    let h = rational::ratio(grid.rng.gen_range(1..=2 * den), den);
                    Rect::new(x.clone(), x + w, y.clone(), y + h)
                })
                .collect(),
        ),
    };
    let weights = cfg.weighted.then(|| {
        (0..n)
            .map(|_| rational::int(grid.rng.gen_range(1..=5)))
            .collect()
    });
    Ok(Instance { scene, weights })
}
