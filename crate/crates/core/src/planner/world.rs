//! Cylindrical-obstacle cities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{Disc, Point};
use crate::aero::Atmosphere;
use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CylinderObstacle {
    pub center: Point,
    /// m
    pub radius: f64,
    /// Top of the restricted volume above ground, m.
    pub height: f64,
    /// Clearance added around the radius, m.
    pub buffer: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Extent {
    /// x span, m
    pub width: f64,
    /// y span, m
    pub depth: f64,
}

impl Extent {
    pub fn contains(&self, p: &Point) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.depth).contains(&p.y)
    }

    pub fn diagonal(&self) -> f64 {
        self.width.hypot(self.depth)
    }

    pub fn clamp(&self, p: Point) -> Point {
        Point::new(p.x.clamp(0.0, self.width), p.y.clamp(0.0, self.depth))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct World {
    pub extent: Extent,
    pub obstacles: Vec<CylinderObstacle>,
    /// m
    pub cruise_altitude: f64,
    pub atmosphere: Atmosphere,
}

impl World {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("extent.width", self.extent.width)?;
        ensure_positive("extent.depth", self.extent.depth)?;
        ensure_non_negative("cruise_altitude", self.cruise_altitude)?;
        self.atmosphere.validate()?;
        for o in &self.obstacles {
            ensure_positive("obstacle.radius", o.radius)?;
            ensure_positive("obstacle.height", o.height)?;
            ensure_non_negative("obstacle.buffer", o.buffer)?;
            if !self.extent.contains(&o.center) {
                return Err(Error::Precondition(format!(
                    "obstacle center ({}, {}) outside the world extent",
                    o.center.x, o.center.y
                )));
            }
        }
        Ok(())
    }
}

/// Cylinders at least as tall as the cruise altitude, as buffered discs.
pub fn active_obstacles(world: &World) -> Vec<Disc> {
    world
        .obstacles
        .iter()
        .filter(|o| o.height >= world.cruise_altitude)
        .map(|o| Disc {
            center: o.center,
            radius: o.radius + o.buffer,
        })
        .collect()
}

/// Parameters of a uniformly random city.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CityParams {
    pub n_buildings: usize,
    pub extent: Extent,
    /// m
    pub radius_range: (f64, f64),
    /// Total obstacle height including any restricted airspace above the
    /// building, m.
    pub height_range: (f64, f64),
    /// Buffered cylinders may not come closer than this to a keep-clear
    /// point, m.
    pub restricted_margin: f64,
    pub buffer: f64,
    /// Typically the start and goal of the flight.
    pub keep_clear: Vec<Point>,
    pub cruise_altitude: f64,
    pub atmosphere: Atmosphere,
}

impl CityParams {
    /// 500 cylinders of radius 20–80 m and height 200–400 m over a
    /// 10 km × 5 km area, flown at 300 m where the density is 1.2 kg/m³.
    pub fn urban_default() -> Self {
        Self {
            n_buildings: 500,
            extent: Extent {
                width: 10_000.0,
                depth: 5_000.0,
            },
            radius_range: (20.0, 80.0),
            height_range: (200.0, 400.0),
            restricted_margin: 100.0,
            buffer: 10.0,
            keep_clear: vec![Point::new(200.0, 4800.0), Point::new(9800.0, 100.0)],
            cruise_altitude: 300.0,
            atmosphere: Atmosphere {
                density: 1.2,
                altitude: 300.0,
            },
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("radius_range", self.radius_range), ("height_range", self.height_range)] {
            ensure_positive(name, lo)?;
            if !(hi >= lo) || !hi.is_finite() {
                return Err(Error::Domain {
                    name,
                    value: hi,
                    reason: "upper bound must be finite and not below the lower bound",
                });
            }
        }
        ensure_positive("extent.width", self.extent.width)?;
        ensure_positive("extent.depth", self.extent.depth)?;
        ensure_non_negative("restricted_margin", self.restricted_margin)?;
        ensure_non_negative("buffer", self.buffer)?;
        Ok(())
    }
}

const MAX_DRAWS_PER_BUILDING: usize = 10_000;

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..hi)
    } else {
        lo
    }
}

/// Deterministic city for a given seed.
pub fn generate_city(params: &CityParams, seed: u64) -> Result<World> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut obstacles = Vec::with_capacity(params.n_buildings);
    for _ in 0..params.n_buildings {
        let mut placed = None;
        for _ in 0..MAX_DRAWS_PER_BUILDING {
            let center = Point::new(
                rng.random_range(0.0..params.extent.width),
                rng.random_range(0.0..params.extent.depth),
            );
            let radius = uniform(&mut rng, params.radius_range);
            let height = uniform(&mut rng, params.height_range);
            let reach = radius + params.buffer + params.restricted_margin;
            if params.keep_clear.iter().all(|p| p.distance(&center) >= reach) {
                placed = Some(CylinderObstacle {
                    center,
                    radius,
                    height,
                    buffer: params.buffer,
                });
                break;
            }
        }
        obstacles.push(
            placed.ok_or_else(|| Error::Precondition("keep-clear zones leave no room for obstacles".to_string()))?,
        );
    }
    Ok(World {
        extent: params.extent,
        obstacles,
        cruise_altitude: params.cruise_altitude,
        atmosphere: params.atmosphere,
    })
}
