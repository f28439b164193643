//! Report documents and file writers.
//!
//! JSON documents carry `schema: 1`. Profile CSVs start with a comment line
//! declaring units, then one header line.

use std::fs;
use std::io::Write;
use std::path::Path;

use hedoc_core::optimizer::{CruiseProfile, ProfileFlags, ProfileSummary};
use hedoc_core::planner::{CylinderObstacle, Extent, PlanStats, Point, World};
use hedoc_core::Atmosphere;
use serde::{Deserialize, Serialize};

use crate::config::SCHEMA_VERSION;
use crate::error::CliError;

pub const PROFILE_UNITS: &str = "# units: t [s], r [m], v [m/s], W [N], Q [C], J_W [kWh/N], doc_rate [currency/s]";
pub const PLAN_PROFILE_UNITS: &str =
    "# units: t [s], r [m], v [m/s], W [N], Q [C], J_W [kWh/N], doc_rate [currency/s], segment [index of the path edge]";
pub const SWEEP_UNITS: &str = "# units: W [N], v [m/s], v_kmh [km/h], doc_rate [currency/s], doc_per_km [currency/km]";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldDocument {
    pub schema: u32,
    pub extent: Extent,
    pub cruise_altitude: f64,
    pub atmosphere: Atmosphere,
    pub obstacles: Vec<CylinderObstacle>,
}

impl From<&World> for WorldDocument {
    fn from(w: &World) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            extent: w.extent,
            cruise_altitude: w.cruise_altitude,
            atmosphere: w.atmosphere,
            obstacles: w.obstacles.clone(),
        }
    }
}

impl WorldDocument {
    pub fn into_world(self) -> Result<World, CliError> {
        if self.schema != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "world schema {} is not {SCHEMA_VERSION}",
                self.schema
            )));
        }
        let world = World {
            extent: self.extent,
            obstacles: self.obstacles,
            cruise_altitude: self.cruise_altitude,
            atmosphere: self.atmosphere,
        };
        world.validate().map_err(|e| CliError::Config(format!("world: {e}")))?;
        Ok(world)
    }

    pub fn load(path: &Path) -> Result<World, CliError> {
        let text =
            fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let doc: WorldDocument = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: parse error: {e}", path.display())))?;
        doc.into_world()
    }
}

/// Cruise totals in reporting units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CruiseTotals {
    pub duration_s: f64,
    pub fuel_kg: f64,
    pub charge_ah: f64,
    pub doc: f64,
    /// currency/h
    pub hourly_doc: f64,
    pub distance_m: f64,
    pub initial_costate: f64,
    pub final_costate: f64,
}

impl From<&ProfileSummary> for CruiseTotals {
    fn from(s: &ProfileSummary) -> Self {
        Self {
            duration_s: s.duration,
            fuel_kg: s.fuel_mass,
            charge_ah: s.charge_spent,
            doc: s.total_doc,
            hourly_doc: s.hourly_doc,
            distance_m: s.final_position,
            initial_costate: s.initial_costate,
            final_costate: s.final_costate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingReport {
    pub iterations: usize,
    pub integrations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CruiseSummary {
    pub schema: u32,
    pub scenario: String,
    pub tsfc_mode: hedoc_core::TsfcMode,
    pub time_convention: hedoc_core::TimeCostConvention,
    pub totals: CruiseTotals,
    pub shooting: ShootingReport,
    pub flags: ProfileFlags,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AirspeedReport {
    pub schema: u32,
    pub scenario: String,
    /// N
    pub weight: f64,
    pub costate: f64,
    pub jbar: f64,
    pub airspeed_mps: f64,
    pub airspeed_kmh: f64,
    /// Closed-form root, all-electric aircraft only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quartic_airspeed_mps: Option<f64>,
    /// `[a5, a4, a3, a2, a1, a0]`
    pub coefficients: [f64; 6],
    pub normalized_residual: f64,
    pub doc_rate: hedoc_core::DocRate,
    /// currency/s
    pub doc_rate_total: f64,
    /// currency/km
    pub doc_per_km: f64,
    pub ambiguous_root: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JetReport {
    pub tsfc: f64,
    pub fuel_cost: f64,
    pub heating_value: f64,
    pub totals: CruiseTotals,
    /// Jet DOC over the DOC of the planned aircraft.
    pub doc_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathDocument {
    pub schema: u32,
    pub scenario: String,
    pub rng_seed: u64,
    pub waypoints: Vec<Point>,
    pub waypoint_distances_m: Vec<f64>,
    /// One entry per edge.
    pub edge_doc: Vec<f64>,
    pub total_doc: f64,
    pub total_length_m: f64,
    pub straight_line_m: f64,
    /// Optimal cruise over the path length.
    pub cruise: CruiseTotals,
    pub stats: PlanStats,
    /// Best goal-reaching DOC after each accepted sample; null until found.
    pub history: Vec<Option<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jet_counterfactual: Option<JetReport>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn open_csv(path: &Path, units: &str) -> Result<csv::Writer<fs::File>, CliError> {
    let mut file = fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    writeln!(file, "{units}")?;
    Ok(csv::Writer::from_writer(file))
}

/// `segments` gives the distance at each waypoint; when present a
/// `segment` column is added.
pub fn write_profile_csv(path: &Path, profile: &CruiseProfile, segments: Option<&[f64]>) -> Result<(), CliError> {
    let units = if segments.is_some() {
        PLAN_PROFILE_UNITS
    } else {
        PROFILE_UNITS
    };
    let mut w = open_csv(path, units)?;
    let mut header = vec!["t", "r", "v", "W", "Q", "J_W", "doc_rate"];
    if segments.is_some() {
        header.push("segment");
    }
    w.write_record(&header)?;
    for s in &profile.samples {
        let st = &s.state;
        let mut row: Vec<String> = [st.t, st.r, s.airspeed, st.weight, st.charge, st.costate, s.doc_rate]
            .iter()
            .map(|x| x.to_string())
            .collect();
        if let Some(d) = segments {
            // index of the edge containing r; the goal belongs to the last edge
            let edges = d.len().saturating_sub(1);
            let k = d
                .partition_point(|&x| x <= st.r)
                .saturating_sub(1)
                .min(edges.saturating_sub(1));
            row.push(k.to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_sweep_csv(path: &Path, rows: &[[f64; 5]]) -> Result<(), CliError> {
    let mut w = open_csv(path, SWEEP_UNITS)?;
    w.write_record(["W", "v", "v_kmh", "doc_rate", "doc_per_km"])?;
    for r in rows {
        w.write_record(r.iter().map(|x| x.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
