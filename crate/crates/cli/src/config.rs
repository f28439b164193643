//! Scenario files.
//!
//! A scenario is one JSON document. Unknown keys are rejected everywhere and
//! every value is checked at load time, so a config that loads will run.

use std::fs;
use std::path::{Path, PathBuf};

use hedoc_core::aero::cd2_from_lift_to_drag;
use hedoc_core::optimizer::Boundary;
use hedoc_core::planner::{CityParams, Extent, PlannerConfig, Point};
use hedoc_core::{Airframe, Atmosphere, CostInputs, CostModel, CruiseParams, Powertrain, TimeCostConvention, TsfcMode};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

const PRESETS: &[(&str, &str)] = &[
    ("efanx_intl", include_str!("../presets/efanx_intl.json")),
    ("e430_city", include_str!("../presets/e430_city.json")),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(name, _)| *name)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AircraftConfig {
    /// m²
    pub wing_area: f64,
    pub c_d0: f64,
    /// Give either `c_d2` or `lift_to_drag`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_d2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_to_drag: Option<f64>,
    /// kg
    pub empty_mass: f64,
    /// kg
    pub max_takeoff_mass: f64,
    pub beta: f64,
    pub eta: f64,
    /// V
    pub supply_voltage: f64,
    /// kg/(N·s)
    pub tsfc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostConfig {
    /// currency/s
    pub time_cost: f64,
    /// currency/kWh
    pub electricity_cost: f64,
    /// currency/kWh
    pub fuel_cost: f64,
    /// kWh/kg
    pub heating_value: f64,
    /// m/s²
    #[serde(default = "default_gravity")]
    pub gravity: f64,
    /// kWh/J; defaults to 1/3.6e6.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_i: Option<f64>,
    /// kWh/N; defaults to heating_value/gravity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_f: Option<f64>,
}

fn default_gravity() -> f64 {
    9.8
}

fn default_step() -> f64 {
    1.0
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

/// Either a range (`rf`, cruise mode) or a start/goal pair (plan mode).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryConfig {
    /// N
    pub initial_weight: f64,
    /// C
    pub initial_charge: f64,
    /// m
    #[serde(default)]
    pub r0: f64,
    /// m
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rf: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<Point>,
}

/// Random city; `keep_clear` defaults to the start and goal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CityConfig {
    pub seed: u64,
    pub n_buildings: usize,
    pub extent: Extent,
    pub radius_range: (f64, f64),
    pub height_range: (f64, f64),
    pub restricted_margin: f64,
    pub buffer: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub keep_clear: Option<Vec<Point>>,
}

impl Default for CityConfig {
    fn default() -> Self {
        let d = CityParams::urban_default();
        Self {
            seed: 0,
            n_buildings: d.n_buildings,
            extent: d.extent,
            radius_range: d.radius_range,
            height_range: d.height_range,
            restricted_margin: d.restricted_margin,
            buffer: d.buffer,
            keep_clear: None,
        }
    }
}

/// Fuel-only aircraft used to re-cost a planned path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetCounterfactual {
    /// kg/(N·s)
    pub tsfc: f64,
    /// currency/kWh
    pub fuel_cost: f64,
    /// kWh/kg
    pub heating_value: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_schema")]
    pub schema: u32,
    #[serde(default)]
    pub name: String,
    pub aircraft: AircraftConfig,
    pub costs: CostConfig,
    pub atmosphere: Atmosphere,
    pub boundary: BoundaryConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planner: Option<PlannerConfig>,
    /// Generated world; ignored when `world_file` is set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub city: Option<CityConfig>,
    /// World JSON written by `citygen` or `plan`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub world_file: Option<PathBuf>,
    #[serde(default)]
    pub tsfc_mode: TsfcMode,
    #[serde(default)]
    pub time_convention: TimeCostConvention,
    /// s
    #[serde(default = "default_step")]
    pub integrator_step: f64,
    /// Absolute tolerance on the terminal costate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shooting_tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jet_counterfactual: Option<JetCounterfactual>,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Command-line overrides applied on top of a loaded file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub beta: Option<f64>,
    pub ct: Option<f64>,
    pub sfc: Option<f64>,
    pub tsfc_mode: Option<TsfcMode>,
    pub samples: Option<usize>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mission {
    Cruise(Boundary),
    Plan {
        start: Point,
        goal: Point,
        weight: f64,
        charge: f64,
    },
}

/// A validated scenario ready to run.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub params: CruiseParams,
    pub mission: Mission,
    pub step: f64,
    pub tolerance: Option<f64>,
    pub planner: Option<PlannerConfig>,
    pub city: Option<CityParams>,
    pub city_seed: u64,
    pub world_file: Option<PathBuf>,
    pub jet: Option<JetCounterfactual>,
    pub out_dir: Option<PathBuf>,
    /// The file as loaded, overrides applied.
    pub config: ScenarioConfig,
}

impl Scenario {
    pub fn initial_weight(&self) -> f64 {
        match self.mission {
            Mission::Cruise(b) => b.w0,
            Mission::Plan { weight, .. } => weight,
        }
    }
}

fn field(path: &str, e: hedoc_core::Error) -> CliError {
    let path = match &e {
        hedoc_core::Error::Domain { name, .. } => format!("{path}.{name}"),
        _ => path.to_string(),
    };
    CliError::Config(format!("{path}: {e}"))
}

fn invalid(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{path}: {msg}"))
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("parse error: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn preset(name: &str) -> Result<Self, CliError> {
        let (_, text) = PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| {
            CliError::Config(format!(
                "unknown preset '{name}' (available: {})",
                preset_names().collect::<Vec<_>>().join(", ")
            ))
        })?;
        Self::from_json(text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(beta) = o.beta {
            self.aircraft.beta = beta;
        }
        if let Some(ct) = o.ct {
            self.costs.time_cost = ct;
        }
        if let Some(sfc) = o.sfc {
            self.aircraft.tsfc = sfc;
        }
        if let Some(mode) = o.tsfc_mode {
            self.tsfc_mode = mode;
        }
        if let Some(seed) = o.seed {
            if let Some(p) = self.planner.as_mut() {
                p.rng_seed = seed;
            }
            if let Some(c) = self.city.as_mut() {
                c.seed = seed;
            }
        }
        if let Some(n) = o.samples {
            self.planner.get_or_insert_with(PlannerConfig::default).n_samples = n;
        }
        if let Some(out) = &o.out {
            self.output.dir = Some(out.clone());
        }
    }

    pub fn cruise_params(&self) -> Result<CruiseParams, CliError> {
        let a = &self.aircraft;
        let g = self.costs.gravity;
        let c_d2 = match (a.c_d2, a.lift_to_drag) {
            (Some(c), None) => c,
            (None, Some(ld)) => cd2_from_lift_to_drag(ld, a.c_d0).map_err(|e| field("aircraft", e))?,
            _ => return Err(invalid("aircraft", "give exactly one of c_d2 and lift_to_drag")),
        };
        let airframe = Airframe::new(a.wing_area, a.c_d0, c_d2, a.empty_mass * g, a.max_takeoff_mass * g)
            .map_err(|e| field("aircraft", e))?;
        let powertrain = Powertrain {
            beta: a.beta,
            eta: a.eta,
            supply_voltage: a.supply_voltage,
            tsfc: a.tsfc,
            tsfc_mode: self.tsfc_mode,
        };
        powertrain.validate().map_err(|e| field("aircraft", e))?;
        self.atmosphere.validate().map_err(|e| field("atmosphere", e))?;
        let c = &self.costs;
        let inputs = CostInputs {
            time_cost: c.time_cost,
            electricity_cost: c.electricity_cost,
            fuel_cost: c.fuel_cost,
            heating_value: c.heating_value,
            gravity: g,
        };
        let mut costs = CostModel::new(inputs, c.kappa_i).map_err(|e| field("costs", e))?;
        if let Some(kf) = c.kappa_f {
            if !(kf.is_finite() && kf > 0.0) {
                return Err(invalid("costs.kappa_f", format!("{kf} must be finite and > 0")));
            }
            costs.factors.kappa_f = kf;
        }
        let params =
            CruiseParams::new(airframe, powertrain, self.atmosphere, costs).map_err(|e| field("aircraft", e))?;
        Ok(params.with_time_convention(self.time_convention))
    }

    fn mission(&self, params: &CruiseParams) -> Result<Mission, CliError> {
        let b = &self.boundary;
        let w_max = params.airframe.max_takeoff_weight;
        if !(b.initial_weight.is_finite() && b.initial_weight > 0.0) {
            return Err(invalid(
                "boundary.initial_weight",
                format!("{} must be finite and > 0", b.initial_weight),
            ));
        }
        if b.initial_weight > w_max {
            return Err(invalid(
                "boundary.initial_weight",
                format!("{} N exceeds the maximum take-off weight {w_max} N", b.initial_weight),
            ));
        }
        if b.initial_weight < params.airframe.empty_weight {
            return Err(invalid(
                "boundary.initial_weight",
                format!(
                    "{} N is below the empty weight {} N",
                    b.initial_weight, params.airframe.empty_weight
                ),
            ));
        }
        if !(b.initial_charge.is_finite() && b.initial_charge >= 0.0) {
            return Err(invalid(
                "boundary.initial_charge",
                format!("{} must be finite and >= 0", b.initial_charge),
            ));
        }
        match (b.rf, b.start, b.goal) {
            (Some(rf), None, None) => {
                if !(b.r0.is_finite() && rf.is_finite() && rf >= b.r0) {
                    return Err(invalid(
                        "boundary.rf",
                        format!("{rf} must be finite and >= r0 = {}", b.r0),
                    ));
                }
                Ok(Mission::Cruise(Boundary {
                    r0: b.r0,
                    rf,
                    w0: b.initial_weight,
                    q0: b.initial_charge,
                }))
            }
            (None, Some(start), Some(goal)) => Ok(Mission::Plan {
                start,
                goal,
                weight: b.initial_weight,
                charge: b.initial_charge,
            }),
            _ => Err(invalid(
                "boundary",
                "give either rf (cruise) or both start and goal (plan), not both",
            )),
        }
    }

    /// Validates everything and builds the runnable scenario.
    pub fn resolve(self) -> Result<Scenario, CliError> {
        if self.schema != SCHEMA_VERSION {
            return Err(invalid(
                "schema",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema),
            ));
        }
        let params = self.cruise_params()?;
        let mission = self.mission(&params)?;
        if !(self.integrator_step.is_finite() && self.integrator_step > 0.0) {
            return Err(invalid(
                "integrator_step",
                format!("{} must be finite and > 0", self.integrator_step),
            ));
        }
        if let Some(t) = self.shooting_tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(invalid("shooting_tolerance", format!("{t} must be finite and > 0")));
            }
        }
        if let Some(p) = &self.planner {
            p.validate().map_err(|e| field("planner", e))?;
        }
        if let Some(j) = &self.jet_counterfactual {
            for (name, v) in [
                ("tsfc", j.tsfc),
                ("fuel_cost", j.fuel_cost),
                ("heating_value", j.heating_value),
            ] {
                if !(v.is_finite() && v > 0.0) {
                    return Err(invalid(
                        &format!("jet_counterfactual.{name}"),
                        format!("{v} must be finite and > 0"),
                    ));
                }
            }
        }
        let city = self.city.as_ref().map(|c| {
            let keep_clear = c.keep_clear.clone().unwrap_or_else(|| match mission {
                Mission::Plan { start, goal, .. } => vec![start, goal],
                Mission::Cruise(_) => Vec::new(),
            });
            CityParams {
                n_buildings: c.n_buildings,
                extent: c.extent,
                radius_range: c.radius_range,
                height_range: c.height_range,
                restricted_margin: c.restricted_margin,
                buffer: c.buffer,
                keep_clear,
                cruise_altitude: self.atmosphere.altitude,
                atmosphere: self.atmosphere,
            }
        });
        if let Some(c) = &city {
            // zero buildings is a valid city; check the ranges with one
            hedoc_core::planner::generate_city(
                &CityParams {
                    n_buildings: 0,
                    ..c.clone()
                },
                0,
            )
            .map_err(|e| field("city", e))?;
        }
        Ok(Scenario {
            name: self.name.clone(),
            params,
            mission,
            step: self.integrator_step,
            tolerance: self.shooting_tolerance,
            planner: self.planner,
            city_seed: self.city.as_ref().map_or(0, |c| c.seed),
            city,
            world_file: self.world_file.clone(),
            jet: self.jet_counterfactual,
            out_dir: self.output.dir.clone(),
            config: self,
        })
    }
}

/// Loads `path`, or the named preset when `path` is `preset:<name>`.
pub fn load_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    match path.to_str().and_then(|s| s.strip_prefix("preset:")) {
        Some(name) => ScenarioConfig::preset(name),
        None => ScenarioConfig::load(path),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_resolve() {
        for name in preset_names() {
            ScenarioConfig::preset(name).unwrap().resolve().unwrap();
        }
    }

    #[test]
    fn efanx_matches_tables() {
        let s = ScenarioConfig::preset("efanx_intl").unwrap().resolve().unwrap();
        let p = &s.params;
        assert_eq!(p.airframe.wing_area, 77.3);
        assert_eq!(p.airframe.c_d0, 0.028);
        assert_eq!(p.airframe.c_d2, 0.026);
        assert_eq!(p.airframe.empty_weight, 25_645.0 * 9.8);
        assert_eq!(p.powertrain.tsfc, 2.55e-5);
        assert_eq!(p.powertrain.beta, 0.25);
        assert_eq!(p.powertrain.eta, 0.9);
        assert_eq!(p.atmosphere.density, 0.4135);
        assert_eq!(p.costs.inputs.time_cost, 0.5);
        assert_eq!(p.costs.inputs.fuel_cost, 0.115);
        assert_eq!(
            s.mission,
            Mission::Cruise(Boundary {
                r0: 0.0,
                rf: 450_000.0,
                w0: 430_000.0,
                q0: 1_516_000.0
            })
        );
    }

    #[test]
    fn e430_matches_tables() {
        let s = ScenarioConfig::preset("e430_city").unwrap().resolve().unwrap();
        let p = &s.params;
        assert_eq!(p.airframe.wing_area, 11.37);
        assert_eq!(p.airframe.c_d2, 0.009);
        assert_eq!(p.powertrain.beta, 1.0);
        assert_eq!(p.powertrain.supply_voltage, 133.2);
        assert_eq!(p.costs.inputs.time_cost, 0.0005);
        assert_eq!(p.atmosphere.density, 1.2);
        assert!(matches!(
            s.mission,
            Mission::Plan {
                weight: 4600.0,
                charge: 360_000.0,
                ..
            }
        ));
        let city = s.city.unwrap();
        assert_eq!(city.n_buildings, 500);
        assert_eq!(city.radius_range, (20.0, 80.0));
        assert_eq!(city.height_range, (200.0, 400.0));
        assert_eq!(city.extent.width, 10_000.0);
        assert_eq!(city.extent.depth, 5_000.0);
    }

    #[test]
    fn bad_beta_names_the_field() {
        let mut c = ScenarioConfig::preset("e430_city").unwrap();
        c.aircraft.beta = 1.5;
        let err = c.resolve().unwrap_err().to_string();
        assert!(err.contains("aircraft.beta"), "{err}");
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = include_str!("../presets/e430_city.json").replacen("\"costs\"", "\"colour\": 1, \"costs\"", 1);
        let err = ScenarioConfig::from_json(&text).unwrap_err().to_string();
        assert!(err.contains("colour"), "{err}");
        let text = include_str!("../presets/e430_city.json").replacen("\"c_d0\"", "\"c_dO\": 1, \"c_d0\"", 1);
        assert!(ScenarioConfig::from_json(&text).is_err());
    }

    #[test]
    fn parse_error_reports_line() {
        let err = ScenarioConfig::from_json("{\n\"schema\": 1,\n oops }")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn boundary_must_pick_one_mode() {
        let mut c = ScenarioConfig::preset("e430_city").unwrap();
        c.boundary.rf = Some(1000.0);
        assert!(c.resolve().unwrap_err().to_string().starts_with("boundary"));
        let mut c = ScenarioConfig::preset("e430_city").unwrap();
        c.boundary.goal = None;
        assert!(c.resolve().is_err());
    }

    #[test]
    fn drag_from_lift_to_drag() {
        let mut c = ScenarioConfig::preset("e430_city").unwrap();
        c.aircraft.c_d2 = None;
        c.aircraft.lift_to_drag = Some(28.0);
        let s = c.clone().resolve().unwrap();
        assert!((s.params.airframe.c_d2 - 0.009_110_787).abs() < 1e-8);
        c.aircraft.c_d2 = Some(0.009);
        assert!(c.resolve().is_err());
    }

    #[test]
    fn overrides_apply() {
        let mut c = ScenarioConfig::preset("e430_city").unwrap();
        c.apply(&Overrides {
            seed: Some(9),
            samples: Some(17),
            ct: Some(0.001),
            ..Default::default()
        });
        let s = c.resolve().unwrap();
        assert_eq!(s.planner.unwrap().rng_seed, 9);
        assert_eq!(s.planner.unwrap().n_samples, 17);
        assert_eq!(s.city_seed, 9);
        assert_eq!(s.params.costs.inputs.time_cost, 0.001);
    }
}
