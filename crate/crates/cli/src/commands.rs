//! One runner per subcommand. Each returns its results and, when the
//! scenario has an output directory, writes its files there.

use std::fs;
use std::path::{Path, PathBuf};

use hedoc_core::optimizer::{electric_quartic_root, shoot, Boundary, ShootOptions, ShootResult};
use hedoc_core::planner::{generate_city, plan, ArrivalState, CityParams, PlanOutcome, World};
use hedoc_core::units::mps_to_kmh;
use hedoc_core::{CostInputs, CostModel, CruiseParams};

use crate::config::{JetCounterfactual, Mission, Scenario, SCHEMA_VERSION};
use crate::error::CliError;
use crate::output::{
    write_json, write_profile_csv, write_sweep_csv, AirspeedReport, CruiseSummary, CruiseTotals, JetReport,
    PathDocument, ShootingReport, WorldDocument,
};

fn out_dir(scn: &Scenario) -> Result<Option<PathBuf>, CliError> {
    match &scn.out_dir {
        Some(d) => {
            fs::create_dir_all(d).map_err(|e| CliError::Io(format!("{}: {e}", d.display())))?;
            Ok(Some(d.clone()))
        }
        None => Ok(None),
    }
}

fn shoot_options(scn: &Scenario) -> ShootOptions {
    ShootOptions {
        step: scn.step,
        tolerance: scn.tolerance,
        ..ShootOptions::default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AirspeedRun {
    pub report: AirspeedReport,
    /// `[W, v, v_kmh, doc_rate, doc_per_km]`
    pub sweep: Vec<[f64; 5]>,
}

/// Weights `lo..=hi` in `n` even steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSweep {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl std::str::FromStr for WeightSweep {
    type Err = String;

    /// `lo:hi:n`
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, n] = parts.as_slice() else {
            return Err(format!("expected lo:hi:n, got '{s}'"));
        };
        let lo: f64 = lo.parse().map_err(|e| format!("lo: {e}"))?;
        let hi: f64 = hi.parse().map_err(|e| format!("hi: {e}"))?;
        let n: usize = n.parse().map_err(|e| format!("n: {e}"))?;
        if !(lo > 0.0 && hi >= lo && n >= 1) {
            return Err(format!("need 0 < lo <= hi and n >= 1, got '{s}'"));
        }
        Ok(Self { lo, hi, n })
    }
}

pub fn run_airspeed(
    scn: &Scenario,
    weight: Option<f64>,
    costate: Option<f64>,
    sweep: Option<WeightSweep>,
) -> Result<AirspeedRun, CliError> {
    let p = &scn.params;
    let weight = weight.unwrap_or(scn.initial_weight());
    let costate = costate.unwrap_or(0.0);
    let sol = p.optimal_airspeed(weight, costate).map_err(CliError::Optimizer)?;
    let v = sol.airspeed;
    let rate = p.doc_rate_at(weight, v);
    let quartic = if p.powertrain.is_electric() {
        Some(electric_quartic_root(weight, p).map_err(CliError::Optimizer)?)
    } else {
        None
    };
    let c = sol.coefficients;
    let report = AirspeedReport {
        schema: SCHEMA_VERSION,
        scenario: scn.name.clone(),
        weight,
        costate,
        jbar: sol.jbar,
        airspeed_mps: v,
        airspeed_kmh: mps_to_kmh(v),
        quartic_airspeed_mps: quartic,
        coefficients: [c.a5, c.a4, c.a3, c.a2, c.a1, c.a0],
        normalized_residual: c.normalized_residual(v),
        doc_rate: rate,
        doc_rate_total: rate.total(),
        doc_per_km: rate.total() / v * 1000.0,
        ambiguous_root: sol.ambiguous,
    };

    let mut rows = Vec::new();
    if let Some(s) = sweep {
        for k in 0..s.n {
            let w = if s.n == 1 {
                s.lo
            } else {
                s.lo + (s.hi - s.lo) * k as f64 / (s.n - 1) as f64
            };
            let v = p.optimal_airspeed(w, costate).map_err(CliError::Optimizer)?.airspeed;
            let r = p.doc_rate_at(w, v).total();
            rows.push([w, v, mps_to_kmh(v), r, r / v * 1000.0]);
        }
    }
    if let Some(dir) = out_dir(scn)? {
        write_json(&dir.join("airspeed.json"), &report)?;
        if sweep.is_some() {
            write_sweep_csv(&dir.join("airspeed_sweep.csv"), &rows)?;
        }
    }
    Ok(AirspeedRun { report, sweep: rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CruiseRun {
    pub result: ShootResult,
    pub summary: CruiseSummary,
}

pub fn run_cruise(scn: &Scenario) -> Result<CruiseRun, CliError> {
    let Mission::Cruise(boundary) = scn.mission else {
        return Err(CliError::Config(
            "boundary: cruise needs a range boundary (rf), not start/goal".to_string(),
        ));
    };
    let result = shoot(&boundary, &scn.params, &shoot_options(scn)).map_err(CliError::Shooting)?;
    let summary = CruiseSummary {
        schema: SCHEMA_VERSION,
        scenario: scn.name.clone(),
        tsfc_mode: scn.params.powertrain.tsfc_mode,
        time_convention: scn.params.time_convention,
        totals: CruiseTotals::from(&result.profile.summary),
        shooting: ShootingReport {
            iterations: result.iterations,
            integrations: result.integrations,
        },
        flags: result.profile.flags,
    };
    if let Some(dir) = out_dir(scn)? {
        write_profile_csv(&dir.join("profile.csv"), &result.profile, None)?;
        write_json(&dir.join("summary.json"), &summary)?;
    }
    Ok(CruiseRun { result, summary })
}

/// The scenario's aircraft turned into a fuel-only one with the
/// counterfactual's consumption and fuel price.
pub fn jet_params(params: &CruiseParams, jet: &JetCounterfactual) -> Result<CruiseParams, CliError> {
    let mut p = *params;
    p.powertrain.beta = 0.0;
    p.powertrain.tsfc = jet.tsfc;
    let inputs = CostInputs {
        fuel_cost: jet.fuel_cost,
        heating_value: jet.heating_value,
        ..params.costs.inputs
    };
    p.costs = CostModel::new(inputs, Some(params.costs.factors.kappa_i))
        .map_err(|e| CliError::Config(format!("jet_counterfactual: {e}")))?;
    Ok(p)
}

/// Optimal fuel-only cruise over `length` metres.
pub fn recost_as_jet(
    params: &CruiseParams,
    jet: &JetCounterfactual,
    length: f64,
    w0: f64,
    options: &ShootOptions,
) -> Result<ShootResult, CliError> {
    let p = jet_params(params, jet)?;
    let boundary = Boundary {
        r0: 0.0,
        rf: length,
        w0,
        q0: 0.0,
    };
    shoot(&boundary, &p, options).map_err(CliError::Shooting)
}

pub fn city_params(scn: &Scenario) -> CityParams {
    scn.city.clone().unwrap_or_else(|| {
        let mut c = CityParams::urban_default();
        c.cruise_altitude = scn.params.atmosphere.altitude;
        c.atmosphere = scn.params.atmosphere;
        if let Mission::Plan { start, goal, .. } = scn.mission {
            c.keep_clear = vec![start, goal];
        }
        c
    })
}

fn scenario_world(scn: &Scenario) -> Result<World, CliError> {
    match &scn.world_file {
        Some(path) => WorldDocument::load(path),
        None => generate_city(&city_params(scn), scn.city_seed).map_err(|e| CliError::Config(format!("city: {e}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanRun {
    pub world: World,
    pub outcome: PlanOutcome,
    pub document: PathDocument,
    pub jet: Option<ShootResult>,
}

/// Plans the scenario; with `recost_fuel` the path is also flown by the
/// jet counterfactual.
pub fn run_plan(scn: &Scenario, recost_fuel: bool) -> Result<PlanRun, CliError> {
    let Mission::Plan {
        start,
        goal,
        weight,
        charge,
    } = scn.mission
    else {
        return Err(CliError::Config(
            "boundary: plan needs start and goal points, not a range".to_string(),
        ));
    };
    let config = scn
        .planner
        .ok_or_else(|| CliError::Config("planner: plan needs a planner section".to_string()))?;
    let world = scenario_world(scn)?;
    let initial = ArrivalState { t: 0.0, weight, charge };
    let outcome = plan(&world, start, goal, &scn.params, initial, &config).map_err(|e| match e {
        hedoc_core::Error::Precondition(_) => CliError::Config(format!("boundary: {e}")),
        hedoc_core::Error::PlanningFailed { .. } => CliError::Planning(e),
        other => CliError::Shooting(other),
    })?;
    let path = &outcome.path;

    let jet = if recost_fuel {
        let j = scn.jet.ok_or_else(|| {
            CliError::Config("jet_counterfactual: --recost-fuel needs a jet_counterfactual section".to_string())
        })?;
        Some((
            j,
            recost_as_jet(&scn.params, &j, path.total_length, weight, &shoot_options(scn))?,
        ))
    } else {
        None
    };

    let document = PathDocument {
        schema: SCHEMA_VERSION,
        scenario: scn.name.clone(),
        rng_seed: config.rng_seed,
        waypoints: path.waypoints.clone(),
        waypoint_distances_m: path.waypoint_distances.clone(),
        edge_doc: path.edge_costs.clone(),
        total_doc: path.total_doc,
        total_length_m: path.total_length,
        straight_line_m: start.distance(&goal),
        cruise: CruiseTotals::from(&path.profile.summary),
        stats: outcome.stats,
        history: outcome.history.clone(),
        jet_counterfactual: jet.as_ref().map(|(j, r)| JetReport {
            tsfc: j.tsfc,
            fuel_cost: j.fuel_cost,
            heating_value: j.heating_value,
            totals: CruiseTotals::from(&r.profile.summary),
            doc_ratio: r.profile.summary.total_doc / path.total_doc,
        }),
    };
    if let Some(dir) = out_dir(scn)? {
        write_json(&dir.join("path.json"), &document)?;
        write_json(&dir.join("world.json"), &WorldDocument::from(&world))?;
        write_profile_csv(&dir.join("profile.csv"), &path.profile, Some(&path.waypoint_distances))?;
        if let Some((_, r)) = &jet {
            write_profile_csv(&dir.join("jet_profile.csv"), &r.profile, Some(&path.waypoint_distances))?;
        }
    }
    Ok(PlanRun {
        world,
        document,
        jet: jet.map(|(_, r)| r),
        outcome,
    })
}

pub fn run_citygen(scn: &Scenario) -> Result<World, CliError> {
    let world = scenario_world(scn)?;
    if let Some(dir) = out_dir(scn)? {
        write_json(&dir.join("world.json"), &WorldDocument::from(&world))?;
    }
    Ok(world)
}

/// Loads a world JSON file written by `citygen` or `plan`.
pub fn load_world(path: &Path) -> Result<World, CliError> {
    WorldDocument::load(path)
}
