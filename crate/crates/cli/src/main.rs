use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hedoc_cli::commands::WeightSweep;
use hedoc_cli::{load_config, run_airspeed, run_citygen, run_cruise, run_plan, CliError, Overrides, Scenario};
use hedoc_core::TsfcMode;

/// Minimum direct-operating-cost cruise and route planning.
///
/// `--config` takes a JSON scenario file, or `preset:efanx_intl` /
/// `preset:e430_city` for the shipped scenarios.
#[derive(Parser)]
#[command(name = "hedoc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal airspeed at a single state.
    Airspeed {
        #[command(flatten)]
        common: Common,
        /// Weight in N; defaults to the initial weight.
        #[arg(long)]
        weight: Option<f64>,
        /// Weight costate J_W in kWh/N.
        #[arg(long)]
        costate: Option<f64>,
        /// Weight sweep `lo:hi:n`, written to airspeed_sweep.csv.
        #[arg(long)]
        sweep: Option<WeightSweep>,
    },
    /// Optimal cruise over a fixed range.
    Cruise {
        #[command(flatten)]
        common: Common,
    },
    /// Minimum-DOC path through a city.
    Plan {
        #[command(flatten)]
        common: Common,
        /// Also fly the path as the fuel-only counterfactual.
        #[arg(long)]
        recost_fuel: bool,
    },
    /// Generate a random city and write world.json.
    Citygen {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    MassBased,
    WeightBased,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "preset:e430_city")]
    config: PathBuf,
    /// Seed for both city generation and the planner.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Hybridization factor.
    #[arg(long)]
    beta: Option<f64>,
    /// Time cost, currency/s.
    #[arg(long)]
    ct: Option<f64>,
    /// TSFC in kg/(N·s); with --recost-fuel it sets the counterfactual's.
    #[arg(long)]
    sfc: Option<f64>,
    #[arg(long, value_enum)]
    tsfc_mode: Option<ModeArg>,
    /// Planner samples.
    #[arg(long)]
    samples: Option<usize>,
}

impl Common {
    fn scenario(&self, jet_sfc: bool) -> Result<Scenario, CliError> {
        let mut cfg = load_config(&self.config)?;
        let mut o = Overrides {
            seed: self.seed,
            beta: self.beta,
            ct: self.ct,
            sfc: self.sfc,
            tsfc_mode: self.tsfc_mode.map(|m| match m {
                ModeArg::MassBased => TsfcMode::MassBased,
                ModeArg::WeightBased => TsfcMode::WeightBased,
            }),
            samples: self.samples,
            out: self.out.clone(),
        };
        if jet_sfc {
            if let (Some(sfc), Some(j)) = (o.sfc.take(), cfg.jet_counterfactual.as_mut()) {
                j.tsfc = sfc;
            }
        }
        cfg.apply(&o);
        cfg.resolve()
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Airspeed {
            common,
            weight,
            costate,
            sweep,
        } => {
            let scn = common.scenario(false)?;
            let r = run_airspeed(&scn, weight, costate, sweep)?;
            Ok(serde_json::to_string_pretty(&r.report)?)
        }
        Command::Cruise { common } => {
            let scn = common.scenario(false)?;
            let r = run_cruise(&scn)?;
            Ok(serde_json::to_string_pretty(&r.summary)?)
        }
        Command::Plan { common, recost_fuel } => {
            let scn = common.scenario(recost_fuel)?;
            let r = run_plan(&scn, recost_fuel)?;
            let d = &r.document;
            let mut text = format!(
                "path: {} waypoints, {:.1} m (straight line {:.1} m), DOC {:.4}, {:.1} s, {:.3} Ah",
                d.waypoints.len(),
                d.total_length_m,
                d.straight_line_m,
                d.total_doc,
                d.cruise.duration_s,
                d.cruise.charge_ah
            );
            if let Some(j) = &d.jet_counterfactual {
                text.push_str(&format!(
                    "\nfuel-only counterfactual: DOC {:.4} ({:.2}x), {:.3} kg fuel",
                    j.totals.doc, j.doc_ratio, j.totals.fuel_kg
                ));
            }
            Ok(text)
        }
        Command::Citygen { common } => {
            let scn = common.scenario(false)?;
            let w = run_citygen(&scn)?;
            let active = hedoc_core::planner::active_obstacles(&w).len();
            Ok(format!(
                "world: {} obstacles, {active} above {} m",
                w.obstacles.len(),
                w.cruise_altitude
            ))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
