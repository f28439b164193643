//! Scenario files, runners and report formats behind the `hedoc` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{recost_as_jet, run_airspeed, run_citygen, run_cruise, run_plan, AirspeedRun, CruiseRun, PlanRun};
pub use config::{load_config, Mission, Overrides, Scenario, ScenarioConfig};
pub use error::CliError;
