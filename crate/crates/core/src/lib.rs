//! Minimum direct-operating-cost (DOC) cruise for hybrid-electric and
//! all-electric fixed-wing aircraft.
//!
//! The crate is organised bottom-up:
//!
//! * [`aero`]: drag polar and atmosphere inputs.
//! * [`costmodel`]: cost coefficients, trade-off coefficients and the
//!   instantaneous DOC rate.
//! * [`powertrain`]: hybridization factor, efficiency and fuel consumption.
//! * [`optimizer`]: the optimality polynomial, its positive real root, the
//!   costate dynamics and the shooting solver for a full cruise.
//! * [`planner`]: RRT* over a city of cylindrical obstacles with DOC edge
//!   costs.
//!
//! All quantities are SI internally (m, s, N, kg/m³, C). Reporting units
//! (km/h, Ah, kg of fuel, USD/h) are produced only by the summary helpers.

// `!(x > 0.0)` style guards are used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aero;
pub mod costmodel;
pub mod error;
pub mod optimizer;
pub mod planner;
pub mod powertrain;
pub mod units;

pub use aero::{Airframe, Atmosphere};
pub use costmodel::{ConversionFactors, CostInputs, CostModel, DocRate, TradeoffCoefficients};
pub use error::{Error, Result};
pub use optimizer::{CruiseParams, CruiseProfile, CruiseState, QuinticCoefficients, TimeCostConvention};
pub use powertrain::{Powertrain, TsfcMode};
