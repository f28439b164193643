//! Minimum-DOC cruise airspeed.
//!
//! At every instant of an optimal cruise the airspeed is the positive real
//! root of a quintic in `v` whose coefficients depend on the current weight
//! `W` and the weight costate `J_W`. The costate obeys its own ODE with
//! terminal condition `J_W(t_f) = 0`, so a full cruise is a two-point
//! boundary-value problem solved here by shooting on `J_W(0)`.

mod dynamics;
mod integrate;
mod polynomial;
mod quartic;
pub mod roots;
mod shooting;

use serde::{Deserialize, Serialize};

use crate::aero::{Airframe, Atmosphere};
use crate::costmodel::{doc_rate_unchecked, CostModel, DocRate, TradeoffCoefficients};
use crate::error::Result;
use crate::powertrain::Powertrain;

pub use dynamics::{costate_rate, state_rates, AirspeedSolution, CruiseState, StateRates};
pub use integrate::{doc_total, integrate_cruise, CruiseProfile, ProfileFlags, ProfileSample, ProfileSummary};
pub use polynomial::{quintic_coefficients, QuinticCoefficients};
pub use quartic::{electric_quartic_root, solve_depressed_quartic};
pub use roots::{positive_real_root, positive_real_root_scaled, positive_real_roots};
pub use shooting::{shoot, terminal_costate, Boundary, ShootOptions, ShootResult};

/// Weighting of the time-related cost inside the optimality polynomial.
///
/// Dividing the DOC integrand by `C_μ` leaves a time term of `C_I/2`; the
/// scaled objective usually quoted alongside the quintic carries `C_I`
/// instead, i.e. it charges time twice as heavily as the DOC does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeCostConvention {
    /// Time term `C_I/2`: the polynomial minimizes the DOC itself.
    #[default]
    DirectOperatingCost,
    /// Time term `C_I`, as in the scaled objective.
    Scaled,
}

impl TimeCostConvention {
    pub fn factor(self) -> f64 {
        match self {
            Self::DirectOperatingCost => 0.5,
            Self::Scaled => 1.0,
        }
    }
}

/// Everything the optimizer needs besides the evolving state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CruiseParams {
    pub airframe: Airframe,
    pub powertrain: Powertrain,
    pub atmosphere: Atmosphere,
    pub costs: CostModel,
    #[serde(default)]
    pub time_convention: TimeCostConvention,
}

impl CruiseParams {
    pub fn new(airframe: Airframe, powertrain: Powertrain, atmosphere: Atmosphere, costs: CostModel) -> Result<Self> {
        airframe.validate()?;
        powertrain.validate()?;
        atmosphere.validate()?;
        costs.inputs.validate()?;
        Ok(Self {
            airframe,
            powertrain,
            atmosphere,
            costs,
            time_convention: TimeCostConvention::default(),
        })
    }

    pub fn with_time_convention(mut self, convention: TimeCostConvention) -> Self {
        self.time_convention = convention;
        self
    }

    pub fn tradeoffs(&self) -> &TradeoffCoefficients {
        &self.costs.tradeoffs
    }

    pub fn density(&self) -> f64 {
        self.atmosphere.density
    }

    pub fn gravity(&self) -> f64 {
        self.costs.inputs.gravity
    }

    /// Time coefficient entering the polynomial, `C_I` scaled per convention.
    pub fn time_coefficient(&self) -> f64 {
        self.time_convention.factor() * self.costs.tradeoffs.c_i
    }

    /// `J̄_W` at the given costate.
    pub fn jbar(&self, costate: f64) -> f64 {
        jbar(costate, &self.costs.tradeoffs, self.costs.factors.kappa_f)
    }

    /// Natural magnitude of the weight costate, `(1−C_E)·κ_f`, falling back
    /// to `κ_f` when fuel is free.
    pub fn costate_scale(&self) -> f64 {
        let k = (1.0 - self.costs.tradeoffs.c_e) * self.costs.factors.kappa_f;
        if k > 0.0 {
            k
        } else {
            self.costs.factors.kappa_f
        }
    }

    pub fn drag(&self, weight: f64, airspeed: f64) -> f64 {
        self.airframe.drag_unchecked(self.density(), weight, airspeed)
    }

    pub fn min_drag_speed(&self, weight: f64) -> f64 {
        self.airframe.min_drag_speed_unchecked(self.density(), weight)
    }

    /// DOC rate at an arbitrary (not necessarily optimal) airspeed.
    pub fn doc_rate_at(&self, weight: f64, airspeed: f64) -> DocRate {
        let drag = self.drag(weight, airspeed);
        doc_rate_unchecked(airspeed, drag, &self.powertrain, &self.costs)
    }

    pub fn quintic(&self, weight: f64, costate: f64) -> Result<QuinticCoefficients> {
        quintic_coefficients(weight, self.jbar(costate), self)
    }
}

/// Shifted costate `J̄_W = (1−C_E)·κ_f − J_W`.
pub fn jbar(costate: f64, tradeoffs: &TradeoffCoefficients, kappa_f: f64) -> f64 {
    (1.0 - tradeoffs.c_e) * kappa_f - costate
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::costmodel::CostInputs;
    use crate::powertrain::TsfcMode;

    pub const G: f64 = 9.8;

    pub fn efan_x() -> CruiseParams {
        CruiseParams::new(
            Airframe::new(77.3, 0.028, 0.026, 25_645.0 * G, 44_225.0 * G).unwrap(),
            Powertrain {
                beta: 0.25,
                eta: 0.9,
                supply_voltage: 3000.0,
                tsfc: 2.55e-5,
                tsfc_mode: TsfcMode::MassBased,
            },
            Atmosphere::new(0.4135, 10_000.0).unwrap(),
            CostModel::new(
                CostInputs {
                    time_cost: 0.5,
                    electricity_cost: 0.06,
                    fuel_cost: 0.115,
                    heating_value: 11.94,
                    gravity: G,
                },
                None,
            )
            .unwrap(),
        )
        .unwrap()
    }

    pub fn e430() -> CruiseParams {
        CruiseParams::new(
            Airframe::new(11.37, 0.035, 0.009, 302.0 * G, 472.0 * G).unwrap(),
            Powertrain {
                beta: 1.0,
                eta: 0.7,
                supply_voltage: 133.2,
                tsfc: 0.0,
                tsfc_mode: TsfcMode::MassBased,
            },
            Atmosphere::new(1.2, 300.0).unwrap(),
            CostModel::new(
                CostInputs {
                    time_cost: 0.0005,
                    electricity_cost: 0.06,
                    fuel_cost: 0.0,
                    heating_value: 11.94,
                    gravity: G,
                },
                None,
            )
            .unwrap(),
        )
        .unwrap()
    }
}
