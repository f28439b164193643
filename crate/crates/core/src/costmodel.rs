//! Direct operating cost coefficients and the instantaneous DOC rate.
//!
//! The DOC of a cruise is the time integral of
//! `C_t + C_i·κ_i·U·i + C_f·κ_f·f`, with battery current `i` and fuel weight
//! flow `f`. Costs are in an opaque currency; the shipped scenarios use USD.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::powertrain::Powertrain;
use crate::units::JOULES_PER_KWH;

/// Default electricity conversion factor, kWh per J.
pub const KWH_PER_JOULE: f64 = 1.0 / JOULES_PER_KWH;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostInputs {
    /// Time-related cost, currency/s.
    pub time_cost: f64,
    /// Electricity cost, currency/kWh.
    pub electricity_cost: f64,
    /// Fuel cost, currency/kWh.
    pub fuel_cost: f64,
    /// Fuel heating value, kWh/kg.
    pub heating_value: f64,
    /// Gravitational acceleration, m/s².
    pub gravity: f64,
}

impl CostInputs {
    pub fn validate(&self) -> Result<()> {
        ensure_non_negative("time_cost", self.time_cost)?;
        ensure_non_negative("electricity_cost", self.electricity_cost)?;
        ensure_non_negative("fuel_cost", self.fuel_cost)?;
        ensure_positive("heating_value", self.heating_value)?;
        ensure_positive("gravity", self.gravity)?;
        if self.electricity_cost + self.fuel_cost <= 0.0 {
            return Err(Error::DegenerateCost);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConversionFactors {
    /// kWh per J.
    pub kappa_i: f64,
    /// kWh per N of fuel weight.
    pub kappa_f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffCoefficients {
    /// Mean energy cost `(C_i + C_f)/2`.
    pub c_mu: f64,
    /// Half-difference `(C_i − C_f)/2`.
    pub c_delta: f64,
    /// Time versus mean energy cost, `2·C_t/C_μ`.
    pub c_i: f64,
    /// Electricity versus fuel cost, `C_Δ/C_μ ∈ [−1, 1]`.
    pub c_e: f64,
}

pub fn derive_tradeoffs(inputs: &CostInputs) -> Result<TradeoffCoefficients> {
    inputs.validate()?;
    let c_mu = 0.5 * (inputs.electricity_cost + inputs.fuel_cost);
    let c_delta = 0.5 * (inputs.electricity_cost - inputs.fuel_cost);
    Ok(TradeoffCoefficients {
        c_mu,
        c_delta,
        c_i: 2.0 * inputs.time_cost / c_mu,
        c_e: c_delta / c_mu,
    })
}

/// `κ_f = e/g`, converting a fuel weight into energy (kWh/N when `e` is in
/// kWh/kg and `g` in m/s²).
pub fn fuel_conversion(heating_value: f64, gravity: f64) -> Result<f64> {
    ensure_positive("heating_value", heating_value)?;
    ensure_positive("gravity", gravity)?;
    Ok(heating_value / gravity)
}

/// Validated costs plus everything derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub inputs: CostInputs,
    pub factors: ConversionFactors,
    pub tradeoffs: TradeoffCoefficients,
}

impl CostModel {
    /// `kappa_i` defaults to [`KWH_PER_JOULE`].
    pub fn new(inputs: CostInputs, kappa_i: Option<f64>) -> Result<Self> {
        let tradeoffs = derive_tradeoffs(&inputs)?;
        let kappa_i = ensure_positive("kappa_i", kappa_i.unwrap_or(KWH_PER_JOULE))?;
        let kappa_f = fuel_conversion(inputs.heating_value, inputs.gravity)?;
        Ok(Self {
            inputs,
            factors: ConversionFactors { kappa_i, kappa_f },
            tradeoffs,
        })
    }

    pub fn gravity(&self) -> f64 {
        self.inputs.gravity
    }
}

/// Instantaneous DOC split by source, currency/s.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DocRate {
    pub time: f64,
    pub electricity: f64,
    pub fuel: f64,
}

impl DocRate {
    pub fn total(&self) -> f64 {
        self.time + self.electricity + self.fuel
    }
}

/// DOC integrand at the given airspeed and drag (thrust).
///
/// The supply voltage in the electricity term cancels against the one in the
/// battery current, leaving `C_i·κ_i·β·D·v/η`.
pub fn doc_rate(airspeed: f64, drag: f64, powertrain: &Powertrain, costs: &CostModel) -> Result<DocRate> {
    ensure_positive("airspeed", airspeed)?;
    ensure_non_negative("drag", drag)?;
    Ok(doc_rate_unchecked(airspeed, drag, powertrain, costs))
}

#[inline]
pub(crate) fn doc_rate_unchecked(airspeed: f64, drag: f64, powertrain: &Powertrain, costs: &CostModel) -> DocRate {
    let c = &costs.inputs;
    let electric_power = powertrain.beta * drag * airspeed / powertrain.eta;
    DocRate {
        time: c.time_cost,
        electricity: c.electricity_cost * costs.factors.kappa_i * electric_power,
        fuel: c.fuel_cost * costs.factors.kappa_f * powertrain.fuel_flow(drag, c.gravity),
    }
}
