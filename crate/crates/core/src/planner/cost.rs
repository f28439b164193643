//! DOC of a straight edge flown at the optimal airspeed.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use super::geometry::Point;
use crate::error::{ensure_positive, Error, Result};
use crate::optimizer::{electric_quartic_root, integrate_cruise, CruiseParams, CruiseState};

/// Aircraft state on arrival at a tree node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrivalState {
    /// s
    pub t: f64,
    /// N
    pub weight: f64,
    /// C
    pub charge: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct ElectricRate {
    weight: f64,
    airspeed: f64,
    /// currency per metre
    doc: f64,
    /// C per metre
    charge: f64,
}

/// Edge costs for one aircraft.
///
/// All-electric aircraft fly every edge at the same speed, so the cost is
/// a per-metre rate times the length. Hybrids integrate the cruise dynamics
/// along the edge with the weight costate held at zero, which makes the
/// planner a heuristic for them: the cost of an edge depends on the weight
/// at its start.
#[derive(Debug)]
pub struct EdgeCoster {
    params: CruiseParams,
    step: f64,
    cache: Cell<Option<ElectricRate>>,
}

impl EdgeCoster {
    pub fn new(params: CruiseParams, step: f64) -> Result<Self> {
        ensure_positive("step", step)?;
        Ok(Self {
            params,
            step,
            cache: Cell::new(None),
        })
    }

    pub fn params(&self) -> &CruiseParams {
        &self.params
    }

    fn electric_rate(&self, weight: f64) -> Result<ElectricRate> {
        if let Some(rate) = self.cache.get().filter(|r| r.weight == weight) {
            return Ok(rate);
        }
        let v = electric_quartic_root(weight, &self.params)?;
        let drag = self.params.drag(weight, v);
        let rate = ElectricRate {
            weight,
            airspeed: v,
            doc: self.params.doc_rate_at(weight, v).total() / v,
            charge: self.params.powertrain.current(drag, v) / v,
        };
        self.cache.set(Some(rate));
        Ok(rate)
    }

    /// DOC per metre for an all-electric aircraft at `weight`.
    pub fn electric_doc_per_metre(&self, weight: f64) -> Result<f64> {
        self.electric_rate(weight).map(|r| r.doc)
    }

    /// Cost of flying from `from` to `to` starting in `state`.
    pub fn edge_cost(&self, from: &Point, to: &Point, state: &ArrivalState) -> Result<(f64, ArrivalState)> {
        let length = from.distance(to);
        if length == 0.0 {
            return Ok((0.0, *state));
        }
        if self.params.powertrain.is_electric() {
            let rate = self.electric_rate(state.weight)?;
            let arrival = ArrivalState {
                t: state.t + length / rate.airspeed,
                weight: state.weight,
                charge: state.charge - length * rate.charge,
            };
            if arrival.charge < 0.0 {
                return Err(Error::ResourceExhausted {
                    resource: "charge",
                    position: length,
                    time: arrival.t,
                });
            }
            return Ok((length * rate.doc, arrival));
        }
        let start = CruiseState {
            t: state.t,
            r: 0.0,
            weight: state.weight,
            charge: state.charge,
            costate: 0.0,
        };
        let profile = integrate_cruise(start, length, &self.params, self.step)?;
        let end = profile.terminal();
        Ok((
            profile.summary.total_doc,
            ArrivalState {
                t: end.t,
                weight: end.weight,
                charge: end.charge,
            },
        ))
    }
}
