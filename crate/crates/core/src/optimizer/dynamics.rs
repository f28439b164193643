use serde::{Deserialize, Serialize};

use super::polynomial::QuinticCoefficients;
use super::roots::positive_real_roots;
use super::CruiseParams;
use crate::error::{ensure_positive, Error, Result};

/// State carried along a constant-altitude cruise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CruiseState {
    /// s
    pub t: f64,
    /// Horizontal distance flown, m.
    pub r: f64,
    /// N
    pub weight: f64,
    /// Battery charge, C.
    pub charge: f64,
    /// Weight costate `J_W`, kWh/N.
    pub costate: f64,
}

impl CruiseState {
    pub fn new(r: f64, weight: f64, charge: f64, costate: f64) -> Self {
        Self {
            t: 0.0,
            r,
            weight,
            charge,
            costate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateRates {
    /// m/s
    pub dr: f64,
    /// N/s
    pub dw: f64,
    /// C/s
    pub dq: f64,
}

/// Optimal airspeed at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AirspeedSolution {
    pub airspeed: f64,
    pub coefficients: QuinticCoefficients,
    pub jbar: f64,
    /// More than one positive root existed; the one with the lowest
    /// DOC per metre was taken.
    pub ambiguous: bool,
}

impl CruiseParams {
    /// Positive real root of the optimality polynomial at `(weight, costate)`.
    pub fn optimal_airspeed(&self, weight: f64, costate: f64) -> Result<AirspeedSolution> {
        let jbar = self.jbar(costate);
        let coefficients = super::quintic_coefficients(weight, jbar, self)?;
        let roots = positive_real_roots(&coefficients, self.min_drag_speed(weight));
        let (airspeed, ambiguous) = match roots.as_slice() {
            [] => {
                return Err(Error::NoPositiveRoot {
                    coefficients: coefficients.ascending(),
                })
            }
            [v] => (*v, false),
            many => {
                let per_metre = |v: f64| self.doc_rate_at(weight, v).total() / v;
                let best = many
                    .iter()
                    .copied()
                    .min_by(|a, b| per_metre(*a).total_cmp(&per_metre(*b)))
                    .expect("non-empty");
                (best, true)
            }
        };
        Ok(AirspeedSolution {
            airspeed,
            coefficients,
            jbar,
            ambiguous,
        })
    }
}

/// `dJ_W/dt` along the optimal cruise.
pub fn costate_rate(state: &CruiseState, airspeed: f64, params: &CruiseParams) -> Result<f64> {
    ensure_positive("airspeed", airspeed)?;
    Ok(costate_rate_unchecked(state.weight, state.costate, airspeed, params))
}

#[inline]
pub(crate) fn costate_rate_unchecked(weight: f64, costate: f64, airspeed: f64, params: &CruiseParams) -> f64 {
    let pt = &params.powertrain;
    let t = params.tradeoffs();
    let rho_s = params.density() * params.airframe.wing_area;
    // ∂D/∂W · v² = 4·C_D2·W/(ρS)
    let dd_dw_v2 = 4.0 * params.airframe.c_d2 * weight / rho_s;
    let electric = (1.0 + t.c_e) * params.costs.factors.kappa_i * pt.beta / pt.eta;
    let jbar = params.jbar(costate);
    -electric * dd_dw_v2 / airspeed
        - jbar * (1.0 - pt.beta) * pt.tsfc_weight(params.gravity()) * dd_dw_v2 / (airspeed * airspeed)
}

/// Position, weight and charge rates at the given airspeed.
pub fn state_rates(state: &CruiseState, airspeed: f64, params: &CruiseParams) -> Result<StateRates> {
    ensure_positive("airspeed", airspeed)?;
    ensure_positive("weight", state.weight)?;
    let drag = params.drag(state.weight, airspeed);
    Ok(StateRates {
        dr: airspeed,
        dw: -params.powertrain.fuel_flow(drag, params.gravity()),
        dq: -params.powertrain.current(drag, airspeed),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn electric_costate_rate_has_only_electric_term() {
        let p = e430();
        let s = CruiseState::new(0.0, 4600.0, 360_000.0, 0.3);
        let v = 36.0;
        let rate = costate_rate(&s, v, &p).unwrap();
        let rho_s = 1.2 * 11.37;
        let expected = -2.0 * p.costs.factors.kappa_i / 0.7 * 4.0 * 0.009 * 4600.0 / (rho_s * v);
        assert_relative_eq!(rate, expected, max_relative = 1e-14);
    }

    #[test]
    fn costate_rate_vanishes_with_weight() {
        let p = efan_x();
        let mut s = CruiseState::new(0.0, 430_000.0, 1.5e6, 0.01);
        let big = costate_rate(&s, 250.0, &p).unwrap();
        s.weight = 1e-9;
        let small = costate_rate(&s, 250.0, &p).unwrap();
        assert!(small.abs() < 1e-12 * big.abs());
        assert!(costate_rate(&s, 0.0, &p).is_err());
    }

    #[test]
    fn degenerate_state_rates() {
        let e = e430();
        let s = CruiseState::new(0.0, 4600.0, 360_000.0, 0.0);
        let r = state_rates(&s, 36.0, &e).unwrap();
        assert_eq!(r.dw, 0.0);
        assert_eq!(r.dr, 36.0);
        assert!(r.dq < 0.0);

        let mut jet = efan_x();
        jet.powertrain.beta = 0.0;
        let s = CruiseState::new(0.0, 430_000.0, 1.5e6, 0.0);
        let r = state_rates(&s, 250.0, &jet).unwrap();
        assert_eq!(r.dq, 0.0);
        assert!(r.dw < 0.0);
    }

    #[test]
    fn tie_break_prefers_cheaper_root() {
        // a strongly negative jbar flips a4 and a0 and can admit several roots
        let p = efan_x();
        let mut seen_ambiguous = false;
        for k in 1..40 {
            let costate = p.costate_scale() * (1.0 + 0.25 * k as f64);
            if let Ok(sol) = p.optimal_airspeed(430_000.0, costate) {
                assert!(sol.jbar < 0.0);
                if sol.ambiguous {
                    seen_ambiguous = true;
                    let roots = positive_real_roots(&sol.coefficients, p.min_drag_speed(430_000.0));
                    let cost = |v: f64| p.doc_rate_at(430_000.0, v).total() / v;
                    for r in roots {
                        assert!(cost(sol.airspeed) <= cost(r));
                    }
                }
            }
        }
        assert!(seen_ambiguous, "expected at least one ambiguous configuration");
    }
}
