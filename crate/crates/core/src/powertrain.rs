use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// How the tabulated thrust-specific fuel consumption is turned into a
/// weight flow per unit thrust.
///
/// Tables quote TSFC in kg/(N·s). Multiplying by thrust gives a *mass* flow,
/// so the weight flow is `g·TSFC·T` ([`TsfcMode::MassBased`]). The
/// alternative reads the tabulated number directly as N/(N·s).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TsfcMode {
    #[default]
    MassBased,
    WeightBased,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Powertrain {
    /// Share of thrust produced from electrical energy, in `[0, 1]`.
    pub beta: f64,
    /// Total electrical system efficiency, in `(0, 1]`.
    pub eta: f64,
    /// Battery supply voltage, V.
    pub supply_voltage: f64,
    /// Thrust-specific fuel consumption as tabulated, kg/(N·s).
    pub tsfc: f64,
    #[serde(default)]
    pub tsfc_mode: TsfcMode,
}

impl Powertrain {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::Domain {
                name: "beta",
                value: self.beta,
                reason: "hybridization factor must lie in [0, 1]",
            });
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(Error::Domain {
                name: "eta",
                value: self.eta,
                reason: "efficiency must lie in (0, 1]",
            });
        }
        ensure_positive("supply_voltage", self.supply_voltage)?;
        ensure_non_negative("tsfc", self.tsfc)?;
        Ok(())
    }

    /// Weight flow per unit thrust, 1/s.
    pub fn tsfc_weight(&self, gravity: f64) -> f64 {
        match self.tsfc_mode {
            TsfcMode::MassBased => gravity * self.tsfc,
            TsfcMode::WeightBased => self.tsfc,
        }
    }

    pub fn is_electric(&self) -> bool {
        self.beta == 1.0
    }

    /// Battery current, A, for a given drag and airspeed.
    pub fn current(&self, drag: f64, airspeed: f64) -> f64 {
        self.beta * drag * airspeed / (self.eta * self.supply_voltage)
    }

    /// Fuel weight flow, N/s.
    pub fn fuel_flow(&self, drag: f64, gravity: f64) -> f64 {
        self.tsfc_weight(gravity) * (1.0 - self.beta) * drag
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(beta: f64) -> Powertrain {
        Powertrain {
            beta,
            eta: 0.9,
            supply_voltage: 3000.0,
            tsfc: 2.55e-5,
            tsfc_mode: TsfcMode::MassBased,
        }
    }

    #[test]
    fn validation_bounds() {
        assert!(pt(0.0).validate().is_ok());
        assert!(pt(1.0).validate().is_ok());
        let err = pt(1.5).validate().unwrap_err();
        assert!(matches!(err, Error::Domain { name: "beta", .. }));
        assert!(Powertrain { eta: 0.0, ..pt(0.5) }.validate().is_err());
        assert!(Powertrain { eta: 1.1, ..pt(0.5) }.validate().is_err());
        assert!(Powertrain { tsfc: -1.0, ..pt(0.5) }.validate().is_err());
    }

    #[test]
    fn tsfc_modes() {
        let p = pt(0.25);
        assert_eq!(p.tsfc_weight(9.8), 9.8 * 2.55e-5);
        let w = Powertrain {
            tsfc_mode: TsfcMode::WeightBased,
            ..p
        };
        assert_eq!(w.tsfc_weight(9.8), 2.55e-5);
    }

    #[test]
    fn degenerate_flows() {
        assert_eq!(pt(1.0).fuel_flow(1000.0, 9.8), 0.0);
        assert_eq!(pt(0.0).current(1000.0, 100.0), 0.0);
    }
}
