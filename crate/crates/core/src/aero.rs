//! Drag polar and atmosphere.
//!
//! Steady, level cruise is assumed throughout: lift equals weight and thrust
//! equals drag, so drag is a function of weight and airspeed only.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};

/// Geometric and aerodynamic constants of an airframe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Airframe {
    /// Reference wing area, m².
    pub wing_area: f64,
    /// Zero-lift drag coefficient.
    pub c_d0: f64,
    /// Induced drag coefficient (`C_D = C_D0 + C_D2·C_L²`).
    pub c_d2: f64,
    /// Empty weight, N.
    pub empty_weight: f64,
    /// Maximum take-off weight, N.
    pub max_takeoff_weight: f64,
}

impl Airframe {
    pub fn new(wing_area: f64, c_d0: f64, c_d2: f64, empty_weight: f64, max_takeoff_weight: f64) -> Result<Self> {
        let airframe = Self {
            wing_area,
            c_d0,
            c_d2,
            empty_weight,
            max_takeoff_weight,
        };
        airframe.validate()?;
        Ok(airframe)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("wing_area", self.wing_area)?;
        ensure_positive("c_d0", self.c_d0)?;
        ensure_positive("c_d2", self.c_d2)?;
        ensure_positive("empty_weight", self.empty_weight)?;
        ensure_positive("max_takeoff_weight", self.max_takeoff_weight)?;
        if self.empty_weight >= self.max_takeoff_weight {
            return Err(Error::Domain {
                name: "empty_weight",
                value: self.empty_weight,
                reason: "must be below max_takeoff_weight",
            });
        }
        Ok(())
    }

    /// Drag force in N at the given density, weight and airspeed.
    ///
    /// `D = ½·C_D0·ρ·S·v² + 2·C_D2·W²/(ρ·S·v²)`
    pub fn drag(&self, density: f64, weight: f64, airspeed: f64) -> Result<f64> {
        ensure_positive("airspeed", airspeed)?;
        ensure_positive("weight", weight)?;
        ensure_positive("density", density)?;
        Ok(self.drag_unchecked(density, weight, airspeed))
    }

    #[inline]
    pub(crate) fn drag_unchecked(&self, density: f64, weight: f64, airspeed: f64) -> f64 {
        let q_s = density * self.wing_area * airspeed * airspeed;
        0.5 * self.c_d0 * q_s + 2.0 * self.c_d2 * weight * weight / q_s
    }

    /// Airspeed at which parasitic and induced drag are equal.
    pub fn min_drag_speed(&self, density: f64, weight: f64) -> Result<f64> {
        ensure_positive("weight", weight)?;
        ensure_positive("density", density)?;
        Ok(self.min_drag_speed_unchecked(density, weight))
    }

    #[inline]
    pub(crate) fn min_drag_speed_unchecked(&self, density: f64, weight: f64) -> f64 {
        (2.0 * weight / (density * self.wing_area)).sqrt() * (self.c_d2 / self.c_d0).powf(0.25)
    }

    /// Minimum drag over all airspeeds, `2·W·√(C_D0·C_D2)`.
    pub fn min_drag(&self, weight: f64) -> f64 {
        2.0 * weight * (self.c_d0 * self.c_d2).sqrt()
    }
}

/// Air properties at the (constant) cruise altitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atmosphere {
    /// kg/m³
    pub density: f64,
    /// m
    pub altitude: f64,
}

impl Atmosphere {
    pub fn new(density: f64, altitude: f64) -> Result<Self> {
        let atmosphere = Self { density, altitude };
        atmosphere.validate()?;
        Ok(atmosphere)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("density", self.density)?;
        ensure_non_negative("altitude", self.altitude)?;
        Ok(())
    }

    /// Convenience constructor using [`isa_density`].
    pub fn standard(altitude: f64) -> Result<Self> {
        ensure_non_negative("altitude", altitude)?;
        Self::new(isa_density(altitude), altitude)
    }
}

/// International Standard Atmosphere density (troposphere plus the lower
/// isothermal stratosphere), kg/m³. Scenarios pin density explicitly; this is
/// only a helper for ad-hoc configurations.
pub fn isa_density(altitude: f64) -> f64 {
    const RHO0: f64 = 1.225;
    const T0: f64 = 288.15;
    const LAPSE: f64 = 0.0065;
    const TROPOPAUSE: f64 = 11_000.0;
    // g·M/(R·L) - 1
    const EXPONENT: f64 = 4.255_876;
    const SCALE_HEIGHT_STRAT: f64 = 6_341.62;

    let h = altitude.clamp(0.0, TROPOPAUSE);
    let rho = RHO0 * (1.0 - LAPSE * h / T0).powf(EXPONENT);
    if altitude > TROPOPAUSE {
        rho * (-(altitude - TROPOPAUSE) / SCALE_HEIGHT_STRAT).exp()
    } else {
        rho
    }
}

/// Induced drag coefficient from a maximum lift-to-drag ratio and `C_D0`.
///
/// With `L/D = ½·√(πAe/C_D0)` and `C_D2 = 1/(πAe)`, eliminating `πAe`
/// gives `C_D2 = 1/(4·(L/D)²·C_D0)`.
pub fn cd2_from_lift_to_drag(ld_ratio: f64, c_d0: f64) -> Result<f64> {
    ensure_positive("ld_ratio", ld_ratio)?;
    ensure_positive("c_d0", c_d0)?;
    Ok(1.0 / (4.0 * ld_ratio * ld_ratio * c_d0))
}

/// Maximum lift-to-drag ratio of a drag polar, the inverse of
/// [`cd2_from_lift_to_drag`].
pub fn lift_to_drag_from_cd2(c_d2: f64, c_d0: f64) -> Result<f64> {
    ensure_positive("c_d2", c_d2)?;
    ensure_positive("c_d0", c_d0)?;
    let pi_a_e = 1.0 / c_d2;
    Ok(0.5 * (pi_a_e / c_d0).sqrt())
}
