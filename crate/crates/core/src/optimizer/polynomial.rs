use serde::{Deserialize, Serialize};

use super::CruiseParams;
use crate::error::{ensure_positive, Error, Result};

/// Coefficients of `a5·v⁵ + a4·v⁴ + a3·v³ + a2·v² + a1·v + a0`.
///
/// Terms proportional to `β` are `a5` and `a1`; terms proportional to
/// `(1−β)·J̄_W` are `a4` and `a0`; `a2` carries the time cost and `a3` is
/// always zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuinticCoefficients {
    pub a5: f64,
    pub a4: f64,
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl QuinticCoefficients {
    pub fn from_ascending(c: [f64; 6]) -> Self {
        Self {
            a0: c[0],
            a1: c[1],
            a2: c[2],
            a3: c[3],
            a4: c[4],
            a5: c[5],
        }
    }

    /// `[a0, a1, a2, a3, a4, a5]`
    pub fn ascending(&self) -> [f64; 6] {
        [self.a0, self.a1, self.a2, self.a3, self.a4, self.a5]
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.ascending().iter().rev().fold(0.0, |acc, &a| acc * v + a)
    }

    pub fn derivative(&self, v: f64) -> f64 {
        let c = self.ascending();
        (1..6).rev().fold(0.0, |acc, k| acc * v + k as f64 * c[k])
    }

    pub fn max_abs(&self) -> f64 {
        self.ascending().iter().fold(0.0f64, |m, a| m.max(a.abs()))
    }

    /// `|P(v)| / (max_k |a_k| · max(1, v)⁵)`
    pub fn normalized_residual(&self, v: f64) -> f64 {
        self.eval(v).abs() / (self.max_abs() * v.abs().max(1.0).powi(5))
    }

    /// Sign changes in the coefficient sequence, zeros skipped. By Descartes'
    /// rule this bounds the number of positive real roots and has the same
    /// parity.
    pub fn sign_changes(&self) -> usize {
        let signs: Vec<bool> = self
            .ascending()
            .iter()
            .rev()
            .filter(|a| **a != 0.0)
            .map(|a| *a > 0.0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Assembles the optimality polynomial at weight `weight` and shifted
/// costate `jbar`, with the time term weighted per
/// [`CruiseParams::time_convention`].
pub fn quintic_coefficients(weight: f64, jbar: f64, params: &CruiseParams) -> Result<QuinticCoefficients> {
    ensure_positive("weight", weight)?;
    if !jbar.is_finite() {
        return Err(Error::Domain {
            name: "jbar",
            value: jbar,
            reason: "must be finite",
        });
    }
    let a = &params.airframe;
    let pt = &params.powertrain;
    let t = params.tradeoffs();
    let rho = params.density();
    let s = a.wing_area;
    let w2 = weight * weight;

    let electric = (1.0 + t.c_e) * params.costs.factors.kappa_i * pt.beta / pt.eta;
    let fuel = jbar * (1.0 - pt.beta) * pt.tsfc_weight(params.gravity());
    let rho_s = rho * s;

    let coeffs = QuinticCoefficients {
        a5: electric * rho_s * rho_s * a.c_d0,
        a4: 0.5 * fuel * rho_s * rho_s * a.c_d0,
        a3: 0.0,
        a2: -params.time_coefficient() * rho_s,
        a1: -4.0 * electric * a.c_d2 * w2,
        a0: -6.0 * fuel * a.c_d2 * w2,
    };
    if coeffs.ascending().iter().all(|c| *c == 0.0) {
        return Err(Error::DegeneratePolynomial);
    }
    Ok(coeffs)
}
