//! Shooting on the initial weight costate.
//!
//! The terminal condition `J_W(t_f) = 0` is met by searching the scalar map
//! `J_W(0) ↦ J_W(t_f)`: a symmetric geometric scan finds a sign change, then
//! a bracketed secant (Illinois) iteration refines it.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use super::dynamics::CruiseState;
use super::integrate::{integrate_cruise, CruiseProfile};
use super::CruiseParams;
use crate::error::{ensure_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Boundary {
    /// m
    pub r0: f64,
    /// m
    pub rf: f64,
    /// N
    pub w0: f64,
    /// C
    pub q0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootOptions {
    /// RK4 time step, s.
    pub step: f64,
    /// Absolute tolerance on `J_W(t_f)`; defaults to `1e-9` times the
    /// costate scale `(1−C_E)·κ_f`.
    pub tolerance: Option<f64>,
    pub max_iterations: usize,
    /// Scan points per sign; the scan spans `±scale` down to
    /// `±scale·scan_floor`, geometrically spaced, plus zero.
    pub scan_points: usize,
    pub scan_floor: f64,
    /// Overrides the scan half-width (the costate scale by default).
    pub scan_half_width: Option<f64>,
}

impl Default for ShootOptions {
    fn default() -> Self {
        Self {
            step: 1.0,
            tolerance: None,
            max_iterations: 100,
            scan_points: 16,
            scan_floor: 1e-6,
            scan_half_width: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShootResult {
    pub profile: CruiseProfile,
    pub initial_costate: f64,
    /// Refinement iterations after the bracket was found.
    pub iterations: usize,
    /// Full integrations performed, scan included.
    pub integrations: usize,
}

fn initial_state(boundary: &Boundary, costate: f64) -> CruiseState {
    CruiseState::new(boundary.r0, boundary.w0, boundary.q0, costate)
}

/// `J_W(t_f)` reached from `J_W(0) = initial_costate`.
pub fn terminal_costate(boundary: &Boundary, params: &CruiseParams, step: f64, initial_costate: f64) -> Result<f64> {
    integrate_cruise(initial_state(boundary, initial_costate), boundary.rf, params, step).map(|p| p.terminal().costate)
}

/// Solves the cruise boundary-value problem and returns the converged profile.
pub fn shoot(boundary: &Boundary, params: &CruiseParams, options: &ShootOptions) -> Result<ShootResult> {
    ensure_positive("w0", boundary.w0)?;
    ensure_positive("step", options.step)?;
    if !(boundary.rf >= boundary.r0) {
        return Err(Error::Precondition(format!(
            "final position {} m must not precede initial position {} m",
            boundary.rf, boundary.r0
        )));
    }
    let scale = params.costate_scale();
    let tol = options.tolerance.unwrap_or(1e-9 * scale);
    let run = |j0: f64| integrate_cruise(initial_state(boundary, j0), boundary.rf, params, options.step);

    if boundary.rf == boundary.r0 {
        return Ok(ShootResult {
            profile: run(0.0)?,
            initial_costate: 0.0,
            iterations: 0,
            integrations: 1,
        });
    }

    // With β = 1 the costate never reaches the airspeed, so one pass with
    // J_W(0) = 0 followed by a uniform shift satisfies J_W(t_f) = 0.
    if params.powertrain.is_electric() {
        let mut profile = run(0.0)?;
        let end = profile.terminal().costate;
        profile.shift_costate(end);
        return Ok(ShootResult {
            initial_costate: -end,
            profile,
            iterations: 1,
            integrations: 1,
        });
    }

    let integrations = Cell::new(0usize);
    let eval = |j0: f64| -> Option<(f64, CruiseProfile)> {
        integrations.set(integrations.get() + 1);
        run(j0).ok().map(|p| (p.terminal().costate, p))
    };

    // scan outward from zero on the side the residual points to
    let p0 = run(0.0)?;
    integrations.set(1);
    let f0 = p0.terminal().costate;
    if f0.abs() <= tol {
        return Ok(ShootResult {
            profile: p0,
            initial_costate: 0.0,
            iterations: 0,
            integrations: 1,
        });
    }
    let n = options.scan_points.max(2);
    let ratio = options.scan_floor.powf(1.0 / (n - 1) as f64);
    let half_width = options.scan_half_width.unwrap_or(scale);
    let magnitudes: Vec<f64> = (0..n).rev().map(|k| half_width * ratio.powi(k as i32)).collect();
    // J_W(t_f) increases with J_W(0); try the indicated side first
    let sides: [f64; 2] = if f0 < 0.0 { [1.0, -1.0] } else { [-1.0, 1.0] };

    let mut evaluated = 1usize;
    let mut bracket = None;
    'scan: for side in sides {
        let (mut prev_x, mut prev_f) = (0.0, f0);
        for &m in &magnitudes {
            let x = side * m;
            let Some((f, p)) = eval(x) else { continue };
            evaluated += 1;
            if f.abs() <= tol {
                return Ok(ShootResult {
                    profile: p,
                    initial_costate: x,
                    iterations: 0,
                    integrations: integrations.get(),
                });
            }
            if f.signum() != prev_f.signum() {
                bracket = Some(if x < prev_x {
                    ((x, f), (prev_x, prev_f))
                } else {
                    ((prev_x, prev_f), (x, f))
                });
                break 'scan;
            }
            (prev_x, prev_f) = (x, f);
        }
    }
    let Some(((mut a, mut fa), (mut b, mut fb))) = bracket else {
        return Err(Error::ShootingBracket {
            lo: -half_width,
            hi: half_width,
            scanned: 2 * n + 1,
            evaluated,
        });
    };

    // Illinois variant of regula falsi
    let mut side = 0i8;
    let mut best = (f64::INFINITY, 0.0);
    for iteration in 1..=options.max_iterations {
        let c = (a * fb - b * fa) / (fb - fa);
        let c = if c > a && c < b { c } else { 0.5 * (a + b) };
        integrations.set(integrations.get() + 1);
        let (fc, pc) = run(c).map(|p| (p.terminal().costate, p))?;
        if fc.abs() < best.0 {
            best = (fc.abs(), c);
        }
        if fc.abs() <= tol {
            return Ok(ShootResult {
                profile: pc,
                initial_costate: c,
                iterations: iteration,
                integrations: integrations.get(),
            });
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() <= f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
    }
    Err(Error::ShootingConvergence {
        iterations: options.max_iterations,
        residual: best.0,
    })
}
