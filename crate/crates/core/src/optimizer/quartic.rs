//! Closed-form airspeed for all-electric aircraft.
//!
//! With `β = 1` the fuel terms vanish and, after dividing by `v`, the
//! optimality condition is the quartic `a·v⁴ − b·v − c = 0` with `a, c > 0`
//! and `b ≥ 0`. Substituting `v = v_md·u` gives exactly `u⁴ + q·u − 1 = 0`,
//! solved here by Ferrari's method.

use std::f64::consts::PI;

use super::CruiseParams;
use crate::error::{ensure_positive, Error, Result};

pub fn electric_quartic_root(weight: f64, params: &CruiseParams) -> Result<f64> {
    ensure_positive("weight", weight)?;
    let pt = &params.powertrain;
    if pt.beta != 1.0 {
        return Err(Error::Precondition(format!(
            "closed-form quartic requires beta = 1, got {}",
            pt.beta
        )));
    }
    let af = &params.airframe;
    let t = params.tradeoffs();
    let rho_s = params.density() * af.wing_area;
    let electric = (1.0 + t.c_e) * params.costs.factors.kappa_i / pt.eta;
    let a = electric * rho_s * rho_s * af.c_d0;
    let b = params.time_coefficient() * rho_s;
    let c = 4.0 * electric * af.c_d2 * weight * weight;
    if a <= 0.0 || c <= 0.0 {
        // free electricity: only the time term remains and it has no minimum
        return Err(Error::NoPositiveRoot {
            coefficients: [0.0, -c, -b, 0.0, a, 0.0],
        });
    }

    let scale = params.min_drag_speed(weight);
    let q = -b / (a * scale.powi(3));
    let r = -c / (a * scale.powi(4));
    let u = solve_depressed_quartic(q, r)
        .into_iter()
        .filter(|u| *u > 0.0)
        .fold(f64::NAN, f64::max);
    if u.is_nan() {
        return Err(Error::NoPositiveRoot {
            coefficients: [0.0, -c, -b, 0.0, a, 0.0],
        });
    }
    Ok(scale * u)
}

/// Real roots of `u⁴ + q·u + r = 0`, each refined by one Newton step.
pub fn solve_depressed_quartic(q: f64, r: f64) -> Vec<f64> {
    let p = |u: f64| ((u * u) * (u * u)) + q * u + r;
    let dp = |u: f64| 4.0 * u * u * u + q;

    let mut roots = Vec::with_capacity(4);
    if q == 0.0 {
        // biquadratic u⁴ = −r
        if r <= 0.0 {
            let u = (-r).powf(0.25);
            roots.push(-u);
            roots.push(u);
        }
    } else {
        // (u² + m)² = 2m·(u − q/(4m))² needs 8m³ − 8rm − q² = 0, m > 0
        let m = largest_cubic_root(-r, -q * q / 8.0);
        let s = (2.0 * m).sqrt();
        let shift = q / (2.0 * s);
        for (lin, cst) in [(-s, m + shift), (s, m - shift)] {
            roots.extend(quadratic(lin, cst));
        }
    }
    for u in roots.iter_mut() {
        let d = dp(*u);
        if d != 0.0 {
            let next = *u - p(*u) / d;
            if p(next).abs() <= p(*u).abs() {
                *u = next;
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Real roots of the monic `x² + b·x + c`.
fn quadratic(b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let h = -0.5 * (b + b.signum() * disc.sqrt());
    if h == 0.0 {
        return vec![0.0];
    }
    vec![h, c / h]
}

/// Largest real root of `m³ + p·m + q = 0` by the trigonometric/hyperbolic
/// forms, which avoid the cancellation of Cardano's radicals.
fn largest_cubic_root(p: f64, q: f64) -> f64 {
    if p == 0.0 {
        return (-q).cbrt();
    }
    if p > 0.0 {
        let k = 2.0 * (p / 3.0).sqrt();
        let arg = (3.0 * q / (p * k)).asinh() / 3.0;
        return -k * arg.sinh();
    }
    let k = 2.0 * (-p / 3.0).sqrt();
    let disc = 4.0 * p * p * p + 27.0 * q * q;
    if disc > 0.0 {
        let arg = (-3.0 * q.abs() / (p * k)).acosh() / 3.0;
        -q.signum() * k * arg.cosh()
    } else {
        let arg = ((3.0 * q / (p * k)).clamp(-1.0, 1.0)).acos() / 3.0;
        k * arg.cos().max((arg - 2.0 * PI / 3.0).cos())
    }
}
