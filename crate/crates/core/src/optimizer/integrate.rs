use serde::{Deserialize, Serialize};

use super::dynamics::{costate_rate_unchecked, CruiseState};
use super::CruiseParams;
use crate::error::{ensure_positive, Error, Result};
use crate::units::{coulombs_to_ah, SECONDS_PER_HOUR};

const MAX_STEPS: usize = 20_000_000;
const MAX_PARTIAL_ITERATIONS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub state: CruiseState,
    /// m/s
    pub airspeed: f64,
    /// currency/s
    pub doc_rate: f64,
    /// Battery current, A.
    pub current: f64,
    /// Fuel weight flow, N/s.
    pub fuel_flow: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ProfileSummary {
    /// s
    pub duration: f64,
    /// kg
    pub fuel_mass: f64,
    /// Ah
    pub charge_spent: f64,
    pub total_doc: f64,
    /// currency/h
    pub hourly_doc: f64,
    /// m
    pub final_position: f64,
    /// kWh/N
    pub initial_costate: f64,
    /// kWh/N
    pub final_costate: f64,
}

/// Diagnostics raised while integrating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ProfileFlags {
    /// Some instant had more than one positive root.
    pub ambiguous_root: bool,
    /// `J̄_W` dropped below zero somewhere (hybrid only).
    pub negative_jbar: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CruiseProfile {
    pub samples: Vec<ProfileSample>,
    pub summary: ProfileSummary,
    pub flags: ProfileFlags,
}

impl CruiseProfile {
    pub fn initial(&self) -> &CruiseState {
        &self.samples[0].state
    }

    pub fn terminal(&self) -> &CruiseState {
        &self.samples[self.samples.len() - 1].state
    }

    pub fn airspeeds(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.airspeed)
    }

    /// Subtracts `delta` from every recorded costate.
    pub(crate) fn shift_costate(&mut self, delta: f64) {
        for s in self.samples.iter_mut() {
            s.state.costate -= delta;
        }
        self.summary.initial_costate -= delta;
        self.summary.final_costate -= delta;
    }

    fn summarize(&mut self, gravity: f64) {
        let first = self.samples[0].state;
        let last = self.samples[self.samples.len() - 1].state;
        let duration = last.t - first.t;
        let total_doc = doc_total(self);
        self.summary = ProfileSummary {
            duration,
            fuel_mass: (first.weight - last.weight) / gravity,
            charge_spent: coulombs_to_ah(first.charge - last.charge),
            total_doc,
            hourly_doc: if duration > 0.0 {
                total_doc / duration * SECONDS_PER_HOUR
            } else {
                0.0
            },
            final_position: last.r,
            initial_costate: first.costate,
            final_costate: last.costate,
        };
    }
}

/// Trapezoidal integral of the DOC rate over the profile's time samples.
pub fn doc_total(profile: &CruiseProfile) -> f64 {
    profile
        .samples
        .windows(2)
        .map(|w| 0.5 * (w[0].doc_rate + w[1].doc_rate) * (w[1].state.t - w[0].state.t))
        .sum()
}

/// `[r, W, Q, J_W]`
type Vector = [f64; 4];

fn axpy(y: &Vector, h: f64, k: &Vector) -> Vector {
    [y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2], y[3] + h * k[3]]
}

struct Evaluation {
    deriv: Vector,
    sample: ProfileSample,
    ambiguous: bool,
    jbar: f64,
}

fn evaluate(t: f64, y: &Vector, params: &CruiseParams) -> Result<Evaluation> {
    let (r, weight, charge, costate) = (y[0], y[1], y[2], y[3]);
    let sol = params.optimal_airspeed(weight, costate)?;
    let v = sol.airspeed;
    let drag = params.drag(weight, v);
    let pt = &params.powertrain;
    let current = pt.current(drag, v);
    let fuel_flow = pt.fuel_flow(drag, params.gravity());
    let doc_rate = crate::costmodel::doc_rate_unchecked(v, drag, pt, &params.costs).total();
    Ok(Evaluation {
        deriv: [
            v,
            -fuel_flow,
            -current,
            costate_rate_unchecked(weight, costate, v, params),
        ],
        sample: ProfileSample {
            state: CruiseState {
                t,
                r,
                weight,
                charge,
                costate,
            },
            airspeed: v,
            doc_rate,
            current,
            fuel_flow,
        },
        ambiguous: sol.ambiguous,
        jbar: sol.jbar,
    })
}

/// One classical RK4 step from `y` given its first stage.
fn rk4_step(t: f64, y: &Vector, h: f64, k1: &Evaluation, params: &CruiseParams) -> Result<(Vector, [Evaluation; 3])> {
    let k2 = evaluate(t + 0.5 * h, &axpy(y, 0.5 * h, &k1.deriv), params)?;
    let k3 = evaluate(t + 0.5 * h, &axpy(y, 0.5 * h, &k2.deriv), params)?;
    let k4 = evaluate(t + h, &axpy(y, h, &k3.deriv), params)?;
    let mut next = *y;
    for (i, x) in next.iter_mut().enumerate() {
        *x += h / 6.0 * (k1.deriv[i] + 2.0 * k2.deriv[i] + 2.0 * k3.deriv[i] + k4.deriv[i]);
    }
    Ok((next, [k2, k3, k4]))
}

/// Integrates the cruise forward with classical RK4 at a fixed time step,
/// re-solving the optimal airspeed at every stage.
///
/// The last step is shortened (secant iteration on its length) so the
/// profile ends exactly at `target_range`.
pub fn integrate_cruise(
    initial: CruiseState,
    target_range: f64,
    params: &CruiseParams,
    step: f64,
) -> Result<CruiseProfile> {
    ensure_positive("step", step)?;
    ensure_positive("initial weight", initial.weight)?;
    if !(initial.charge >= 0.0) {
        return Err(Error::Domain {
            name: "initial charge",
            value: initial.charge,
            reason: "must be >= 0",
        });
    }
    if !(target_range >= initial.r) {
        return Err(Error::Precondition(format!(
            "target range {target_range} m lies before the initial position {} m",
            initial.r
        )));
    }

    let hybrid = params.powertrain.beta < 1.0;
    let mut flags = ProfileFlags::default();
    let mut note = |e: &Evaluation| {
        flags.ambiguous_root |= e.ambiguous;
        flags.negative_jbar |= hybrid && e.jbar < 0.0;
    };

    let mut t = initial.t;
    let mut y: Vector = [initial.r, initial.weight, initial.charge, initial.costate];
    let mut samples = Vec::new();
    let empty_weight = params.airframe.empty_weight;
    let check = |t: f64, y: &Vector| -> Result<()> {
        if y[1] < empty_weight {
            Err(Error::ResourceExhausted {
                resource: "fuel",
                position: y[0],
                time: t,
            })
        } else if y[2] < 0.0 {
            Err(Error::ResourceExhausted {
                resource: "charge",
                position: y[0],
                time: t,
            })
        } else {
            Ok(())
        }
    };

    let mut k1 = evaluate(t, &y, params)?;
    note(&k1);
    if target_range == initial.r {
        samples.push(k1.sample);
    } else {
        for _ in 0..MAX_STEPS {
            samples.push(k1.sample);
            let (next, stages) = rk4_step(t, &y, step, &k1, params)?;
            for k in &stages {
                note(k);
            }

            if next[0] >= target_range {
                // shorten the last step until it lands on the target
                let (mut h, mut end) = (step, next);
                for _ in 0..MAX_PARTIAL_ITERATIONS {
                    if (end[0] - target_range).abs() <= 1e-12 * target_range.abs().max(1.0) {
                        break;
                    }
                    h *= (target_range - y[0]) / (end[0] - y[0]);
                    end = rk4_step(t, &y, h, &k1, params)?.0;
                }
                end[0] = target_range;
                let t_last = t + h;
                check(t_last, &end)?;
                if h > 0.0 {
                    let last = evaluate(t_last, &end, params)?;
                    note(&last);
                    samples.push(last.sample);
                }
                break;
            }
            t += step;
            y = next;
            check(t, &y)?;
            k1 = evaluate(t, &y, params)?;
            note(&k1);
        }
        if samples.last().map(|s| s.state.r) != Some(target_range) {
            return Err(Error::Precondition(format!(
                "cruise did not reach {target_range} m within {MAX_STEPS} steps"
            )));
        }
    }

    let mut profile = CruiseProfile {
        samples,
        summary: ProfileSummary::default(),
        flags,
    };
    profile.summarize(params.gravity());
    Ok(profile)
}
