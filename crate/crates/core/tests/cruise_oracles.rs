mod common;

use common::{e430, efan_x, G};
use hedoc_core::optimizer::{costate_rate, doc_total, shoot, terminal_costate, Boundary, ShootOptions};
use hedoc_core::{CruiseParams, Error, TsfcMode};

fn efan_boundary(rf: f64) -> Boundary {
    Boundary {
        r0: 0.0,
        rf,
        w0: 430_000.0,
        q0: 1_516_000.0,
    }
}

/// DOC of flying `length` at constant airspeed `v`, weight updated by a
/// midpoint rule on `n` sub-steps.
fn constant_speed_doc(p: &CruiseParams, w0: f64, v: f64, length: f64, n: usize) -> f64 {
    let dt = length / v / n as f64;
    let mut w = w0;
    let mut doc = 0.0;
    for _ in 0..n {
        let flow = |w: f64| p.powertrain.fuel_flow(p.drag(w, v), G);
        let w_mid = w - 0.5 * dt * flow(w);
        doc += p.doc_rate_at(w_mid, v).total() * dt;
        w -= dt * flow(w_mid);
    }
    doc
}

/// Minimum over `v ∈ [0.3·v_md, 4·v_md]` in 0.01 m/s steps, with the DOC
/// change across the neighbouring cells.
fn grid_minimum(p: &CruiseParams, w0: f64, length: f64, n: usize) -> (f64, f64) {
    let v_md = p.min_drag_speed(w0);
    let (lo, hi) = (0.3 * v_md, 4.0 * v_md);
    let cells = ((hi - lo) / 0.01) as usize;
    let doc: Vec<f64> = (0..=cells)
        .map(|k| constant_speed_doc(p, w0, lo + 0.01 * k as f64, length, n))
        .collect();
    let k = (0..doc.len()).min_by(|&a, &b| doc[a].total_cmp(&doc[b])).unwrap();
    assert!(k > 0 && k < cells, "grid minimum on the boundary");
    let cell = (doc[k + 1] - doc[k]).abs().max((doc[k] - doc[k - 1]).abs());
    (doc[k], cell)
}

#[test]
fn electric_shoot_matches_constant_speed_grid() {
    let p = e430();
    let b = Boundary {
        r0: 0.0,
        rf: 10_000.0,
        w0: 4600.0,
        q0: 360_000.0,
    };
    let res = shoot(&b, &p, &ShootOptions::default()).unwrap();
    let (min, cell) = grid_minimum(&p, 4600.0, 10_000.0, 1);
    let doc = res.profile.summary.total_doc;
    assert!(doc <= min * (1.0 + 1e-12), "shoot {doc} above grid {min}");
    assert!(min - doc <= cell, "shoot {doc}, grid {min}, cell {cell}");
}

#[test]
fn hybrid_short_leg_matches_constant_speed_grid() {
    let p = efan_x();
    let res = shoot(&efan_boundary(5_000.0), &p, &ShootOptions::default()).unwrap();
    let s = &res.profile.summary;
    assert!(s.fuel_mass * G / 430_000.0 < 1e-3);
    let (min, _) = grid_minimum(&p, 430_000.0, 5_000.0, 8);
    assert!(s.total_doc <= min * 1.0005, "shoot {} grid {min}", s.total_doc);
    assert!(s.total_doc >= min * (1.0 - 0.0005), "shoot {} grid {min}", s.total_doc);
}

#[test]
fn converged_terminal_costate_is_tight() {
    let p = efan_x();
    let res = shoot(&efan_boundary(450_000.0), &p, &ShootOptions::default()).unwrap();
    let k = (1.0 - p.tradeoffs().c_e) * p.costs.factors.kappa_f;
    assert!(res.profile.terminal().costate.abs() <= 1e-9 * k);
}

#[test]
fn perturbed_initial_costate_brackets_the_root() {
    let p = efan_x();
    let b = efan_boundary(450_000.0);
    let j0 = shoot(&b, &p, &ShootOptions::default()).unwrap().initial_costate;
    let above = terminal_costate(&b, &p, 1.0, 1.1 * j0).unwrap();
    let below = terminal_costate(&b, &p, 1.0, 0.9 * j0).unwrap();
    assert!(above.signum() != below.signum(), "{below} {above}");
}

#[test]
fn step_halving_changes_doc_little() {
    let p = efan_x();
    let b = efan_boundary(450_000.0);
    let coarse = shoot(&b, &p, &ShootOptions::default()).unwrap();
    let fine = shoot(
        &b,
        &p,
        &ShootOptions {
            step: 0.5,
            ..Default::default()
        },
    )
    .unwrap();
    let (a, f) = (coarse.profile.summary.total_doc, fine.profile.summary.total_doc);
    assert!(((a - f) / f).abs() < 1e-4, "{a} vs {f}");
}

#[test]
fn costate_finite_differences_match_rate() {
    let p = efan_x();
    let res = shoot(&efan_boundary(450_000.0), &p, &ShootOptions::default()).unwrap();
    let s = &res.profile.samples;
    // the final sample closes a partial step
    for k in 1..s.len() - 2 {
        let h = s[k + 1].state.t - s[k - 1].state.t;
        let fd = (s[k + 1].state.costate - s[k - 1].state.costate) / h;
        let rate = costate_rate(&s[k].state, s[k].airspeed, &p).unwrap();
        assert!((fd - rate).abs() <= 1e-6 * rate.abs(), "sample {k}: {fd} vs {rate}");
    }
}

#[test]
fn bookkeeping_identities() {
    let p = efan_x();
    let res = shoot(&efan_boundary(450_000.0), &p, &ShootOptions::default()).unwrap();
    let prof = &res.profile;
    let (first, last) = (prof.initial(), prof.terminal());
    let s = &prof.summary;
    let rel = |a: f64, b: f64| ((a - b) / b).abs();
    assert!(rel(s.fuel_mass * G, first.weight - last.weight) < 1e-9);
    assert!(rel(s.charge_spent * 3600.0, first.charge - last.charge) < 1e-9);
    assert_eq!(s.total_doc, doc_total(prof));
    assert_eq!(s.final_position, 450_000.0);

    // ΔQ against the current series: Simpson on the full steps, trapezoid on
    // the closing partial step
    let samples = &prof.samples;
    let full = samples.len() - 2;
    let mut q = 0.0;
    let mut k = 0;
    while k + 2 <= full {
        let h = samples[k + 1].state.t - samples[k].state.t;
        q += h / 3.0 * (samples[k].current + 4.0 * samples[k + 1].current + samples[k + 2].current);
        k += 2;
    }
    for j in k..samples.len() - 1 {
        let h = samples[j + 1].state.t - samples[j].state.t;
        q += 0.5 * h * (samples[j].current + samples[j + 1].current);
    }
    assert!(
        rel(q, first.charge - last.charge) < 1e-9,
        "{q} vs {}",
        first.charge - last.charge
    );
}

#[test]
fn trajectory_monotonicity() {
    let p = efan_x();
    let res = shoot(&efan_boundary(450_000.0), &p, &ShootOptions::default()).unwrap();
    for w in res.profile.samples.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        assert!(b.state.t > a.state.t && b.state.r > a.state.r);
        assert!(b.state.weight <= a.state.weight && b.state.charge <= a.state.charge);
        if b.state.weight < a.state.weight {
            assert!(b.airspeed <= a.airspeed, "airspeed rose at t = {}", b.state.t);
        }
    }
}

#[test]
fn electric_airspeed_is_constant() {
    let p = e430();
    let b = Boundary {
        r0: 0.0,
        rf: 10_294.0,
        w0: 4600.0,
        q0: 360_000.0,
    };
    let res = shoot(&b, &p, &ShootOptions::default()).unwrap();
    let v: Vec<f64> = res.profile.airspeeds().collect();
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / v.len() as f64;
    assert!(var / (mean * mean) < 1e-12);
    assert!(res.profile.samples.iter().all(|s| s.state.weight == 4600.0));
}

fn interpolate_airspeed(samples: &[hedoc_core::optimizer::ProfileSample], r: f64) -> f64 {
    let k = samples.partition_point(|s| s.state.r <= r).clamp(1, samples.len() - 1);
    let (a, b) = (&samples[k - 1], &samples[k]);
    let f = (r - a.state.r) / (b.state.r - a.state.r);
    a.airspeed + f * (b.airspeed - a.airspeed)
}

#[test]
fn doubling_time_cost_flies_faster() {
    let base = efan_x();
    let mut pricey = base;
    pricey.costs = common::costs(1.0, 0.06, 0.115);
    // the faster cruise drains the battery before 450 km
    let b = efan_boundary(200_000.0);
    let slow = shoot(&b, &base, &ShootOptions::default()).unwrap();
    let fast = shoot(&b, &pricey, &ShootOptions::default()).unwrap();
    assert!(fast.profile.summary.duration < slow.profile.summary.duration);
    for s in &fast.profile.samples {
        assert!(s.airspeed > interpolate_airspeed(&slow.profile.samples, s.state.r));
    }
}

#[test]
fn weight_based_tsfc_runs_out_of_charge() {
    // the alternative TSFC reading burns ~10× less fuel, so the optimizer
    // leans on the battery and cannot cover the 450 km leg
    let mut p = efan_x();
    p.powertrain.tsfc_mode = TsfcMode::WeightBased;
    match shoot(&efan_boundary(450_000.0), &p, &ShootOptions::default()) {
        Err(Error::ResourceExhausted { resource, position, .. }) => {
            assert_eq!(resource, "charge");
            assert!(position < 450_000.0);
        }
        other => panic!("expected charge exhaustion, got {:?}", other.map(|r| r.profile.summary)),
    }
}
