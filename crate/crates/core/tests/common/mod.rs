#![allow(dead_code)]

use hedoc_core::{Airframe, Atmosphere, CostInputs, CostModel, CruiseParams, Powertrain, TsfcMode};

pub const G: f64 = 9.8;

pub fn costs(time_cost: f64, electricity_cost: f64, fuel_cost: f64) -> CostModel {
    CostModel::new(
        CostInputs {
            time_cost,
            electricity_cost,
            fuel_cost,
            heating_value: 11.94,
            gravity: G,
        },
        None,
    )
    .unwrap()
}

/// Airbus E-Fan X, international scenario.
pub fn efan_x() -> CruiseParams {
    CruiseParams::new(
        Airframe::new(77.3, 0.028, 0.026, 25_645.0 * G, 44_225.0 * G).unwrap(),
        Powertrain {
            beta: 0.25,
            eta: 0.9,
            supply_voltage: 3000.0,
            tsfc: 2.55e-5,
            tsfc_mode: TsfcMode::MassBased,
        },
        Atmosphere::new(0.4135, 10_000.0).unwrap(),
        costs(0.5, 0.06, 0.115),
    )
    .unwrap()
}

/// Yuneec E430, city scenario.
pub fn e430() -> CruiseParams {
    CruiseParams::new(
        Airframe::new(11.37, 0.035, 0.009, 302.0 * G, 472.0 * G).unwrap(),
        Powertrain {
            beta: 1.0,
            eta: 0.7,
            supply_voltage: 133.2,
            tsfc: 0.0,
            tsfc_mode: TsfcMode::MassBased,
        },
        Atmosphere::new(1.2, 300.0).unwrap(),
        costs(0.0005, 0.06, 0.0),
    )
    .unwrap()
}
