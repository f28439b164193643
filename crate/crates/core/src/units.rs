//! Conversions used at reporting boundaries.

pub const SECONDS_PER_HOUR: f64 = 3600.0;
pub const JOULES_PER_KWH: f64 = 3.6e6;
/// Coulombs in one ampere-hour.
pub const COULOMBS_PER_AH: f64 = 3600.0;

pub fn mps_to_kmh(v: f64) -> f64 {
    v * 3.6
}

pub fn kmh_to_mps(v: f64) -> f64 {
    v / 3.6
}

pub fn coulombs_to_ah(q: f64) -> f64 {
    q / COULOMBS_PER_AH
}

pub fn ah_to_coulombs(ah: f64) -> f64 {
    ah * COULOMBS_PER_AH
}
