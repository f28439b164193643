use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violated a documented bound.
    #[error("invalid {name}: {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("degenerate cost model: electricity and fuel costs are both zero")]
    DegenerateCost,

    #[error("degenerate optimality polynomial: all coefficients are zero")]
    DegeneratePolynomial,

    #[error("no positive real airspeed root (coefficients {coefficients:?})")]
    NoPositiveRoot { coefficients: [f64; 6] },

    #[error("{count} positive real roots where exactly one was expected: {roots:?}")]
    MultiplePositiveRoots { count: usize, roots: Vec<f64> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{resource} exhausted at r = {position:.1} m (t = {time:.1} s)")]
    ResourceExhausted {
        resource: &'static str,
        position: f64,
        time: f64,
    },

    #[error("shooting failed: no sign change of the terminal costate on [{lo:.6e}, {hi:.6e}] ({evaluated} of {scanned} points evaluated)")]
    ShootingBracket {
        lo: f64,
        hi: f64,
        scanned: usize,
        evaluated: usize,
    },

    #[error("shooting did not converge after {iterations} iterations (|J_W(tf)| = {residual:.3e})")]
    ShootingConvergence { iterations: usize, residual: f64 },

    #[error(
        "planning failed after {iterations} iterations ({nodes} tree nodes, closest approach {closest_to_goal:.1} m)"
    )]
    PlanningFailed {
        iterations: usize,
        nodes: usize,
        closest_to_goal: f64,
    },
}

/// Rejects NaN, infinities and values `<= 0`.
pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

pub(crate) fn ensure_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            reason: "must be finite and >= 0",
        })
    }
}
