//! Real roots of low-degree polynomials via companion-matrix eigenvalues.

use nalgebra::DMatrix;

use super::polynomial::QuinticCoefficients;
use crate::error::{Error, Result};

/// Eigenvalues with `|Im| <= IMAG_TOL·max(1, |z|)` are treated as real before
/// polishing. The polynomial is expected to be scaled so roots are O(1).
const IMAG_TOL: f64 = 1e-7;
/// Normalized residual a candidate must reach after polishing.
const ACCEPT_RESIDUAL: f64 = 1e-9;

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

fn horner_derivative(c: &[f64], x: f64) -> f64 {
    (1..c.len()).rev().fold(0.0, |acc, k| acc * x + k as f64 * c[k])
}

fn normalized_residual(c: &[f64], x: f64) -> f64 {
    let max = c.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    horner(c, x).abs() / (max * x.abs().max(1.0).powi(c.len() as i32 - 1))
}

/// One Newton step, kept only if it lowers `|P|`.
fn polish(c: &[f64], x: f64) -> f64 {
    let d = horner_derivative(c, x);
    if d == 0.0 || !d.is_finite() {
        return x;
    }
    let next = x - horner(c, x) / d;
    if next.is_finite() && horner(c, next).abs() <= horner(c, x).abs() {
        next
    } else {
        x
    }
}

/// All real roots of `c[0] + c[1]·x + … + c[n]·x^n`, ascending, each with one
/// Newton polish step. Exact zero leading coefficients reduce the degree
/// before the companion matrix is built; exact zero trailing coefficients
/// contribute roots at zero.
pub fn real_roots(c: &[f64]) -> Vec<f64> {
    let Some(top) = c.iter().rposition(|a| *a != 0.0) else {
        return Vec::new();
    };
    let low = c.iter().position(|a| *a != 0.0).unwrap_or(0);
    let reduced = &c[low..=top];

    let mut roots: Vec<f64> = if low > 0 { vec![0.0] } else { Vec::new() };
    match reduced.len() {
        0 | 1 => {}
        2 => roots.push(-reduced[0] / reduced[1]),
        3 => roots.extend(quadratic_real_roots(reduced[2], reduced[1], reduced[0])),
        n_plus_1 => {
            let n = n_plus_1 - 1;
            let lead = reduced[n];
            // companion matrix: ones on the subdiagonal, -b_k in the last column
            let mut m = DMatrix::<f64>::zeros(n, n);
            for i in 1..n {
                m[(i, i - 1)] = 1.0;
            }
            for i in 0..n {
                m[(i, n - 1)] = -reduced[i] / lead;
            }
            for z in m.complex_eigenvalues().iter() {
                if z.im.abs() <= IMAG_TOL * z.re.abs().max(1.0) {
                    let x = polish(reduced, z.re);
                    if normalized_residual(reduced, x) <= ACCEPT_RESIDUAL {
                        roots.push(x);
                    }
                }
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300));
    roots
}

/// Real roots of `a·x² + b·x + c` without cancellation.
fn quadratic_real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        // b == 0 and c == 0 handled by degree reduction; here b == 0, a·c < 0
        let r = (-c / a).sqrt();
        return vec![-r, r];
    }
    vec![q / a, c / q]
}

/// Positive real roots after substituting `v = scale·u`, which brings the
/// coefficient magnitudes (spanning ~20 decades in SI units) together.
pub fn positive_real_roots(coeffs: &QuinticCoefficients, scale: f64) -> Vec<f64> {
    let a = coeffs.ascending();
    let mut scaled = [0.0; 6];
    let mut s = 1.0;
    for k in 0..6 {
        scaled[k] = a[k] * s;
        s *= scale;
    }
    let max = scaled.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 || !max.is_finite() {
        return Vec::new();
    }
    for x in scaled.iter_mut() {
        *x /= max;
    }
    real_roots(&scaled)
        .into_iter()
        .filter(|u| *u > 0.0)
        .map(|u| u * scale)
        .collect()
}

/// Fujiwara-style magnitude estimate of the roots, used as the substitution
/// scale when none is supplied.
fn root_scale(coeffs: &QuinticCoefficients) -> f64 {
    let a = coeffs.ascending();
    let Some(n) = a.iter().rposition(|x| *x != 0.0) else {
        return 1.0;
    };
    let lead = a[n].abs();
    let s = (0..n)
        .filter(|&k| a[k] != 0.0)
        .map(|k| (a[k].abs() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max);
    if s > 0.0 && s.is_finite() {
        s
    } else {
        1.0
    }
}

/// The unique positive real root of the polynomial.
///
/// Fails with [`Error::NoPositiveRoot`] when none exists and with
/// [`Error::MultiplePositiveRoots`] when the choice is ambiguous; callers that
/// can rank candidates use [`positive_real_roots`] instead.
pub fn positive_real_root(coeffs: &QuinticCoefficients) -> Result<f64> {
    positive_real_root_scaled(coeffs, root_scale(coeffs))
}

pub fn positive_real_root_scaled(coeffs: &QuinticCoefficients, scale: f64) -> Result<f64> {
    let roots = positive_real_roots(coeffs, scale);
    match roots.as_slice() {
        [] => Err(Error::NoPositiveRoot {
            coefficients: coeffs.ascending(),
        }),
        [v] => Ok(*v),
        _ => Err(Error::MultiplePositiveRoots {
            count: roots.len(),
            roots,
        }),
    }
}
