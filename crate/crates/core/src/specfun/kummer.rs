//! Confluent hypergeometric function ₁F₁(a; c; x) (Kummer's M).
//!
//! The bound-state radial functions use the polynomial regime (a a
//! non-positive integer), which is an exact finite sum. The general-regime
//! series is kept for cross-checks and the quadrature fallback paths.

use crate::error::{Error, Result};

const MAX_TERMS: usize = 700;

fn is_non_positive_int(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// ₁F₁(a; c; x).
///
/// Exact finite sum when `a` is a non-positive integer; Kummer-transformed
/// series otherwise. `c` must not be a non-positive integer.
pub fn kummer_1f1(a: f64, c: f64, x: f64) -> Result<f64> {
    if is_non_positive_int(c) {
        return Err(Error::Domain(format!(
            "kummer_1f1: c must not be a non-positive integer, got c={c}"
        )));
    }
    if is_non_positive_int(a) {
        return Ok(kummer_polynomial(a, c, x));
    }
    if x < 0.0 {
        // Kummer transformation M(a,c,x) = e^x M(c-a, c, -x) keeps the series
        // terms single-signed
        let b = c - a;
        if is_non_positive_int(b) {
            return Ok(x.exp() * kummer_polynomial(b, c, -x));
        }
        return Ok(x.exp() * series(b, c, -x)?);
    }
    series(a, c, x)
}

/// Finite sum for a = -m, m a non-negative integer. Always exact (no
/// convergence question); cancellation stays mild for the arguments the
/// bound-bound integrals produce.
fn kummer_polynomial(a: f64, c: f64, x: f64) -> f64 {
    let m = (-a) as usize;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0; // Kahan
    for k in 0..m {
        let kf = k as f64;
        term *= (a + kf) * x / ((c + kf) * (kf + 1.0));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

fn series(a: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * x / ((c + kf) * (kf + 1.0));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            return Ok(sum);
        }
    }
    Err(Error::Accuracy(format!(
        "kummer_1f1 series did not converge in {MAX_TERMS} terms for a={a}, c={c}, x={x}; \
         last term {term:.3e} vs partial sum {sum:.3e}"
    )))
}

/// d/dx ₁F₁(a; c; x) = (a/c) ₁F₁(a+1; c+1; x).
pub fn kummer_1f1_deriv(a: f64, c: f64, x: f64) -> Result<f64> {
    Ok(a / c * kummer_1f1(a + 1.0, c + 1.0, x)?)
}
