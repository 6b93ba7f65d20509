//! Gamma function (Lanczos, g = 7) and integer factorial helpers.

use crate::error::{Error, Result};
use std::f64::consts::PI;

// Lanczos coefficients (g = 7, n = 9), the classic GSL/Numerical-Recipes set.
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Γ(x) for real x (poles at non-positive integers rejected).
///
/// All in-crate uses have x > 0; the reflection branch exists so the
/// function is total away from the poles.
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Domain(format!(
            "gamma pole at non-positive integer x={x}"
        )));
    }
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return Ok(PI / ((PI * x).sin() * gamma(1.0 - x)?));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    Ok((2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc)
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!("ln_gamma needs x > 0, got {x}")));
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + 7.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln())
}

/// n! as f64 (exact through 22!, then Lanczos; overflow above 170).
pub fn factorial(n: u32) -> f64 {
    const TABLE: [f64; 23] = [
        1.0,
        1.0,
        2.0,
        6.0,
        24.0,
        120.0,
        720.0,
        5040.0,
        40320.0,
        362880.0,
        3628800.0,
        39916800.0,
        479001600.0,
        6227020800.0,
        87178291200.0,
        1307674368000.0,
        20922789888000.0,
        355687428096000.0,
        6402373705728000.0,
        121645100408832000.0,
        2432902008176640000.0,
        51090942171709440000.0,
        1124000727777607680000.0,
    ];
    if (n as usize) < TABLE.len() {
        TABLE[n as usize]
    } else {
        gamma(n as f64 + 1.0).expect("factorial argument positive")
    }
}

/// ln(n!).
pub fn ln_factorial(n: u32) -> f64 {
    if n < 23 {
        factorial(n).ln()
    } else {
        ln_gamma(n as f64 + 1.0).expect("positive")
    }
}
