//! Small quadrature toolkit: Gauss–Legendre rules, panel composition, an
//! adaptive bisection driver, and uniform-grid Simpson sums.
//!
//! Used by the non-polynomial fallback of the Laplace product integral and,
//! heavily, by the oracle tests that check analytic matrix elements against
//! direct integration.

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; good to ~1e-15 for n ≤ 512.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// ∫_a^b f dx with a single n-point Gauss–Legendre rule.
pub fn integrate_gl<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let c = 0.5 * (b - a);
    let d = 0.5 * (b + a);
    let mut s = 0.0;
    for i in 0..n {
        s += w[i] * f(c * x[i] + d);
    }
    s * c
}

/// ∫_a^b f dx with `panels` equal panels of an n-point rule each.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let c = 0.5 * h;
        let d = lo + c;
        let mut s = 0.0;
        for i in 0..n {
            s += w[i] * f(c * x[i] + d);
        }
        total += s * c;
    }
    total
}

/// Adaptive bisection on a 15-point Gauss rule, refining until the two-half
/// estimate agrees with the whole-interval estimate.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (x, w) = gauss_legendre(15);
    fn gl15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, x: &[f64], w: &[f64]) -> f64 {
        let c = 0.5 * (b - a);
        let d = 0.5 * (b + a);
        let mut s = 0.0;
        for i in 0..x.len() {
            s += w[i] * f(c * x[i] + d);
        }
        s * c
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        floor: f64,
        depth: u32,
        x: &[f64],
        w: &[f64],
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let left = gl15(f, a, m, x, w);
        let right = gl15(f, m, b, x, w);
        let err = (left + right - whole).abs();
        if err <= tol.max(floor) || (b - a) < 1e-14 * (b.abs() + a.abs() + 1.0) {
            return Ok(left + right);
        }
        if depth >= 48 {
            return Err(Error::Accuracy(format!(
                "adaptive quadrature failed on [{a}, {b}]: residual {err:.3e} > tol {tol:.3e}"
            )));
        }
        let l = recurse(f, a, m, left, 0.6 * tol, floor, depth + 1, x, w)?;
        let r = recurse(f, m, b, right, 0.6 * tol, floor, depth + 1, x, w)?;
        Ok(l + r)
    }
    let whole = gl15(f, a, b, &x, &w);
    // machine floor keeps the recursion from demanding sub-epsilon residuals
    let floor = 1e-15 * whole.abs();
    recurse(f, a, b, whole, tol, floor, 0, &x, &w)
}

/// Composite Simpson rule over uniformly spaced samples with spacing `h`.
///
/// Handles an even trailing interval with a 3/8 segment.
pub fn simpson_uniform(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * h * (values[0] + values[1]);
    }
    let mut total = 0.0;
    let mut end = n;
    // if interval count is odd, peel off the last three intervals for a 3/8 rule
    if (n - 1) % 2 == 1 {
        if n >= 4 {
            let m = n - 4;
            total += 3.0 * h / 8.0
                * (values[m] + 3.0 * values[m + 1] + 3.0 * values[m + 2] + values[m + 3]);
            end = n - 3;
        } else {
            // n == 3 handled by plain Simpson below after trapezoid fallback
            return h / 3.0 * (values[0] + 4.0 * values[1] + values[2]);
        }
    }
    let mut s = values[0] + values[end - 1];
    for (i, &v) in values.iter().enumerate().take(end - 1).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    total + s * h / 3.0
}
