//! Energy-normalized continuum radial waves for the attractive Coulomb
//! potential (Z = 1).
//!
//! The reduced radial equation
//!
//! ```text
//! u'' + [2E + 2Z/r − l(l+1)/r²] u = 0,   u(r→0) ~ r^{l+1}
//! ```
//!
//! is integrated outward with the Numerov scheme on a uniform grid, then
//! rescaled so that ⟨E|E'⟩ = δ(E−E'): the asymptotic envelope becomes
//! √(2/(π k_loc(r))), extracted from (u, u') through the local wavenumber and
//! averaged over whole oscillations in the far zone. The hypergeometric
//! series representation is deliberately not used here; it is ill-conditioned
//! at the radii the bound-continuum integrals need.

use crate::error::{Error, Result};

/// A sampled continuum radial function u_{E,l} on its internal uniform grid.
#[derive(Debug, Clone)]
pub struct ContinuumWave {
    /// Kinetic energy in hartree (E > 0).
    pub energy: f64,
    pub l: u32,
    /// Asymptotic wavenumber k = √(2E).
    pub k: f64,
    /// Uniform grid step; sample i sits at r = (i+1)·h (r = 0 excluded, u(0) = 0).
    pub step: f64,
    /// u values at r = h, 2h, 3h, ...
    pub u: Vec<f64>,
    /// du/dr at the same points (O(h⁴) reconstruction).
    pub du: Vec<f64>,
}

impl ContinuumWave {
    pub fn r(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.step
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    /// Hermite-cubic sample at arbitrary r within the grid.
    pub fn sample(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let h = self.step;
        let pos = r / h - 1.0;
        if pos < 0.0 {
            // below the first node: u ~ r^{l+1} scaling from the first sample
            let u1 = self.u[0];
            return u1 * (r / h).powi(self.l as i32 + 1);
        }
        let i = (pos.floor() as usize).min(self.u.len() - 2);
        let t = pos - i as f64;
        let (u0, u1) = (self.u[i], self.u[i + 1]);
        let (d0, d1) = (self.du[i] * h, self.du[i + 1] * h);
        let t2 = t * t;
        let t3 = t2 * t;
        u0 * (2.0 * t3 - 3.0 * t2 + 1.0)
            + d0 * (t3 - 2.0 * t2 + t)
            + u1 * (-2.0 * t3 + 3.0 * t2)
            + d1 * (t3 - t2)
    }
}

/// Energy-normalized regular Coulomb wave for Z = 1 at `energy` (hartree),
/// valid out to at least `r_needed`.
pub fn continuum_wave(energy: f64, l: u32, r_needed: f64) -> Result<ContinuumWave> {
    solve_charge(1.0, energy, l, r_needed)
}

/// Public sampling wrapper: the regular wave evaluated on caller-provided
/// radii (energy normalization convention as above).
pub fn coulomb_radial_wave(energy: f64, l: u32, r_grid: &[f64]) -> Result<Vec<f64>> {
    let r_max = r_grid.iter().cloned().fold(0.0f64, f64::max);
    let wave = continuum_wave(energy, l, r_max)?;
    Ok(r_grid.iter().map(|&r| wave.sample(r)).collect())
}

/// Core solver with explicit charge (z = 0 reduces to the free particle;
/// kept parameterized for the spherical-Bessel limit checks).
pub(crate) fn solve_charge(z: f64, energy: f64, l: u32, r_needed: f64) -> Result<ContinuumWave> {
    if !(energy > 0.0) {
        return Err(Error::Domain(format!(
            "continuum wave needs E > 0 hartree, got {energy}"
        )));
    }
    let k = (2.0 * energy).sqrt();
    let lf = l as f64;
    let ll1 = lf * (lf + 1.0);

    // far zone where the WKB envelope drift k'/k² is negligible
    let r_far = (60.0 / k).max(8.0 * (ll1 + 1.0).sqrt() / k).max(150.0);
    let wavelength = 2.0 * std::f64::consts::PI / k;
    let window = 4.0 * wavelength;
    let r_max = r_needed.max(r_far) + window;

    let h = (0.01f64).min(wavelength / 60.0);
    let n = (r_max / h).ceil() as usize + 2;

    let q_of = |r: f64| 2.0 * energy + 2.0 * z / r - ll1 / (r * r);

    // series seeds u ~ r^{l+1}(1 + c1 r + c2 r²)
    let c1 = -z / (lf + 1.0);
    let c2 = (z * z / (lf + 1.0) - energy) / (2.0 * lf + 3.0);
    let seed = |r: f64| r.powi(l as i32 + 1) * (1.0 + c1 * r + c2 * r * r);

    let mut u = vec![0.0f64; n];
    let mut q = vec![0.0f64; n];
    for (i, qi) in q.iter_mut().enumerate() {
        let r = (i + 1) as f64 * h;
        *qi = q_of(r);
    }
    u[0] = seed(h);
    u[1] = seed(2.0 * h);
    let h2_12 = h * h / 12.0;
    for i in 1..n - 1 {
        let a = 2.0 * (1.0 - 5.0 * h2_12 * q[i]) * u[i];
        let b = (1.0 + h2_12 * q[i - 1]) * u[i - 1];
        let c = 1.0 + h2_12 * q[i + 1];
        u[i + 1] = (a - b) / c;
    }

    // derivative from the three-point stencil corrected with u'' = -Q u
    let mut du = vec![0.0f64; n];
    for i in 1..n - 1 {
        du[i] = (u[i + 1] - u[i - 1]) / (2.0 * h)
            + h / 12.0 * (q[i + 1] * u[i + 1] - q[i - 1] * u[i - 1]);
    }
    du[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    du[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);

    // normalization from the far tail: envelope² = u² + (u'/k_loc)²,
    // target envelope √(2/(π k_loc)); average the per-sample ratio over
    // whole oscillations to cancel the residual 2S-oscillatory part
    let i_hi = n - 2;
    let i_lo = ((r_far / h).ceil() as usize)
        .min(i_hi.saturating_sub(16))
        .max(2);
    let samples = i_hi - i_lo;
    if samples < 16 {
        return Err(Error::Accuracy(format!(
            "continuum wave normalization window too small (E={energy}, l={l})"
        )));
    }
    let mut acc = 0.0;
    for i in i_lo..i_hi {
        let k_loc = q[i].max(1e-300).sqrt();
        let env2 = u[i] * u[i] + (du[i] / k_loc) * (du[i] / k_loc);
        let target2 = 2.0 / (std::f64::consts::PI * k_loc);
        acc += (target2 / env2).sqrt();
    }
    let scale = acc / samples as f64;
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::Accuracy(format!(
            "continuum wave normalization failed (E={energy}, l={l}, scale={scale})"
        )));
    }
    for v in u.iter_mut() {
        *v *= scale;
    }
    for v in du.iter_mut() {
        *v *= scale;
    }

    Ok(ContinuumWave {
        energy,
        l,
        k,
        step: h,
        u,
        du,
    })
}
