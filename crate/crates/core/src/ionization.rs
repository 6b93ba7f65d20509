//! Photoionization observables: photoelectron energy channels, partial-wave
//! continuum amplitudes, and cross sections.
//!
//! The tracked eigenstate (pseudo-energy E_i) ionizes into fixed-μ continuum
//! channels with photoelectron energy
//!
//! ```text
//! E_f0 = E_i − μ·ħω,        η = (E_i + b)/ħω − μ
//! ```
//!
//! open when E_f0 > 0. Within a channel the final state is resolved into
//! energy-normalized partial waves u_{E,l} Y_{lμ}; the coupling amplitudes
//!
//! ```text
//! β_l = A · Σ_{n,l'',μ''} C_{n l'' μ''}(i) · s(l''→l) · ang(l'',μ'',l,μ) · ∫ u_{E,l} (D R_{n l''}) r dr
//! ```
//!
//! are linear in A by construction. With ρ = 1 under energy normalization the
//! rate is 2π Σ_l β_l², and the cross section in units of π a₀² follows by
//! dividing by the photon flux:
//!
//! ```text
//! σ = (16 α v / (k a₀ c)) Σ_l b_l²,     b_l = √(π/(2v)) β_l / A
//! ```
//!
//! (equivalently σ = 8π α Σ β_l² / (ω A²), which is what the code evaluates
//! through the reduced amplitudes b_l).

use crate::basis::{bound_radial, bound_radial_deriv, bound_radial_extent};
use crate::constants::CODATA;
use crate::eigen::{ground_state_index, EigenSolution, GroundTrack};
use crate::error::{Error, Result};
use crate::model::{bound_energy, hartree_to_ev, BasisState, LaserParams};
use crate::quadrature::simpson_uniform;
use crate::specfun::angular::angular_px_coupling;
use crate::specfun::coulomb::{continuum_wave, ContinuumWave};
use rayon::prelude::*;
use std::collections::HashMap;

/// Relative partial-wave tail above which β extraction refuses to report.
pub const TAIL_THRESHOLD: f64 = 1e-6;

/// One photoelectron channel, labeled by the final magnetic quantum number.
#[derive(Debug, Clone)]
pub struct IonizationChannel {
    pub mu: i32,
    /// Photoelectron energy in eV (negative for closed channels).
    pub e_f0_ev: f64,
    /// Same in hartree.
    pub e_f0_au: f64,
    /// Non-integer photon index η = (E_i + b)/ħω − μ.
    pub eta: f64,
    pub open: bool,
    /// Partial-wave amplitudes β_l for l = |μ| … (empty until computed).
    pub beta: Vec<f64>,
    /// Relative tail |β_L|²/Σβ² at the cutoff (0 when β not computed).
    pub tail_estimate: f64,
    /// Cross section in units of π a₀² (open channels with β only).
    pub sigma_pi_a0sq: Option<f64>,
}

impl IonizationChannel {
    pub fn l_min(&self) -> u32 {
        self.mu.unsigned_abs()
    }
}

/// Per-μ photoelectron energies and η for the tracked eigenstate.
/// Closed channels are returned flagged, not dropped.
pub fn photoelectron_energies(
    sol: &EigenSolution,
    laser: &LaserParams,
    mu_window: (i32, i32),
) -> Result<Vec<IonizationChannel>> {
    if mu_window.0 > mu_window.1 {
        return Err(Error::Domain(format!(
            "mu window must be lo <= hi, got {mu_window:?}"
        )));
    }
    let track = ground_state_index(sol)?;
    Ok(channels_for_track(sol, laser, mu_window, &track))
}

fn channels_for_track(
    sol: &EigenSolution,
    laser: &LaserParams,
    mu_window: (i32, i32),
    track: &GroundTrack,
) -> Vec<IonizationChannel> {
    let e_i = sol.energies[track.index];
    let omega = laser.omega_au();
    let b = -bound_energy(1).expect("n=1 valid");
    (mu_window.0..=mu_window.1)
        .map(|mu| {
            let e_f0 = e_i - mu as f64 * omega;
            IonizationChannel {
                mu,
                e_f0_ev: hartree_to_ev(e_f0),
                e_f0_au: e_f0,
                eta: (e_i + b) / omega - mu as f64,
                open: e_f0 > 0.0,
                beta: Vec::new(),
                tail_estimate: 0.0,
                sigma_pi_a0sq: None,
            }
        })
        .collect()
}

/// Bound radial tables R and R' sampled on the uniform continuum grid,
/// built once per scan point and shared across channels.
struct BoundTables {
    step: f64,
    /// (n, l) → (R values, R' values) from r = step, 2·step, …
    tables: HashMap<(u32, u32), (Vec<f64>, Vec<f64>)>,
}

impl BoundTables {
    fn build(n0: u32, step: f64) -> Self {
        let mut tables = HashMap::new();
        for n in 1..=n0 {
            for l in 0..n {
                let extent = bound_radial_extent(n);
                let len = (extent / step).ceil() as usize;
                let mut r_vals = Vec::with_capacity(len);
                let mut dr_vals = Vec::with_capacity(len);
                for i in 0..len {
                    let r = (i + 1) as f64 * step;
                    r_vals.push(bound_radial(n, l, r));
                    dr_vals.push(bound_radial_deriv(n, l, r));
                }
                tables.insert((n, l), (r_vals, dr_vals));
            }
        }
        BoundTables { step, tables }
    }
}

/// ∫ u_{E,l}(r) · (D_{l''→l} R_{n,l''})(r) · r dr on the shared uniform grid.
fn bound_continuum_radial(
    wave: &ContinuumWave,
    tables: &BoundTables,
    n: u32,
    l_b: u32,
    l_f: u32,
) -> f64 {
    let (r_tab, dr_tab) = &tables.tables[&(n, l_b)];
    let len = r_tab.len().min(wave.len());
    let h = tables.step;
    // integrand vanishes at r = 0; prepend it for the Simpson sum
    let mut vals = Vec::with_capacity(len + 1);
    vals.push(0.0);
    if l_f == l_b + 1 {
        for i in 0..len {
            let r = (i + 1) as f64 * h;
            let d = dr_tab[i] - l_b as f64 * r_tab[i] / r;
            vals.push(wave.u[i] * d * r);
        }
    } else {
        for i in 0..len {
            let r = (i + 1) as f64 * h;
            let d = dr_tab[i] + (l_b as f64 + 1.0) * r_tab[i] / r;
            vals.push(wave.u[i] * d * r);
        }
    }
    simpson_uniform(&vals, h)
}

/// Partial-wave amplitudes β_l (l = |μ| … n0) for one open channel, plus the
/// relative tail estimate at the cutoff.
///
/// The caller passes the eigenvector index (normally the tracked ground
/// state). Selection rules restrict contributions to bound μ'' = μ ∓ 1 and
/// l'' = l ± 1; everything else is skipped exactly.
pub fn continuum_matrix_element(
    sol: &EigenSolution,
    eigen_index: usize,
    channel_mu: i32,
    e_f0_au: f64,
    laser: &LaserParams,
) -> Result<(Vec<f64>, f64)> {
    if !(e_f0_au > 0.0) {
        return Err(Error::Domain(format!(
            "channel mu={channel_mu} is closed (E_f0 = {e_f0_au} hartree)"
        )));
    }
    let n0 = sol.basis.n0;
    let step = 0.01;
    let tables = BoundTables::build(n0, step);
    betas_with_tables(sol, eigen_index, channel_mu, e_f0_au, laser, &tables)
}

fn betas_with_tables(
    sol: &EigenSolution,
    eigen_index: usize,
    channel_mu: i32,
    e_f0_au: f64,
    laser: &LaserParams,
    tables: &BoundTables,
) -> Result<(Vec<f64>, f64)> {
    let n0 = sol.basis.n0;
    let l_min = channel_mu.unsigned_abs();
    let r_needed = bound_radial_extent(n0);
    let a_au = laser.amplitude_au;

    let mut betas = Vec::new();
    for l_f in l_min..=n0 {
        let wave = continuum_wave(e_f0_au, l_f, r_needed)?;
        debug_assert_eq!(wave.step, tables.step);
        let mut beta = 0.0;
        for l_b in [l_f.wrapping_sub(1), l_f + 1] {
            if l_f == 0 && l_b == u32::MAX {
                continue;
            }
            if l_b >= n0 {
                continue;
            }
            let s_phase = if l_f == l_b + 1 { -1.0 } else { 1.0 };
            // angular weight summed over the two contributing bound μ''
            for mu_b in [channel_mu - 1, channel_mu + 1] {
                if mu_b.unsigned_abs() > l_b {
                    continue;
                }
                let ang = angular_px_coupling(l_b, mu_b, l_f, channel_mu);
                if ang == 0.0 {
                    continue;
                }
                for n in (l_b + 1)..=n0 {
                    let idx = sol
                        .basis
                        .index_of(n, l_b, mu_b)
                        .expect("state enumerated by construction");
                    let c = sol.coeff(idx, eigen_index);
                    if c == 0.0 {
                        continue;
                    }
                    let rad = bound_continuum_radial(&wave, tables, n, l_b, l_f);
                    beta += c * s_phase * ang * rad;
                }
            }
        }
        betas.push(a_au * beta);
    }

    let sum_sq: f64 = betas.iter().map(|b| b * b).sum();
    // A single allowed wave (|μ| at the basis edge) is complete by selection
    // rules — there is no omitted term to estimate.
    let tail = if sum_sq > 0.0 && betas.len() > 1 {
        let last = *betas.last().expect("at least one partial wave");
        last * last / sum_sq
    } else {
        0.0
    };
    if tail > TAIL_THRESHOLD {
        return Err(Error::Accuracy(format!(
            "partial-wave tail {tail:.3e} above threshold {TAIL_THRESHOLD:.1e} for channel \
             mu={channel_mu}; the l-series is cut by the basis — increase n0"
        )));
    }
    Ok((betas, tail))
}

/// Cross section in units of π a₀² from the partial-wave amplitudes,
/// evaluated with v = √(2 E_f0) and photon k = ω/c.
pub fn cross_section(channel: &IonizationChannel, laser: &LaserParams) -> Result<f64> {
    if !channel.open {
        return Err(Error::Domain(format!(
            "cross section undefined for closed channel mu={}",
            channel.mu
        )));
    }
    if channel.beta.is_empty() {
        return Err(Error::Domain(format!(
            "channel mu={} has no partial-wave amplitudes computed",
            channel.mu
        )));
    }
    let a_au = laser.amplitude_au;
    if a_au == 0.0 {
        return Err(Error::Domain(
            "cross section needs A > 0 (β_l ∝ A; use a small amplitude for the weak-field limit)"
                .into(),
        ));
    }
    let alpha = CODATA.fine_structure_alpha;
    let omega = laser.omega_au();
    let v = (2.0 * channel.e_f0_au).sqrt();
    let k_photon = omega * alpha; // 1/a₀ units
    let c_au = 1.0 / alpha;
    let prefactor = 16.0 * alpha * v / (k_photon * c_au); // = 16 α v / ω
    let reduced_sq: f64 = channel
        .beta
        .iter()
        .map(|b| {
            let b_reduced = (std::f64::consts::PI / (2.0 * v)).sqrt() * b / a_au;
            b_reduced * b_reduced
        })
        .sum();
    Ok(prefactor * reduced_sq)
}

/// Full channel table for one solved laser point: energies, η, β, σ.
pub fn ionization_channels(
    sol: &EigenSolution,
    laser: &LaserParams,
    mu_window: (i32, i32),
    with_sigma: bool,
) -> Result<Vec<IonizationChannel>> {
    if mu_window.0 > mu_window.1 {
        return Err(Error::Domain(format!(
            "mu window must be lo <= hi, got {mu_window:?}"
        )));
    }
    let track = ground_state_index(sol)?;
    let mut channels = channels_for_track(sol, laser, mu_window, &track);
    if with_sigma && laser.amplitude_au > 0.0 {
        let tables = BoundTables::build(sol.basis.n0, 0.01);
        for ch in channels.iter_mut().filter(|c| c.open) {
            if ch.l_min() > sol.basis.n0 {
                // no partial wave can be fed from an l ≤ n0-1 basis: the
                // truncated model predicts zero amplitude into this channel
                ch.sigma_pi_a0sq = Some(0.0);
                continue;
            }
            let (betas, tail) =
                betas_with_tables(sol, track.index, ch.mu, ch.e_f0_au, laser, &tables)?;
            ch.beta = betas;
            ch.tail_estimate = tail;
            ch.sigma_pi_a0sq = Some(cross_section(ch, laser)?);
        }
    }
    Ok(channels)
}

/// One scan row: a channel at one amplitude grid point.
#[derive(Debug, Clone)]
pub struct IonizationScanRow {
    pub amplitude_si: f64,
    pub intensity_w_cm2: f64,
    pub ground_energy: f64,
    pub ground_overlap: f64,
    pub ground_ambiguous: bool,
    pub residual: f64,
    pub channel: IonizationChannel,
}

/// Intensity scan of the ionization observables at fixed photon energy.
#[derive(Debug, Clone)]
pub struct IonizationTable {
    pub n0: u32,
    pub photon_ev: f64,
    pub mu_window: (i32, i32),
    pub grid_amplitude_si: Vec<f64>,
    pub rows: Vec<IonizationScanRow>,
    pub errors: Vec<(usize, String)>,
}

impl IonizationTable {
    pub fn all_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Re-diagonalize per amplitude point and extract every channel in the
/// window; σ computed for open channels when `with_sigma`.
pub fn ionization_scan(
    n0: u32,
    photon_ev: f64,
    amplitude_grid_si: &[f64],
    mu_window: (i32, i32),
    with_sigma: bool,
) -> Result<IonizationTable> {
    if amplitude_grid_si.is_empty() {
        return Err(Error::Domain("scan grid must not be empty".into()));
    }
    let basis = std::sync::Arc::new(crate::basis::build_basis(n0)?);
    let results: Vec<std::result::Result<Vec<IonizationScanRow>, String>> = amplitude_grid_si
        .par_iter()
        .map(|&a_si| {
            (|| -> Result<Vec<IonizationScanRow>> {
                let laser = LaserParams::new(a_si, photon_ev)?;
                let h = crate::basis::build_pseudo_hamiltonian(&basis, &laser)?;
                let sol = crate::eigen::diagonalize(&h)?;
                let track = ground_state_index(&sol)?;
                let channels = ionization_channels(&sol, &laser, mu_window, with_sigma)?;
                Ok(channels
                    .into_iter()
                    .map(|channel| IonizationScanRow {
                        amplitude_si: a_si,
                        intensity_w_cm2: laser.intensity_w_cm2,
                        ground_energy: sol.energies[track.index],
                        ground_overlap: track.overlap,
                        ground_ambiguous: track.ambiguous,
                        residual: sol.residual_norm,
                        channel,
                    })
                    .collect())
            })()
            .map_err(|e| e.to_string())
        })
        .collect();

    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(mut point_rows) => rows.append(&mut point_rows),
            Err(msg) => errors.push((i, msg)),
        }
    }
    Ok(IonizationTable {
        n0,
        photon_ev,
        mu_window,
        grid_amplitude_si: amplitude_grid_si.to_vec(),
        rows,
        errors,
    })
}

/// Convenience: the BasisState handle for the tracked initial state (1s).
pub fn ground_state() -> BasisState {
    BasisState::new(1, 0, 0).expect("1s is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{build_basis, build_pseudo_hamiltonian};
    use crate::eigen::diagonalize;
    use crate::model::ev_to_hartree;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn solve(n0: u32, laser: &LaserParams) -> EigenSolution {
        let basis = Arc::new(build_basis(n0).unwrap());
        let h = build_pseudo_hamiltonian(&basis, laser).unwrap();
        diagonalize(&h).unwrap()
    }

    /// Full 2D (r, θ) quadrature oracle for the partial-wave amplitudes at a
    /// strong field: p̂_x is applied to the expanded eigenstate by literal
    /// spherical-coordinate differentiation with explicit i^l phases (none of
    /// the production angular/radial factorization is reused), the azimuthal
    /// integral is a trapezoid sum that is exact for the trigonometric
    /// polynomials involved, and the radial direction rides the same
    /// continuum grid so wave normalization cancels identically. The two
    /// radial moments per state, ∫u·R'·r dr and ∫u·R dr, are θ-independent
    /// and hoisted out of the angular loops.
    #[test]
    fn betas_match_full_2d_quadrature_oracle() {
        use crate::quadrature::gauss_legendre;
        use crate::specfun::angular::{theta_lm, theta_lm_deriv};

        let n0 = 3u32;
        let laser = LaserParams::from_au(0.3, 20.0).unwrap();
        let sol = solve(n0, &laser);
        let track = ground_state_index(&sol).unwrap();
        let omega = laser.omega_au();
        let e_i = sol.energies[track.index];

        let (tx, tw) = gauss_legendre(64);
        let thetas: Vec<f64> = tx
            .iter()
            .map(|&x| 0.5 * std::f64::consts::PI * (x + 1.0))
            .collect();
        let theta_w: Vec<f64> = tw.iter().map(|&w| w * 0.5 * std::f64::consts::PI).collect();
        let nphi = 16usize;

        for channel_mu in [-1i32, -2] {
            let e_f0 = e_i - channel_mu as f64 * omega;
            assert!(e_f0 > 0.0);
            let (betas, _) =
                continuum_matrix_element(&sol, track.index, channel_mu, e_f0, &laser).unwrap();
            let l_min = channel_mu.unsigned_abs();

            let r_needed = crate::basis::bound_radial_extent(n0);
            for (bi, &beta_impl) in betas.iter().enumerate() {
                let l_f = l_min + bi as u32;
                let wave = continuum_wave(e_f0, l_f, r_needed).unwrap();
                let h = wave.step;
                let len = ((r_needed / h) as usize).min(wave.len());

                // per-state radial moments on the wave grid:
                //   i1 = ∫ u R' r dr (∂_r part), i2 = ∫ u R dr (∂_θ and ∂_φ parts)
                let moments: Vec<(f64, f64, f64)> = sol
                    .basis
                    .states
                    .iter()
                    .enumerate()
                    .map(|(s_idx, st)| {
                        let c = sol.coeff(s_idx, track.index);
                        if c == 0.0 {
                            return (0.0, 0.0, 0.0);
                        }
                        let mut v1 = vec![0.0];
                        let mut v2 = vec![0.0];
                        for i in 0..len {
                            let r = (i + 1) as f64 * h;
                            v1.push(
                                wave.u[i] * crate::basis::bound_radial_deriv(st.n, st.l, r) * r,
                            );
                            v2.push(wave.u[i] * crate::basis::bound_radial(st.n, st.l, r));
                        }
                        (
                            c,
                            crate::quadrature::simpson_uniform(&v1, h),
                            crate::quadrature::simpson_uniform(&v2, h),
                        )
                    })
                    .collect();

                // angular double sum with exact-for-trig φ trapezoid
                let mut acc_re = 0.0;
                let mut acc_im = 0.0;
                for j in 0..thetas.len() {
                    let th = thetas[j];
                    let th_f = theta_lm(l_f, channel_mu, th);
                    if th_f == 0.0 {
                        continue;
                    }
                    for p in 0..nphi {
                        let phi = 2.0 * std::f64::consts::PI * p as f64 / nphi as f64;
                        let (s1, c1) = phi.sin_cos();
                        let mut cell_re = 0.0;
                        let mut cell_im = 0.0;
                        for (s_idx, st) in sol.basis.states.iter().enumerate() {
                            let (c, i1, i2) = moments[s_idx];
                            if c == 0.0 {
                                continue;
                            }
                            let th_b = theta_lm(st.l, st.mu, th);
                            let dth_b = theta_lm_deriv(st.l, st.mu, th);
                            let p_rad = th.sin() * th_b * i1 + th.cos() * dth_b * i2;
                            let q_rad = st.mu as f64 * th_b / th.sin() * i2;
                            // ∂_x ψ_s e^{-iμφ} = cosφ·P − i·sinφ·Q, then ×(−i)
                            let re_x = c1 * p_rad;
                            let im_x = -s1 * q_rad;
                            let (op_re, op_im) = (im_x, -re_x);
                            // × i^{l_s} e^{iμ_s φ}
                            let (ph_re, ph_im) = match st.l % 4 {
                                0 => (1.0, 0.0),
                                1 => (0.0, 1.0),
                                2 => (-1.0, 0.0),
                                _ => (0.0, -1.0),
                            };
                            let (e_re, e_im) =
                                ((st.mu as f64 * phi).cos(), (st.mu as f64 * phi).sin());
                            let (f_re, f_im) =
                                (ph_re * e_re - ph_im * e_im, ph_re * e_im + ph_im * e_re);
                            cell_re += c * (op_re * f_re - op_im * f_im);
                            cell_im += c * (op_re * f_im + op_im * f_re);
                        }
                        // × conj(i^{l_f} e^{iμ_c φ}) / (2π) · (2π/nphi) · θ weight
                        let (pf_re, pf_im) = match l_f % 4 {
                            0 => (1.0, 0.0),
                            1 => (0.0, -1.0),
                            2 => (-1.0, 0.0),
                            _ => (0.0, 1.0),
                        };
                        let ang = -(channel_mu as f64) * phi;
                        let (e_re, e_im) = (ang.cos(), ang.sin());
                        let (g_re, g_im) =
                            (pf_re * e_re - pf_im * e_im, pf_re * e_im + pf_im * e_re);
                        let w = theta_w[j] * th.sin() * th_f / nphi as f64;
                        acc_re += w * (cell_re * g_re - cell_im * g_im);
                        acc_im += w * (cell_re * g_im + cell_im * g_re);
                    }
                }
                let beta_oracle = laser.amplitude_au * acc_re;
                let scale = betas.iter().map(|b| b.abs()).fold(1e-300, f64::max);
                assert!(
                    acc_im.abs() * laser.amplitude_au <= 1e-10 * scale,
                    "oracle β not real for l={l_f}: imag {acc_im:.3e}"
                );
                assert!(
                    (beta_impl - beta_oracle).abs() <= 1e-8 * scale.max(beta_oracle.abs()),
                    "β_l mismatch at μ={channel_mu}, l={l_f}: impl {beta_impl:.12e} vs oracle {beta_oracle:.12e}"
                );
            }
        }
    }

    #[test]
    fn einstein_limit_energy() {
        // weak field, ħω = 20 eV > b: E_f0(μ=-1) = ħω − b
        let laser = LaserParams::from_au(1e-5, 20.0).unwrap();
        let sol = solve(6, &laser);
        let channels = photoelectron_energies(&sol, &laser, (-3, 1)).unwrap();
        let ch = channels.iter().find(|c| c.mu == -1).unwrap();
        assert!(ch.open);
        let b_ev = hartree_to_ev(0.5);
        assert!(
            (ch.e_f0_ev - (20.0 - b_ev)).abs() < 1e-3,
            "E_f0 = {} vs Einstein {}",
            ch.e_f0_ev,
            20.0 - b_ev
        );
        assert!((ch.eta - 1.0).abs() < 1e-4, "eta = {}", ch.eta);
        // μ = 0 channel would need E_f0 = E_i > 0: closed
        assert!(!channels.iter().find(|c| c.mu == 0).unwrap().open);
    }

    #[test]
    fn channel_spacing_is_exact() {
        let laser = LaserParams::new(5e-6, 2.37).unwrap();
        let sol = solve(5, &laser);
        let channels = photoelectron_energies(&sol, &laser, (-9, 2)).unwrap();
        let omega = laser.omega_au();
        for a in &channels {
            for b in &channels {
                let lhs = a.e_f0_au - b.e_f0_au;
                let rhs = (b.mu - a.mu) as f64 * omega;
                // machine-exact: both sides are the same few flops
                assert!(
                    (lhs - rhs).abs() <= 1e-15 * (1.0 + lhs.abs()),
                    "spacing mu={} vs mu={}",
                    a.mu,
                    b.mu
                );
            }
        }
    }

    #[test]
    fn below_threshold_weak_field_all_closed() {
        // ħω = 2.37 eV < b: weak field cannot eject anything
        let laser = LaserParams::from_au(1e-5, 2.37).unwrap();
        let sol = solve(5, &laser);
        let channels = photoelectron_energies(&sol, &laser, (-2, 2)).unwrap();
        assert!(channels.iter().all(|c| !c.open));
        let with_sigma = ionization_channels(&sol, &laser, (-2, 2), true).unwrap();
        assert!(with_sigma.iter().all(|c| c.sigma_pi_a0sq.is_none()));
    }

    #[test]
    fn weak_field_betas_concentrate_in_l1() {
        let laser = LaserParams::from_au(1e-8, 20.0).unwrap();
        let sol = solve(4, &laser);
        let track = ground_state_index(&sol).unwrap();
        let e_f0 = sol.energies[track.index] + laser.omega_au();
        let (betas, tail) = continuum_matrix_element(&sol, track.index, -1, e_f0, &laser).unwrap();
        // l runs 1..=4: β₁ dominates by orders of magnitude
        let b1 = betas[0].abs();
        assert!(b1 > 0.0);
        for (k, b) in betas.iter().enumerate().skip(1) {
            assert!(
                b.abs() / b1 < 1e-6,
                "β_l for l={} should be negligible: {b:.3e} vs {b1:.3e}",
                k + 1
            );
        }
        assert!(tail < TAIL_THRESHOLD);
    }

    #[test]
    fn betas_scale_linearly_with_amplitude() {
        // same eigenvectors, doubled A in the operator: β doubles exactly
        let laser1 = LaserParams::from_au(1e-6, 20.0).unwrap();
        let laser2 = LaserParams::from_au(2e-6, 20.0).unwrap();
        let sol = solve(3, &laser1);
        let track = ground_state_index(&sol).unwrap();
        let e_f0 = sol.energies[track.index] + laser1.omega_au();
        let (b1, _) = continuum_matrix_element(&sol, track.index, -1, e_f0, &laser1).unwrap();
        let (b2, _) = continuum_matrix_element(&sol, track.index, -1, e_f0, &laser2).unwrap();
        for (x, y) in b1.iter().zip(&b2) {
            if x.abs() > 1e-300 {
                assert_relative_eq!(y / x, 2.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn closed_channel_rejected_for_beta_and_sigma() {
        let laser = LaserParams::from_au(1e-4, 2.37).unwrap();
        let sol = solve(4, &laser);
        let track = ground_state_index(&sol).unwrap();
        assert!(continuum_matrix_element(&sol, track.index, 0, -0.3, &laser).is_err());
        let channels = photoelectron_energies(&sol, &laser, (0, 0)).unwrap();
        assert!(cross_section(&channels[0], &laser).is_err());
    }

    /// Golden-rule oracle: first-order rate out of the bare 1s state through
    /// the dipole integral, computed with the same continuum normalization
    /// but none of the eigenvector/partial-wave machinery.
    fn golden_rule_sigma(photon_ev: f64) -> f64 {
        let omega = ev_to_hartree(photon_ev);
        let e_f0 = omega - 0.5;
        assert!(e_f0 > 0.0);
        let wave = continuum_wave(e_f0, 1, 90.0).unwrap();
        // M = s(0→1)·ang(0,0,1,-1)·∫ u (d/dr R₁₀) r dr, R₁₀ = 2 e^{-r}
        let h = wave.step;
        let len = ((60.0 / h) as usize).min(wave.len());
        let mut vals = vec![0.0];
        for i in 0..len {
            let r = (i + 1) as f64 * h;
            vals.push(wave.u[i] * (-2.0 * (-r).exp()) * r);
        }
        let radial = simpson_uniform(&vals, h);
        let ang = angular_px_coupling(0, 0, 1, -1);
        let s_phase = -1.0; // l: 0 -> 1
        let m = s_phase * ang * radial;
        8.0 * std::f64::consts::PI * CODATA.fine_structure_alpha * m * m / omega
    }

    /// Closed-form nonrelativistic hydrogen photoionization cross section
    /// (dipole approximation), in units of π a₀².
    fn closed_form_sigma(photon_ev: f64) -> f64 {
        let omega = ev_to_hartree(photon_ev);
        let k = (2.0 * (omega - 0.5)).sqrt();
        let nu = 1.0 / k;
        let alpha = CODATA.fine_structure_alpha;
        let sigma_a0sq = 2f64.powi(9) * std::f64::consts::PI.powi(2) / 3.0
            * alpha
            * (0.5 / omega).powi(4)
            * (-4.0 * nu * (1.0 / nu).atan()).exp()
            / (1.0 - (-2.0 * std::f64::consts::PI * nu).exp());
        sigma_a0sq / std::f64::consts::PI
    }

    #[test]
    fn weak_field_sigma_matches_golden_rule_and_closed_form() {
        let photon_ev = 20.0;
        let laser = LaserParams::from_au(1e-5, photon_ev).unwrap();
        let sol = solve(6, &laser);
        let channels = ionization_channels(&sol, &laser, (-1, -1), true).unwrap();
        let sigma = channels[0].sigma_pi_a0sq.unwrap();
        let oracle = golden_rule_sigma(photon_ev);
        assert!(
            (sigma - oracle).abs() / oracle < 0.01,
            "pipeline σ = {sigma:.6e} vs golden rule {oracle:.6e}"
        );
        let closed = closed_form_sigma(photon_ev);
        assert!(
            (sigma - closed).abs() / closed < 0.02,
            "pipeline σ = {sigma:.6e} vs closed form {closed:.6e}"
        );
    }

    #[test]
    fn weak_field_sigma_is_amplitude_independent() {
        let photon_ev = 20.0;
        let mut sigmas = Vec::new();
        for &a_au in &[1e-5, 1e-4] {
            let laser = LaserParams::from_au(a_au, photon_ev).unwrap();
            let sol = solve(5, &laser);
            let channels = ionization_channels(&sol, &laser, (-1, -1), true).unwrap();
            sigmas.push(channels[0].sigma_pi_a0sq.unwrap());
        }
        assert!(
            (sigmas[0] - sigmas[1]).abs() / sigmas[0] < 0.01,
            "σ across a decade of A: {sigmas:?}"
        );
    }

    #[test]
    fn eta_continuous_in_amplitude() {
        let photon_ev = 2.37;
        let base = 5e-6;
        let eta_of = |a_si: f64| -> f64 {
            let laser = LaserParams::new(a_si, photon_ev).unwrap();
            let sol = solve(5, &laser);
            let channels = photoelectron_energies(&sol, &laser, (-6, -6)).unwrap();
            channels[0].eta
        };
        let e0 = eta_of(base);
        let mut last_diff = f64::INFINITY;
        for &delta in &[1e-7, 1e-8, 1e-10] {
            let diff = (eta_of(base + delta) - e0).abs();
            assert!(
                diff < last_diff,
                "eta drift not shrinking: {diff} vs {last_diff}"
            );
            last_diff = diff;
        }
        assert!(
            last_diff < 1e-4,
            "eta step at the smallest delta: {last_diff}"
        );
    }

    #[test]
    fn scan_records_rows_per_open_and_closed_channel() {
        let grid = [2e-6, 4e-6];
        let table = ionization_scan(4, 2.37, &grid, (-7, 0), true).unwrap();
        for row in &table.rows {
            if let Some(s) = row.channel.sigma_pi_a0sq {
                assert!(s >= 0.0, "negative cross section {s}");
            }
        }
        assert!(table.all_ok());
        assert_eq!(table.rows.len(), 2 * 8);
        // channel spacing identity inside the scan rows
        let omega = ev_to_hartree(2.37);
        let at_first: Vec<_> = table
            .rows
            .iter()
            .filter(|r| r.amplitude_si == 2e-6)
            .collect();
        for w in at_first.windows(2) {
            let d = w[0].channel.e_f0_au - w[1].channel.e_f0_au;
            assert_relative_eq!(d, omega, epsilon = 1e-14);
        }
    }
}
