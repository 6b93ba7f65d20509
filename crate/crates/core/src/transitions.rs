//! Bound-bound transition probabilities and their spectra.
//!
//! For an atom prepared in basis state a, the observed (time-averaged)
//! probability of finding it in state b is
//!
//! ```text
//! W_{b;a} = Σ_i C_a(i)² C_b(i)²
//! ```
//!
//! which is doubly stochastic by the two normalizations of the eigenvector
//! matrix. The instantaneous probability before averaging is a multi-periodic
//! beat pattern over the pseudo-energy differences.
//!
//! Scans re-diagonalize at every grid point: no perturbative continuation is
//! used anywhere, which is the point of the method.

use crate::basis::{build_basis, build_pseudo_hamiltonian, BasisSet};
use crate::eigen::{diagonalize, ground_state_index, EigenSolution};
use crate::error::{Error, Result};
use crate::model::{BasisState, LaserParams};
use nalgebra::DMatrix;
use rayon::prelude::*;
use std::sync::Arc;

/// Time-averaged transition probabilities from one initial state.
#[derive(Debug, Clone)]
pub struct TransitionTable {
    pub from: BasisState,
    /// W per target, aligned with the basis ordering.
    pub weights: Vec<f64>,
    pub laser: LaserParams,
    pub n0: u32,
}

impl TransitionTable {
    pub fn get(&self, basis: &BasisSet, n: u32, l: u32, mu: i32) -> Option<f64> {
        basis.index_of(n, l, mu).map(|i| self.weights[i])
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// W row for `from` via the squared-coefficient contraction.
pub fn transition_probabilities(sol: &EigenSolution, from: &BasisState) -> Result<TransitionTable> {
    let a = sol
        .basis
        .index_of(from.n, from.l, from.mu)
        .ok_or_else(|| Error::Domain(format!("initial state {} not in basis", from.label())))?;
    let n = sol.dim();
    let mut weights = vec![0.0f64; n];
    for i in 0..n {
        let ca2 = sol.coeff(a, i) * sol.coeff(a, i);
        if ca2 == 0.0 {
            continue;
        }
        for (b, wb) in weights.iter_mut().enumerate() {
            let cb = sol.coeff(b, i);
            *wb += ca2 * cb * cb;
        }
    }
    Ok(TransitionTable {
        from: *from,
        weights,
        laser: sol.laser,
        n0: sol.basis.n0,
    })
}

/// The full doubly stochastic W matrix (S·Sᵀ with S the elementwise-squared
/// eigenvector matrix).
pub fn full_w_matrix(sol: &EigenSolution) -> DMatrix<f64> {
    let n = sol.dim();
    let mut s = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = sol.vectors[(i, j)];
            s[(i, j)] = c * c;
        }
    }
    &s * s.transpose()
}

/// Instantaneous transition probability w(t), t in atomic units of time.
///
/// ```text
/// w(t) = |Σ_i C_a(i) C_b(i) e^{-i(E_i - μ_b ω)t}|²
/// ```
pub fn instantaneous_probability(
    sol: &EigenSolution,
    from: &BasisState,
    to: &BasisState,
    t: f64,
) -> Result<f64> {
    let a = sol
        .basis
        .index_of(from.n, from.l, from.mu)
        .ok_or_else(|| Error::Domain(format!("initial state {} not in basis", from.label())))?;
    let b = sol
        .basis
        .index_of(to.n, to.l, to.mu)
        .ok_or_else(|| Error::Domain(format!("final state {} not in basis", to.label())))?;
    let omega = sol.laser.omega_au();
    let mu_b = to.mu as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for i in 0..sol.dim() {
        let d = sol.coeff(a, i) * sol.coeff(b, i);
        if d == 0.0 {
            continue;
        }
        let phase = -(sol.energies[i] - mu_b * omega) * t;
        re += d * phase.cos();
        im += d * phase.sin();
    }
    Ok(re * re + im * im)
}

/// Scan axis of a [`SpectrumTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanKind {
    /// x = photon energy (eV) at fixed amplitude.
    PhotonEnergy,
    /// x = vector-potential amplitude (V·s/m) at fixed photon energy.
    Intensity,
}

/// One fully solved grid point.
#[derive(Debug, Clone)]
pub struct ScanPoint {
    pub x: f64,
    pub laser: LaserParams,
    /// Tracked ground pseudo-energy E_i (hartree) and its overlap.
    pub ground_energy: f64,
    pub ground_overlap: f64,
    pub ground_ambiguous: bool,
    pub residual: f64,
    /// W per target (same order as `SpectrumTable::targets`).
    pub weights: Vec<f64>,
    /// η = (E_target − E_from)/ħω per target, reported unrounded.
    pub etas: Vec<f64>,
    /// Total off-diagonal mass 1 − W_{from→from}.
    pub w_offdiag: f64,
}

/// Result of a photon-energy or intensity scan.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    pub kind: ScanKind,
    pub n0: u32,
    pub from: BasisState,
    pub targets: Vec<BasisState>,
    /// Fixed amplitude (photon scans) in V·s/m.
    pub fixed_amplitude_si: Option<f64>,
    /// Fixed photon energy (intensity scans) in eV.
    pub fixed_photon_ev: Option<f64>,
    pub grid: Vec<f64>,
    /// One entry per grid point; `None` where the pipeline failed.
    pub points: Vec<Option<ScanPoint>>,
    /// (grid index, message) for every failed point.
    pub errors: Vec<(usize, String)>,
}

impl SpectrumTable {
    pub fn all_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Default target set: every state with n ≤ 4 (or ≤ n0 when smaller).
pub fn default_targets(n0: u32) -> Vec<BasisState> {
    let cap = n0.min(4);
    let basis = build_basis(cap).expect("n0 >= 1");
    basis.states
}

fn solve_point(
    basis: &Arc<BasisSet>,
    laser: &LaserParams,
    from: &BasisState,
    targets: &[BasisState],
    x: f64,
) -> Result<ScanPoint> {
    let h = build_pseudo_hamiltonian(basis, laser)?;
    let sol = diagonalize(&h)?;
    let table = transition_probabilities(&sol, from)?;
    let track = ground_state_index(&sol)?;
    let omega = laser.omega_au();
    let mut weights = Vec::with_capacity(targets.len());
    let mut etas = Vec::with_capacity(targets.len());
    for t in targets {
        let idx = basis
            .index_of(t.n, t.l, t.mu)
            .ok_or_else(|| Error::Domain(format!("target {} not in basis", t.label())))?;
        weights.push(table.weights[idx]);
        etas.push((t.energy - from.energy) / omega);
    }
    let from_idx = basis
        .index_of(from.n, from.l, from.mu)
        .expect("validated above");
    Ok(ScanPoint {
        x,
        laser: *laser,
        ground_energy: sol.energies[track.index],
        ground_overlap: track.overlap,
        ground_ambiguous: track.ambiguous,
        residual: sol.residual_norm,
        weights,
        etas,
        w_offdiag: 1.0 - table.weights[from_idx],
    })
}

#[allow(clippy::too_many_arguments)]
fn run_scan<F>(
    kind: ScanKind,
    n0: u32,
    grid: Vec<f64>,
    from: BasisState,
    targets: Option<Vec<BasisState>>,
    fixed_amplitude_si: Option<f64>,
    fixed_photon_ev: Option<f64>,
    laser_of: F,
) -> Result<SpectrumTable>
where
    F: Fn(f64) -> Result<LaserParams> + Sync,
{
    if grid.is_empty() {
        return Err(Error::Domain("scan grid must not be empty".into()));
    }
    let basis = Arc::new(build_basis(n0)?);
    if basis.index_of(from.n, from.l, from.mu).is_none() {
        return Err(Error::Domain(format!(
            "initial state {} outside the n0={n0} basis",
            from.label()
        )));
    }
    let targets = targets.unwrap_or_else(|| default_targets(n0));
    for t in &targets {
        if basis.index_of(t.n, t.l, t.mu).is_none() {
            return Err(Error::Domain(format!(
                "target {} outside the n0={n0} basis",
                t.label()
            )));
        }
    }

    // grid points are independent; results are merged back in grid order
    let results: Vec<std::result::Result<ScanPoint, String>> = grid
        .par_iter()
        .map(|&x| {
            laser_of(x)
                .and_then(|laser| solve_point(&basis, &laser, &from, &targets, x))
                .map_err(|e| e.to_string())
        })
        .collect();

    let mut points = Vec::with_capacity(grid.len());
    let mut errors = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(p) => points.push(Some(p)),
            Err(msg) => {
                points.push(None);
                errors.push((i, msg));
            }
        }
    }
    Ok(SpectrumTable {
        kind,
        n0,
        from,
        targets,
        fixed_amplitude_si,
        fixed_photon_ev,
        grid,
        points,
        errors,
    })
}

/// One full pipeline run (build → diagonalize → W) per photon energy.
pub fn photon_energy_scan(
    n0: u32,
    amplitude_si: f64,
    photon_grid_ev: &[f64],
    from: &BasisState,
    targets: Option<Vec<BasisState>>,
) -> Result<SpectrumTable> {
    run_scan(
        ScanKind::PhotonEnergy,
        n0,
        photon_grid_ev.to_vec(),
        *from,
        targets,
        Some(amplitude_si),
        None,
        move |ev| LaserParams::new(amplitude_si, ev),
    )
}

/// One full pipeline run per amplitude point at fixed photon energy.
pub fn intensity_scan(
    n0: u32,
    photon_ev: f64,
    amplitude_grid_si: &[f64],
    from: &BasisState,
    targets: Option<Vec<BasisState>>,
) -> Result<SpectrumTable> {
    run_scan(
        ScanKind::Intensity,
        n0,
        amplitude_grid_si.to_vec(),
        *from,
        targets,
        None,
        Some(photon_ev),
        move |a| LaserParams::new(a, photon_ev),
    )
}
