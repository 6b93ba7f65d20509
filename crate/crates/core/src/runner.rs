//! Run orchestration: cache-aware solving, worker pool sizing, scan
//! execution, and CSV artifact writing for the four pipeline modes.

use crate::basis::{build_basis, build_pseudo_hamiltonian, BasisSet};
use crate::cache::Cache;
use crate::config::{Mode, RunConfig};
use crate::csvio;
use crate::eigen::{diagonalize, ground_state_index, EigenSolution};
use crate::error::{Error, Result};
use crate::ionization;
use crate::model::{BasisState, LaserParams};
use crate::transitions::{self, ScanKind, ScanPoint, SpectrumTable};
use rayon::prelude::*;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

/// What a run produced.
#[derive(Debug)]
pub struct RunOutcome {
    /// 0 = clean, 2 = at least one grid point failed (artifact still written).
    pub exit_code: i32,
    pub out_path: PathBuf,
    pub grid_points: usize,
    pub point_failures: usize,
    pub wall_seconds: f64,
    pub dipole_warning: bool,
}

/// Cache-aware solve of one laser point over a shared basis.
pub fn obtain_solution(
    basis: &Arc<BasisSet>,
    laser: &LaserParams,
    cache: Option<&Cache>,
) -> Result<EigenSolution> {
    if let Some(c) = cache {
        if let Some(sol) = c.load_eigen(basis, laser)? {
            return Ok(sol);
        }
    }
    let h = match cache.and_then(|c| c.load_matrix(basis, laser).transpose()) {
        Some(Ok(h)) => h,
        _ => {
            let h = build_pseudo_hamiltonian(basis, laser)?;
            if let Some(c) = cache {
                c.store_matrix(&h)?;
            }
            h
        }
    };
    let sol = diagonalize(&h)?;
    if let Some(c) = cache {
        c.store_eigen(&sol)?;
    }
    Ok(sol)
}

fn scan_point_from_solution(
    sol: &EigenSolution,
    from: &BasisState,
    targets: &[BasisState],
    x: f64,
) -> Result<ScanPoint> {
    let table = transitions::transition_probabilities(sol, from)?;
    let track = ground_state_index(sol)?;
    let omega = sol.laser.omega_au();
    let basis = &sol.basis;
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
        .ok_or_else(|| Error::Domain(format!("initial state {} not in basis", from.label())))?;
    Ok(ScanPoint {
        x,
        laser: sol.laser,
        ground_energy: sol.energies[track.index],
        ground_overlap: track.overlap,
        ground_ambiguous: track.ambiguous,
        residual: sol.residual_norm,
        weights,
        etas,
        w_offdiag: 1.0 - table.weights[from_idx],
    })
}

fn run_transition_scan(config: &RunConfig, cache: Option<&Cache>) -> Result<SpectrumTable> {
    let basis = Arc::new(build_basis(config.n0)?);
    let from = BasisState::new(config.from.0, config.from.1, config.from.2)?;
    let targets = config.targets.resolve(config.n0)?;
    let grid = config.grid.points();
    let kind = match config.mode {
        Mode::Spectrum => ScanKind::PhotonEnergy,
        Mode::Intensity => ScanKind::Intensity,
        _ => unreachable!("transition scan modes only"),
    };

    let results: Vec<std::result::Result<ScanPoint, String>> = grid
        .par_iter()
        .map(|&x| {
            (|| -> Result<ScanPoint> {
                let laser = match kind {
                    ScanKind::PhotonEnergy => LaserParams::new(config.amplitude_si, x)?,
                    ScanKind::Intensity => LaserParams::new(x, config.photon_ev)?,
                };
                let sol = obtain_solution(&basis, &laser, cache)?;
                scan_point_from_solution(&sol, &from, &targets, x)
            })()
            .map_err(|e| e.to_string())
        })
        .collect();

    let mut points = Vec::with_capacity(grid.len());
    let mut errors = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(p) => points.push(Some(p)),
            Err(m) => {
                points.push(None);
                errors.push((i, m));
            }
        }
    }
    Ok(SpectrumTable {
        kind,
        n0: config.n0,
        from,
        targets,
        fixed_amplitude_si: (kind == ScanKind::PhotonEnergy).then_some(config.amplitude_si),
        fixed_photon_ev: (kind == ScanKind::Intensity).then_some(config.photon_ev),
        grid,
        points,
        errors,
    })
}

fn run_ionization_scan(
    config: &RunConfig,
    cache: Option<&Cache>,
) -> Result<ionization::IonizationTable> {
    let basis = Arc::new(build_basis(config.n0)?);
    let grid = config.grid.points();
    let results: Vec<std::result::Result<Vec<ionization::IonizationScanRow>, String>> = grid
        .par_iter()
        .map(|&a_si| {
            (|| -> Result<Vec<ionization::IonizationScanRow>> {
                let laser = LaserParams::new(a_si, config.photon_ev)?;
                let sol = obtain_solution(&basis, &laser, cache)?;
                let track = ground_state_index(&sol)?;
                let channels =
                    ionization::ionization_channels(&sol, &laser, config.mu_window, true)?;
                Ok(channels
                    .into_iter()
                    .map(|channel| ionization::IonizationScanRow {
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
            Err(m) => errors.push((i, m)),
        }
    }
    Ok(ionization::IonizationTable {
        n0: config.n0,
        photon_ev: config.photon_ev,
        mu_window: config.mu_window,
        grid_amplitude_si: grid,
        rows,
        errors,
    })
}

/// Execute a validated configuration and write its artifact.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let started = Instant::now();

    let cache = match &config.cache_dir {
        Some(dir) => Some(Cache::open(dir)?),
        None => None,
    };

    let execute = || -> Result<(String, usize, usize, bool)> {
        match config.mode {
            Mode::Eigen => {
                let basis = Arc::new(build_basis(config.n0)?);
                let laser = LaserParams::new(config.amplitude_si, config.photon_ev)?;
                let warn = laser.dipole_parameter() > crate::basis::DIPOLE_WARN_LIMIT;
                let sol = obtain_solution(&basis, &laser, cache.as_ref())?;
                Ok((csvio::eigen_csv(&sol, &config.provenance), 1, 0, warn))
            }
            Mode::Spectrum | Mode::Intensity => {
                let table = run_transition_scan(config, cache.as_ref())?;
                let warn = table
                    .points
                    .iter()
                    .flatten()
                    .any(|p| p.laser.dipole_parameter() > crate::basis::DIPOLE_WARN_LIMIT);
                let failures = table.errors.len();
                Ok((
                    csvio::spectrum_csv(&table, &config.provenance),
                    table.grid.len(),
                    failures,
                    warn,
                ))
            }
            Mode::Ionize => {
                let table = run_ionization_scan(config, cache.as_ref())?;
                let laser_probe = LaserParams::new(1e-9, config.photon_ev)?;
                let warn = laser_probe.dipole_parameter() > crate::basis::DIPOLE_WARN_LIMIT;
                let failures = table.errors.len();
                Ok((
                    csvio::ionization_csv(&table, &config.provenance),
                    table.grid_amplitude_si.len(),
                    failures,
                    warn,
                ))
            }
        }
    };

    // size the worker pool without touching the global one
    let (content, grid_points, point_failures, dipole_warning) = if config.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
        pool.install(execute)?
    } else {
        execute()?
    };

    csvio::write_atomic(&config.out, &content)?;

    Ok(RunOutcome {
        exit_code: if point_failures == 0 { 0 } else { 2 },
        out_path: config.out.clone(),
        grid_points,
        point_failures,
        wall_seconds: started.elapsed().as_secs_f64(),
        dipole_warning,
    })
}
