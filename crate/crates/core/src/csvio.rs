//! CSV export with full-parameter headers and atomic file writes.
//!
//! Every file opens with `#`-prefixed header lines echoing the constants
//! snapshot (plus hash) and the complete run parameters, so any output is
//! reproducible from its own header. Numbers are serialized with 17
//! significant digits, which round-trips f64 bit-exactly and makes reruns
//! diffable.

use crate::constants::constants_header_line;
use crate::eigen::EigenSolution;
use crate::error::{Error, Result};
use crate::ionization::IonizationTable;
use crate::transitions::{ScanKind, SpectrumTable};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// 17-significant-digit scientific notation (bit-stable across runs).
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Write a whole file atomically: temp file in the same directory, then
/// rename. No partially written output can ever appear at `path`.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        if !dir.exists() {
            return Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("output directory {} does not exist", dir.display()),
            )));
        }
    }
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Config(format!("invalid output path {}", path.display())))?;
    let tmp = path.with_file_name(format!(
        ".{}.tmp-{}",
        file_name.to_string_lossy(),
        std::process::id()
    ));
    let mut f = std::fs::File::create(&tmp)?;
    f.write_all(content.as_bytes())?;
    f.sync_all()?;
    drop(f);
    match std::fs::rename(&tmp, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = std::fs::remove_file(&tmp);
            Err(Error::Io(e))
        }
    }
}

fn push_common_header(out: &mut String, mode: &str, provenance: &[(String, String)]) {
    let _ = writeln!(out, "# corotate v{} mode={mode}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# constants: {}", constants_header_line());
    let _ = writeln!(
        out,
        "# intensity_convention: I = eps0*c*omega^2*A^2 (time-averaged circular wave), reported in W/cm^2"
    );
    if !provenance.is_empty() {
        let mut line = String::from("# provenance:");
        for (k, src) in provenance {
            let _ = write!(line, " {k}={src}");
        }
        let _ = writeln!(out, "{line}");
    }
}

/// Spectrum / intensity scan table → CSV text.
pub fn spectrum_csv(table: &SpectrumTable, provenance: &[(String, String)]) -> String {
    let mut out = String::new();
    let mode = match table.kind {
        ScanKind::PhotonEnergy => "spectrum",
        ScanKind::Intensity => "intensity",
    };
    push_common_header(&mut out, mode, provenance);
    let _ = write!(out, "# params: n0={} from={}", table.n0, table.from.label());
    if let Some(a) = table.fixed_amplitude_si {
        let _ = write!(out, " amplitude_si={}", fmt_g17(a));
    }
    if let Some(ev) = table.fixed_photon_ev {
        let _ = write!(out, " photon_ev={}", fmt_g17(ev));
    }
    let _ = writeln!(out, " grid_points={}", table.grid.len());
    let target_labels: Vec<String> = table
        .targets
        .iter()
        .map(|t| t.label().replace(',', "_"))
        .collect();

    let x_name = match table.kind {
        ScanKind::PhotonEnergy => "photon_ev",
        ScanKind::Intensity => "amplitude_si",
    };
    let mut cols = vec![
        x_name.to_string(),
        "intensity_w_cm2".into(),
        "ground_energy_hartree".into(),
        "ground_overlap".into(),
        "ambiguous".into(),
    ];
    for t in &target_labels {
        cols.push(format!("w_{t}"));
    }
    for t in &target_labels {
        cols.push(format!("eta_{t}"));
    }
    cols.extend([
        "w_offdiag".into(),
        "residual".into(),
        "n0".into(),
        "status".to_string(),
    ]);
    let _ = writeln!(out, "{}", cols.join(","));

    for (i, point) in table.points.iter().enumerate() {
        match point {
            Some(p) => {
                let mut row = vec![
                    fmt_g17(p.x),
                    fmt_g17(p.laser.intensity_w_cm2),
                    fmt_g17(p.ground_energy),
                    fmt_g17(p.ground_overlap),
                    if p.ground_ambiguous {
                        "1".into()
                    } else {
                        "0".into()
                    },
                ];
                row.extend(p.weights.iter().map(|&w| fmt_g17(w)));
                row.extend(p.etas.iter().map(|&e| fmt_g17(e)));
                row.push(fmt_g17(p.w_offdiag));
                row.push(fmt_g17(p.residual));
                row.push(table.n0.to_string());
                row.push("ok".into());
                let _ = writeln!(out, "{}", row.join(","));
            }
            None => {
                let msg = table
                    .errors
                    .iter()
                    .find(|(j, _)| *j == i)
                    .map(|(_, m)| m.clone())
                    .unwrap_or_else(|| "unknown failure".into());
                let empty = 2 * table.targets.len() + 6;
                let mut row = vec![fmt_g17(table.grid[i])];
                row.extend(std::iter::repeat_n(String::new(), empty));
                row.push(table.n0.to_string());
                row.push(format!("error: {}", msg.replace(',', ";")));
                let _ = writeln!(out, "{}", row.join(","));
            }
        }
    }
    out
}

/// Ionization scan table → CSV text.
pub fn ionization_csv(table: &IonizationTable, provenance: &[(String, String)]) -> String {
    let mut out = String::new();
    push_common_header(&mut out, "ionize", provenance);
    let _ = writeln!(
        out,
        "# params: n0={} photon_ev={} mu_window={}:{} grid_points={} continuum_normalization=energy_delta \
         partial_wave_tail_threshold=1e-6",
        table.n0,
        fmt_g17(table.photon_ev),
        table.mu_window.0,
        table.mu_window.1,
        table.grid_amplitude_si.len()
    );
    let _ = writeln!(
        out,
        "amplitude_si,intensity_w_cm2,mu,e_f0_ev,eta,open,sigma_pi_a0sq,tail_estimate,\
         ground_energy_hartree,ground_overlap,ambiguous,residual,status"
    );
    for row in &table.rows {
        let ch = &row.channel;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},ok",
            fmt_g17(row.amplitude_si),
            fmt_g17(row.intensity_w_cm2),
            ch.mu,
            fmt_g17(ch.e_f0_ev),
            fmt_g17(ch.eta),
            if ch.open { 1 } else { 0 },
            ch.sigma_pi_a0sq.map(fmt_g17).unwrap_or_default(),
            fmt_g17(ch.tail_estimate),
            fmt_g17(row.ground_energy),
            fmt_g17(row.ground_overlap),
            if row.ground_ambiguous { 1 } else { 0 },
            fmt_g17(row.residual),
        );
    }
    for (i, msg) in &table.errors {
        let _ = writeln!(
            out,
            "{},,,,,,,,,,,,error: {}",
            fmt_g17(table.grid_amplitude_si[*i]),
            msg.replace(',', ";")
        );
    }
    out
}

/// Eigen-level table → CSV text.
pub fn eigen_csv(sol: &EigenSolution, provenance: &[(String, String)]) -> String {
    let mut out = String::new();
    push_common_header(&mut out, "eigen", provenance);
    let _ = writeln!(
        out,
        "# params: n0={} amplitude_si={} photon_ev={} residual={}",
        sol.basis.n0,
        fmt_g17(sol.laser.amplitude_si),
        fmt_g17(sol.laser.photon_ev),
        fmt_g17(sol.residual_norm)
    );
    let _ = writeln!(
        out,
        "index,energy_hartree,energy_ev,dominant_n,dominant_l,dominant_mu,dominant_weight"
    );
    for i in 0..sol.dim() {
        let mut best = 0usize;
        let mut best_w = -1.0;
        for r in 0..sol.dim() {
            let w = sol.coeff(r, i) * sol.coeff(r, i);
            if w > best_w {
                best_w = w;
                best = r;
            }
        }
        let s = sol.basis.state(best);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            i,
            fmt_g17(sol.energies[i]),
            fmt_g17(crate::model::hartree_to_ev(sol.energies[i])),
            s.n,
            s.l,
            s.mu,
            fmt_g17(best_w)
        );
    }
    out
}
