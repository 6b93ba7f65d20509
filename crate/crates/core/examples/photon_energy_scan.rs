//! Transition-probability spectrum vs photon energy at strong field:
//! the spectrum is continuous, with no isolated resonance peaks.
//!
//! ```bash
//! cargo run --release -p corotate --example photon_energy_scan
//! ```
//!
//! Writes `photon_scan.csv` next to the working directory and prints a
//! compact view. Compare with the weak-field case by lowering `AMPLITUDE`.

use corotate::csvio::{spectrum_csv, write_atomic};
use corotate::model::BasisState;
use corotate::transitions::photon_energy_scan;
use std::path::Path;

const AMPLITUDE: f64 = 5e-6; // V·s/m

fn main() -> corotate::Result<()> {
    let from = BasisState::new(1, 0, 0)?;
    let grid: Vec<f64> = (0..40)
        .map(|i| 0.05 + (0.6 - 0.05) * i as f64 / 39.0)
        .collect();
    let scan = photon_energy_scan(8, AMPLITUDE, &grid, &from, None)?;

    println!("ħω (eV)   total off-diagonal W   strongest target");
    for (x, p) in scan.grid.iter().zip(scan.points.iter()) {
        let p = p.as_ref().expect("all points solve at these parameters");
        let (k_best, w_best) = p
            .weights
            .iter()
            .enumerate()
            .filter(|(k, _)| {
                let t = &scan.targets[*k];
                (t.n, t.l, t.mu) != (1, 0, 0)
            })
            .map(|(k, &w)| (k, w))
            .fold((0, 0.0), |acc, (k, w)| if w > acc.1 { (k, w) } else { acc });
        println!(
            "{x:7.4}   {:<20.6}  ({}) with W = {w_best:.4}",
            p.w_offdiag,
            scan.targets[k_best].label()
        );
    }

    let med = {
        let mut v: Vec<f64> = scan
            .points
            .iter()
            .map(|p| p.as_ref().unwrap().w_offdiag)
            .collect();
        v.sort_by(f64::total_cmp);
        v[v.len() / 2]
    };
    println!("\nmedian off-diagonal mass over the scan: {med:.4} — finite everywhere,");
    println!("no δ-like support: transitions happen at every photon energy.");

    write_atomic(Path::new("photon_scan.csv"), &spectrum_csv(&scan, &[]))?;
    println!("full table written to photon_scan.csv");
    Ok(())
}
