//! Pseudo-energy levels of the driven atom, with and without the field.
//!
//! ```bash
//! cargo run --release -p corotate --example eigen_levels
//! ```
//!
//! At A = 0 the spectrum is the bare E_n + μ·ħω ladder of the rotating
//! frame; switching the field on shifts everything by A²/2 and repels the
//! coupled levels.

use corotate::basis::{build_basis, build_pseudo_hamiltonian};
use corotate::eigen::{diagonalize, ground_state_index};
use corotate::model::LaserParams;
use std::sync::Arc;

fn main() -> corotate::Result<()> {
    let basis = Arc::new(build_basis(3)?);
    println!("basis: n0 = 3, {} states\n", basis.len());

    for &amplitude in &[0.0, 5e-6] {
        let laser = LaserParams::new(amplitude, 0.296)?;
        let h = build_pseudo_hamiltonian(&basis, &laser)?;
        let sol = diagonalize(&h)?;
        let track = ground_state_index(&sol)?;
        println!(
            "A = {amplitude:>7.1e} V·s/m  (A_au = {:.4}, I = {:.3e} W/cm²)",
            laser.amplitude_au, laser.intensity_w_cm2
        );
        println!("  residual: {:.2e}", sol.residual_norm);
        println!(
            "  tracked ground level: #{} at {:+.6} hartree (overlap {:.4}{})",
            track.index,
            sol.energies[track.index],
            track.overlap,
            if track.ambiguous { ", AMBIGUOUS" } else { "" }
        );
        println!("  lowest pseudo-energies (hartree):");
        for i in 0..6.min(sol.dim()) {
            // dominant basis state of each level
            let mut best = 0;
            let mut best_w = -1.0;
            for r in 0..sol.dim() {
                let w = sol.coeff(r, i).powi(2);
                if w > best_w {
                    best_w = w;
                    best = r;
                }
            }
            let s = sol.basis.state(best);
            println!(
                "    #{i}: {:+.8}   mostly ({},{},{:+}) with weight {:.3}",
                sol.energies[i], s.n, s.l, s.mu, best_w
            );
        }
        println!();
    }
    Ok(())
}
