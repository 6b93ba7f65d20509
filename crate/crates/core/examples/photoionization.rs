//! Photoionization below the one-photon threshold: channel energies rise
//! with intensity and the cross section is nonlinear in I.
//!
//! ```bash
//! cargo run --release -p corotate --example photoionization
//! ```
//!
//! ħω = 2.37 eV is far below the 13.6 eV binding energy, so the one-photon
//! channel is closed and a weak field ejects nothing; an intense one feeds
//! the high-|μ| channels and the photoelectron energy becomes intensity
//! dependent.

use corotate::ionization::ionization_channels;
use corotate::model::LaserParams;
use corotate::{basis, eigen};
use std::sync::Arc;

fn main() -> corotate::Result<()> {
    let photon_ev = 2.37;
    let basis = Arc::new(basis::build_basis(10)?);

    // weak field: the only first-order channel (μ = -1) is closed
    let weak = LaserParams::from_au(1e-5, photon_ev)?;
    let sol = eigen::diagonalize(&basis::build_pseudo_hamiltonian(&basis, &weak)?)?;
    let channels = ionization_channels(&sol, &weak, (-1, 1), false)?;
    let one_photon = channels.iter().find(|c| c.mu == -1).unwrap();
    println!(
        "weak field: one-photon channel E_f0 = {:.3} eV -> {}",
        one_photon.e_f0_ev,
        if one_photon.open {
            "open"
        } else {
            "closed (no photoelectrons)"
        }
    );
    println!("(photoemission below the critical frequency needs intensity)\n");

    println!("A_au    I (W/cm²)       μ    E_f0 (eV)   η         σ (π a₀²)    tail");
    for &a_au in &[0.30, 0.35, 0.40, 0.45] {
        let laser = LaserParams::from_au(a_au, photon_ev)?;
        let h = basis::build_pseudo_hamiltonian(&basis, &laser)?;
        let sol = eigen::diagonalize(&h)?;
        let channels = ionization_channels(&sol, &laser, (-6, 1), true)?;
        for ch in channels.iter().filter(|c| c.open) {
            println!(
                "{a_au:.2}   {:>12.4e}  {:>3}   {:>8.4}   {:>8.4}   {:>10.3e}   {:.1e}",
                laser.intensity_w_cm2,
                ch.mu,
                ch.e_f0_ev,
                ch.eta,
                ch.sigma_pi_a0sq.unwrap(),
                ch.tail_estimate
            );
        }
    }
    println!("\nE_f0 of a fixed channel climbs with intensity, spaced exactly ħω apart in μ;");
    println!("η is not an integer: quantum transitions off the Bohr ladder.");
    Ok(())
}
