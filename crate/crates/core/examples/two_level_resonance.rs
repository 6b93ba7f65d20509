//! The weak-field consistency check: at exact resonance ħω = E₂ − E₁ the
//! driven atom reduces to a two-level system, and the time-averaged
//! transfer probability is exactly 1/2.
//!
//! ```bash
//! cargo run --release -p corotate --example two_level_resonance
//! ```

use corotate::basis::{build_basis, build_pseudo_hamiltonian};
use corotate::eigen::diagonalize;
use corotate::model::{bound_energy, hartree_to_ev, BasisState, LaserParams};
use corotate::transitions::{instantaneous_probability, transition_probabilities};
use std::sync::Arc;

fn main() -> corotate::Result<()> {
    let omega_h = bound_energy(2)? - bound_energy(1)?;
    let photon_ev = hartree_to_ev(omega_h);
    println!("resonant photon energy: {photon_ev:.6} eV\n");

    let basis = Arc::new(build_basis(4)?);
    let laser = LaserParams::from_au(1e-4, photon_ev)?;
    let sol = diagonalize(&build_pseudo_hamiltonian(&basis, &laser)?)?;

    let from = BasisState::new(1, 0, 0)?;
    let to = BasisState::new(2, 1, -1)?;
    let table = transition_probabilities(&sol, &from)?;
    println!("time-averaged probabilities out of 1s:");
    println!(
        "  stay in 1s:        {:.6}",
        table.get(&sol.basis, 1, 0, 0).unwrap()
    );
    println!(
        "  reach 2p (μ = -1): {:.6}",
        table.get(&sol.basis, 2, 1, -1).unwrap()
    );
    println!(
        "  reach 2p (μ = +1): {:.3e}",
        table.get(&sol.basis, 2, 1, 1).unwrap()
    );
    println!("(photon absorption moves μ by -1 in this frame convention)\n");

    // one full population oscillation: w(t) swings 0 → ~1 → 0
    let coupling = {
        // the two-level Rabi half-period is π/(2|V|)
        let i = sol.basis.index_of(1, 0, 0).unwrap();
        let j = sol.basis.index_of(2, 1, -1).unwrap();
        let h = build_pseudo_hamiltonian(&basis, &laser)?;
        h.matrix[(i, j)].abs()
    };
    let t_swap = std::f64::consts::PI / (2.0 * coupling);
    println!("beat samples (population in 2p,μ=-1):");
    for k in 0..=8 {
        let t = t_swap * k as f64 / 4.0;
        let w = instantaneous_probability(&sol, &from, &to, t)?;
        println!("  t = {:>12.1} a.u.   w = {w:.4}", t);
    }
    Ok(())
}
