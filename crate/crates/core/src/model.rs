//! Shared domain types: bound-state labels, laser parameters, unit bridges.

use crate::constants::CODATA;
use crate::error::{Error, Result};

/// Unperturbed bound energy of level `n`, in hartree (reduced-mass units).
///
/// ```text
/// E_n = -1/(2 n²)
/// ```
pub fn bound_energy(n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain(format!(
            "principal quantum number must satisfy n >= 1, got {n}"
        )));
    }
    let nf = n as f64;
    Ok(-0.5 / (nf * nf))
}

/// Convert a vector-potential amplitude from SI (V·s/m) to atomic units.
pub fn amplitude_to_au(a_si: f64) -> Result<f64> {
    if !(a_si >= 0.0) {
        return Err(Error::Domain(format!(
            "vector potential amplitude must be >= 0, got {a_si}"
        )));
    }
    Ok(a_si / CODATA.vector_potential_au_si)
}

/// Inverse of [`amplitude_to_au`].
pub fn amplitude_to_si(a_au: f64) -> Result<f64> {
    if !(a_au >= 0.0) {
        return Err(Error::Domain(format!(
            "vector potential amplitude must be >= 0, got {a_au}"
        )));
    }
    Ok(a_au * CODATA.vector_potential_au_si)
}

pub fn hartree_to_ev(e: f64) -> f64 {
    e * CODATA.hartree_ev
}

pub fn ev_to_hartree(e: f64) -> f64 {
    e / CODATA.hartree_ev
}

/// One hydrogen bound state label (n, l, μ) plus its unperturbed energy.
///
/// This is the row/column label of every matrix in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisState {
    pub n: u32,
    pub l: u32,
    pub mu: i32,
    /// Unperturbed energy in hartree: −1/(2n²).
    pub energy: f64,
}

impl BasisState {
    pub fn new(n: u32, l: u32, mu: i32) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain(format!("n must be >= 1, got {n}")));
        }
        if l >= n {
            return Err(Error::Domain(format!(
                "l must satisfy 0 <= l < n, got l={l}, n={n}"
            )));
        }
        if mu.unsigned_abs() > l {
            return Err(Error::Domain(format!(
                "mu must satisfy -l <= mu <= l, got mu={mu}, l={l}"
            )));
        }
        Ok(BasisState {
            n,
            l,
            mu,
            energy: bound_energy(n)?,
        })
    }

    /// Compact `n,l,mu` label used in CSV column names.
    pub fn label(&self) -> String {
        format!("{},{},{}", self.n, self.l, self.mu)
    }
}

/// Circular-polarization laser parameters.
///
/// Stored in both SI (for I/O) and atomic units (for everything else).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserParams {
    /// Vector potential amplitude in V·s/m.
    pub amplitude_si: f64,
    /// Photon energy in eV.
    pub photon_ev: f64,
    /// Amplitude in atomic units (coupling strength).
    pub amplitude_au: f64,
    /// Time-averaged intensity in W/cm², reporting only.
    pub intensity_w_cm2: f64,
}

impl LaserParams {
    pub fn new(amplitude_si: f64, photon_ev: f64) -> Result<Self> {
        if !(amplitude_si >= 0.0) {
            return Err(Error::Domain(format!(
                "amplitude must be >= 0 V·s/m, got {amplitude_si}"
            )));
        }
        if !(photon_ev > 0.0) {
            return Err(Error::Domain(format!(
                "photon energy must be > 0 eV, got {photon_ev}"
            )));
        }
        let mut laser = LaserParams {
            amplitude_si,
            photon_ev,
            amplitude_au: amplitude_to_au(amplitude_si)?,
            intensity_w_cm2: 0.0,
        };
        laser.intensity_w_cm2 = intensity_of(&laser);
        Ok(laser)
    }

    /// Build directly from an atomic-unit amplitude.
    pub fn from_au(amplitude_au: f64, photon_ev: f64) -> Result<Self> {
        Self::new(amplitude_to_si(amplitude_au)?, photon_ev)
    }

    /// Photon energy ħω in hartree.
    pub fn omega_au(&self) -> f64 {
        ev_to_hartree(self.photon_ev)
    }

    /// Dipole-limit parameter k·a₀ = ω_au·α.
    pub fn dipole_parameter(&self) -> f64 {
        self.omega_au() * CODATA.fine_structure_alpha
    }
}

/// Time-averaged intensity of the circular wave, in W/cm².
///
/// The electric field magnitude of the circular wave is constant, E = ωA, so
/// the Poynting flux is I = ε₀·c·ω²·A² with no factor 1/2. The convention is
/// echoed into every output header; every intensity-dependence statement in
/// this crate is invariant under a linear rescaling of the axis, so nothing
/// downstream hinges on it.
pub fn intensity_of(laser: &LaserParams) -> f64 {
    let omega_si = laser.photon_ev * CODATA.elementary_charge / CODATA.hbar;
    let w_m2 = CODATA.vacuum_permittivity
        * CODATA.speed_of_light
        * omega_si
        * omega_si
        * laser.amplitude_si
        * laser.amplitude_si;
    w_m2 * 1e-4
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ground_energy_is_half_hartree() {
        assert_eq!(bound_energy(1).unwrap(), -0.5);
        // against α²mc²/2 evaluated from pinned constants: 1 hartree = α²mc²,
        // so in eV the ground energy is -hartree_ev/2
        let ev = hartree_to_ev(bound_energy(1).unwrap());
        assert_relative_eq!(ev, -13.6057, max_relative = 1e-4);
    }

    #[test]
    fn excited_energies_scale_as_inverse_n_squared() {
        assert_eq!(bound_energy(2).unwrap(), -0.125);
        let ratio = bound_energy(1).unwrap() / bound_energy(4).unwrap();
        assert_eq!(ratio, 16.0);
    }

    #[test]
    fn bound_energy_rejects_n_zero() {
        assert!(bound_energy(0).is_err());
    }

    #[test]
    fn amplitude_conversion_matches_independent_oracle() {
        assert_eq!(amplitude_to_au(0.0).unwrap(), 0.0);
        // oracle: recompute ħ/(e·a₀) from raw CODATA literals
        let unit = 1.054571817e-34 / (1.602176634e-19 * 5.29177210903e-11);
        assert_relative_eq!(
            amplitude_to_au(1.24384e-5).unwrap(),
            1.24384e-5 / unit,
            epsilon = 1e-12
        );
        assert!((amplitude_to_au(1.24384e-5).unwrap() - 1.0).abs() < 1e-4);
        // the amplitude used throughout the strong-field figures
        assert_relative_eq!(amplitude_to_au(5e-6).unwrap(), 0.402, max_relative = 1e-3);
        assert!(amplitude_to_au(-1.0).is_err());
    }

    #[test]
    fn amplitude_round_trip() {
        for &a in &[0.0, 1e-9, 5e-6, 1.24384e-5, 3.3e-4] {
            let back = amplitude_to_si(amplitude_to_au(a).unwrap()).unwrap();
            if a == 0.0 {
                assert_eq!(back, 0.0);
            } else {
                assert!((back - a).abs() / a < 1e-12);
            }
        }
    }

    #[test]
    fn intensity_zero_field_and_quadratic_scaling() {
        let z = LaserParams::new(0.0, 0.296).unwrap();
        assert_eq!(intensity_of(&z), 0.0);
        let a = LaserParams::new(2e-6, 0.296).unwrap();
        let b = LaserParams::new(4e-6, 0.296).unwrap();
        assert_relative_eq!(intensity_of(&b) / intensity_of(&a), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn intensity_matches_si_oracle() {
        // direct ε₀ c ω² A² evaluation from raw literals
        let laser = LaserParams::new(5e-6, 0.296).unwrap();
        let omega = 0.296 * 1.602176634e-19 / 1.054571817e-34;
        let oracle = 8.8541878128e-12 * 299792458.0 * omega * omega * 25e-12 * 1e-4;
        assert_relative_eq!(intensity_of(&laser), oracle, max_relative = 1e-12);
    }

    #[test]
    fn laser_params_are_pure() {
        let a = LaserParams::new(5e-6, 0.296).unwrap();
        let b = LaserParams::new(5e-6, 0.296).unwrap();
        assert_eq!(a.amplitude_au.to_bits(), b.amplitude_au.to_bits());
        assert_eq!(a.intensity_w_cm2.to_bits(), b.intensity_w_cm2.to_bits());
    }

    #[test]
    fn basis_state_validation() {
        assert!(BasisState::new(2, 1, -1).is_ok());
        assert!(BasisState::new(2, 2, 0).is_err());
        assert!(BasisState::new(2, 1, 2).is_err());
        assert!(BasisState::new(0, 0, 0).is_err());
        let s = BasisState::new(3, 1, 0).unwrap();
        assert_eq!(s.energy, bound_energy(3).unwrap());
    }
}
