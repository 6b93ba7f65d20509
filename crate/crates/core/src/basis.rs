//! Truncated hydrogen bound basis and the dense real symmetric
//! pseudo-Hamiltonian in the rotating frame.
//!
//! Basis functions are the bound states ψ_{nlμ} = i^l R_{nl}(r) Y_{lμ}, with
//!
//! ```text
//! R_{nl}(r) = N_{nl} e^{-r/n} r^l ₁F₁(l+1-n; 2l+2; 2r/n)          (a.u.)
//! ```
//!
//! The i^l phase makes every matrix element of the pseudo-Hamiltonian real;
//! it is absorbed into the sign of the radial momentum integral so the whole
//! build stays in real arithmetic.
//!
//! Matrix structure (atomic units, reduced mass 1):
//!
//! * diagonal:   E_n + μ·ω + A²/2
//! * off-diagonal: A · angular_px_coupling · px_radial_element, nonzero only
//!   for |Δl| = 1 and |Δμ| = 1.

use crate::constants::{constants_hash, fnv1a};
use crate::error::{Error, Result};
use crate::model::{BasisState, LaserParams};
use crate::specfun::angular::angular_px_coupling;
use crate::specfun::appell::{laplace_polynomial_dd, LaplaceProductArgs};
use crate::specfun::dd::Dd;
use crate::specfun::gamma::ln_factorial;
use crate::specfun::kummer::{kummer_1f1, kummer_1f1_deriv};
use nalgebra::DMatrix;
use std::collections::HashMap;
use std::sync::Arc;

/// Ordered set of all bound states with n ≤ n0.
#[derive(Debug, Clone)]
pub struct BasisSet {
    pub n0: u32,
    pub states: Vec<BasisState>,
    index: HashMap<(u32, u32, i32), usize>,
}

impl BasisSet {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Row index of a state, if present.
    pub fn index_of(&self, n: u32, l: u32, mu: i32) -> Option<usize> {
        self.index.get(&(n, l, mu)).copied()
    }

    pub fn state(&self, i: usize) -> &BasisState {
        &self.states[i]
    }
}

/// Enumerate all (n, l, μ) with n ≤ n0 in lexicographic (n, l, μ) order.
///
/// Size is Σ_{n=1}^{n0} n² (2109 at n0 = 18).
pub fn build_basis(n0: u32) -> Result<BasisSet> {
    if n0 < 1 {
        return Err(Error::Domain(format!(
            "basis truncation must satisfy n0 >= 1, got {n0}"
        )));
    }
    let mut states = Vec::new();
    let mut index = HashMap::new();
    for n in 1..=n0 {
        for l in 0..n {
            for mu in -(l as i32)..=(l as i32) {
                index.insert((n, l, mu), states.len());
                states.push(BasisState::new(n, l, mu)?);
            }
        }
    }
    Ok(BasisSet { n0, states, index })
}

/// Normalization constant N_{nl} of the bound radial function (log-safe).
fn radial_norm(n: u32, l: u32) -> f64 {
    let nf = n as f64;
    let ln_n = -ln_factorial(2 * l + 1)
        + 0.5 * (ln_factorial(n + l) - (2.0 * nf).ln() - ln_factorial(n - l - 1))
        + (l as f64 + 1.5) * (2.0 / nf).ln();
    ln_n.exp()
}

/// Bound radial function R_{nl}(r) in atomic units.
pub fn bound_radial(n: u32, l: u32, r: f64) -> f64 {
    debug_assert!(n >= 1 && l < n);
    let nf = n as f64;
    let a = l as f64 + 1.0 - nf;
    let c = 2.0 * l as f64 + 2.0;
    let x = 2.0 * r / nf;
    let f = kummer_1f1(a, c, x).expect("polynomial 1F1 cannot fail");
    radial_norm(n, l) * (-r / nf).exp() * r.powi(l as i32) * f
}

/// dR_{nl}/dr.
pub fn bound_radial_deriv(n: u32, l: u32, r: f64) -> f64 {
    debug_assert!(n >= 1 && l < n);
    let nf = n as f64;
    let a = l as f64 + 1.0 - nf;
    let c = 2.0 * l as f64 + 2.0;
    let x = 2.0 * r / nf;
    let f = kummer_1f1(a, c, x).expect("polynomial 1F1 cannot fail");
    let fp = kummer_1f1_deriv(a, c, x).expect("polynomial 1F1 cannot fail");
    let rl = r.powi(l as i32);
    let rl_m1 = if l == 0 {
        0.0
    } else {
        l as f64 * r.powi(l as i32 - 1)
    };
    radial_norm(n, l) * (-r / nf).exp() * (rl_m1 * f - rl * f / nf + rl * fp * 2.0 / nf)
}

/// Radius beyond which R_{nl} (and its derivative) are numerically dead.
pub fn bound_radial_extent(n: u32) -> f64 {
    // e^{-r/n} r^{n+1} < 1e-18 · peak, with generous slack
    let nf = n as f64;
    nf * (45.0 + 3.0 * nf.ln().max(0.0)) + 20.0
}

/// Radial part of the momentum matrix element ⟨n'l'| p̂_x |nl⟩ between bound
/// states, including the i^l phase bookkeeping that makes it real.
///
/// For l' = l+1 the operand carries (d/dr − l/r), for l' = l−1 it carries
/// (d/dr + (l+1)/r); each term reduces to the analytic Laplace product
/// integral with s = (1/n + 1/n')·n/2 and q = n/n' after rescaling to the
/// first state's length scale. Returns exact 0 when |l−l'| ≠ 1.
pub fn px_radial_element(n: u32, l: u32, np: u32, lp: u32) -> Result<f64> {
    if l >= n || lp >= np {
        return Err(Error::Domain(format!(
            "invalid bound labels (n={n}, l={l}), (n'={np}, l'={lp})"
        )));
    }
    let dl = lp as i64 - l as i64;
    if dl.abs() != 1 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let npf = np as f64;
    let a1 = l as f64 + 1.0 - nf; // operand state (n, l)
    let c1 = 2.0 * l as f64 + 2.0;
    let a2 = lp as f64 + 1.0 - npf; // bra state (n', l')
    let c2 = 2.0 * lp as f64 + 2.0;

    // substitution t = 2r/n: r^{p} dr → (n/2)^{p+1} t^{p} dt,
    // e^{-(1/n+1/n')r} → e^{-st} with s = (n+n')/(2n'), second argument q·t
    let s = (nf + npf) / (2.0 * npf);
    let q = nf / npf;
    let half_n = nf / 2.0;

    // Bound-state parameters keep both hypergeometric factors polynomial, so
    // every piece is an exact finite sum; the pieces cancel heavily between
    // high-n states, so they are combined in double-double before scaling.
    let lap = |u: f64, a1x: f64, c1x: f64| -> Dd {
        laplace_polynomial_dd(LaplaceProductArgs {
            s,
            u,
            a1: a1x,
            c1: c1x,
            a2,
            c2,
            q,
        })
    };

    let norm = radial_norm(n, l) * radial_norm(np, lp);
    // the Kummer-derivative term vanishes identically when a₁ = 0 (nodeless
    // radial factor); skip it so a₁+1 never leaves the polynomial regime
    let value = if dl == 1 {
        // ∫ R_{n'l+1} (R' − l R/r) r² dr; both terms carry r^{2l+3}
        let u = 2.0 * l as f64 + 4.0;
        let mut acc = lap(u, a1, c1).mul_f64(-1.0 / nf);
        if a1 != 0.0 {
            acc = acc.add(lap(u, a1 + 1.0, c1 + 1.0).mul_f64(2.0 * a1 / (nf * c1)));
        }
        norm * half_n.powf(u) * acc.to_f64()
    } else {
        // ∫ R_{n'l-1} (R' + (l+1) R/r) r² dr; powers r^{2l} and r^{2l+1}
        let u_lo = 2.0 * l as f64 + 1.0;
        let u_hi = 2.0 * l as f64 + 2.0;
        let mut acc = lap(u_lo, a1, c1).mul_f64((2.0 * l as f64 + 1.0) * half_n.powf(u_lo));
        acc = acc.add(lap(u_hi, a1, c1).mul_f64(-half_n.powf(u_hi) / nf));
        if a1 != 0.0 {
            acc = acc.add(
                lap(u_hi, a1 + 1.0, c1 + 1.0).mul_f64(2.0 * a1 / (nf * c1) * half_n.powf(u_hi)),
            );
        }
        norm * acc.to_f64()
    };

    // i^{l-l'}·(−i) phase product: −1 for l' = l+1, +1 for l' = l−1
    Ok(if dl == 1 { -value } else { value })
}

/// Dense real symmetric pseudo-Hamiltonian in hartree units.
#[derive(Debug, Clone)]
pub struct PseudoHamiltonian {
    pub basis: Arc<BasisSet>,
    pub matrix: DMatrix<f64>,
    pub laser: LaserParams,
    /// k·a₀ of the build, recorded for the dipole-limit check.
    pub dipole_parameter: f64,
}

impl PseudoHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Cache key over (n0, A, ħω, constants snapshot).
    pub fn cache_key(&self) -> u64 {
        hamiltonian_cache_key(self.basis.n0, &self.laser)
    }
}

pub fn hamiltonian_cache_key(n0: u32, laser: &LaserParams) -> u64 {
    let text = format!(
        "n0={n0};a={:016x};w={:016x};c={:016x}",
        laser.amplitude_si.to_bits(),
        laser.photon_ev.to_bits(),
        constants_hash()
    );
    fnv1a(text.as_bytes())
}

/// Hard ceiling on k·a₀; above this the dipole-limit form of the coupling is
/// not defensible and the build refuses.
pub const DIPOLE_HARD_LIMIT: f64 = 0.1;
/// Soft threshold; builds above it succeed but the driver prints a warning.
pub const DIPOLE_WARN_LIMIT: f64 = 1e-2;

/// Assemble H_ps over `basis` for `laser`.
///
/// Off-diagonal part is exactly linear in A; A = 0 produces the diagonal
/// E_n + μω spectrum. The matrix is filled on the upper triangle and
/// mirrored, so H = Hᵀ holds bit-exactly.
pub fn build_pseudo_hamiltonian(
    basis: &Arc<BasisSet>,
    laser: &LaserParams,
) -> Result<PseudoHamiltonian> {
    let ka0 = laser.dipole_parameter();
    if ka0 > DIPOLE_HARD_LIMIT {
        return Err(Error::Domain(format!(
            "dipole limit violated: k·a0 = {ka0:.3e} exceeds {DIPOLE_HARD_LIMIT}"
        )));
    }
    let n = basis.len();
    let omega = laser.omega_au();
    let a_au = laser.amplitude_au;
    let mut m = DMatrix::<f64>::zeros(n, n);

    // radial integrals depend only on (n,l) pairs; memoize across μ
    let mut radial: HashMap<(u32, u32, u32, u32), f64> = HashMap::new();

    for row in 0..n {
        let sa = basis.state(row);
        m[(row, row)] = sa.energy + sa.mu as f64 * omega + 0.5 * a_au * a_au;
        if a_au == 0.0 {
            continue;
        }
        for col in (row + 1)..n {
            let sb = basis.state(col);
            let dl = sb.l as i64 - sa.l as i64;
            let dmu = sb.mu - sa.mu;
            if dl.abs() != 1 || dmu.abs() != 1 {
                continue;
            }
            // operand = column state, bra = row state
            let ang = angular_px_coupling(sb.l, sb.mu, sa.l, sa.mu);
            if ang == 0.0 {
                continue;
            }
            let key = (sb.n, sb.l, sa.n, sa.l);
            let rad = match radial.get(&key) {
                Some(&v) => v,
                None => {
                    let v = px_radial_element(sb.n, sb.l, sa.n, sa.l)?;
                    radial.insert(key, v);
                    v
                }
            };
            let v = a_au * ang * rad;
            m[(row, col)] = v;
            m[(col, row)] = v;
        }
    }

    Ok(PseudoHamiltonian {
        basis: Arc::clone(basis),
        matrix: m,
        laser: *laser,
        dipole_parameter: ka0,
    })
}
