//! Angular algebra for the p̂_x coupling, plus normalized associated
//! Legendre functions used by the quadrature oracles.
//!
//! With the gradient formula, the action of ∂/∂x on f(r)·Y_{lμ} decomposes
//! into Y_{l±1,μ±1} components whose radial parts are (f' − l f/r) for
//! l → l+1 and (f' + (l+1) f/r) for l → l−1. `angular_px_coupling` returns
//! the pure angular coefficient of each component; the i^l phase bookkeeping
//! that makes the full momentum matrix element real lives with the radial
//! factor (see `basis`).

/// Angular coefficient of the Y_{l',μ'} component of ∂_x [f(r) Y_{lμ}].
///
/// Zero unless |l−l'| = 1 and |μ−μ'| = 1 (exactly, by construction).
pub fn angular_px_coupling(l: u32, mu: i32, lp: u32, mup: i32) -> f64 {
    if mu.unsigned_abs() > l || mup.unsigned_abs() > lp {
        return 0.0;
    }
    let dl = lp as i64 - l as i64;
    let dmu = mup as i64 - mu as i64;
    if dl.abs() != 1 || dmu.abs() != 1 {
        return 0.0;
    }
    let lf = l as f64;
    let mf = mu as f64;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    match (dl, dmu) {
        (1, 1) => {
            // -(1/√2) √((l+1)/(2l+3)) ⟨l μ; 1 1 | l+1 μ+1⟩
            let cg = (((lf + mf + 1.0) * (lf + mf + 2.0)) / ((2.0 * lf + 1.0) * (2.0 * lf + 2.0)))
                .sqrt();
            -inv_sqrt2 * ((lf + 1.0) / (2.0 * lf + 3.0)).sqrt() * cg
        }
        (1, -1) => {
            // +(1/√2) √((l+1)/(2l+3)) ⟨l μ; 1 -1 | l+1 μ-1⟩
            let cg = (((lf - mf + 1.0) * (lf - mf + 2.0)) / ((2.0 * lf + 1.0) * (2.0 * lf + 2.0)))
                .sqrt();
            inv_sqrt2 * ((lf + 1.0) / (2.0 * lf + 3.0)).sqrt() * cg
        }
        (-1, 1) => {
            // +(1/√2) √(l/(2l-1)) ⟨l μ; 1 1 | l-1 μ+1⟩
            let cg = (((lf - mf) * (lf - mf - 1.0)) / (2.0 * lf * (2.0 * lf + 1.0))).sqrt();
            inv_sqrt2 * (lf / (2.0 * lf - 1.0)).sqrt() * cg
        }
        (-1, -1) => {
            // -(1/√2) √(l/(2l-1)) ⟨l μ; 1 -1 | l-1 μ-1⟩
            let cg = (((lf + mf) * (lf + mf - 1.0)) / (2.0 * lf * (2.0 * lf + 1.0))).sqrt();
            -inv_sqrt2 * (lf / (2.0 * lf - 1.0)).sqrt() * cg
        }
        _ => unreachable!(),
    }
}

/// Normalized θ part of the spherical harmonic: Y_{lm} = Θ_{lm}(θ)·e^{imφ}/√(2π)
/// with Condon–Shortley phase, so ∫₀^π Θ² sinθ dθ = 1.
///
/// Stable upward recurrence in l on the normalized functions.
pub fn theta_lm(l: u32, m: i32, theta: f64) -> f64 {
    let mm = m.unsigned_abs();
    if mm > l {
        return 0.0;
    }
    let parity = if m < 0 && m.unsigned_abs() % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    let x = theta.cos();
    let s = theta.sin();
    // seed: Θ_{m,m} = (-1)^m √((2m+1)!!/(2(2m)!!)) sin^m θ  (normalized)
    let mut norm2 = 0.5; // m = 0: Θ00 = √(1/2)
    for k in 1..=mm {
        norm2 *= (2.0 * k as f64 + 1.0) / (2.0 * k as f64);
    }
    let mut pmm = norm2.sqrt();
    if mm % 2 == 1 {
        pmm = -pmm;
    }
    pmm *= s.powi(mm as i32);
    if l == mm {
        return parity * pmm;
    }
    // Θ_{m+1,m} = x √(2m+3) Θ_{m,m}
    let mut pm1 = x * (2.0 * mm as f64 + 3.0).sqrt() * pmm;
    if l == mm + 1 {
        return parity * pm1;
    }
    let mf = mm as f64;
    let mut prev = pmm;
    for ll in (mm + 2)..=l {
        let lf = ll as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b =
            (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
        let next = a * (x * pm1 - b * prev);
        prev = pm1;
        pm1 = next;
    }
    parity * pm1
}

/// dΘ_{lm}/dθ via the ladder identity
/// ∂_θ Θ_{lm} = ½ [√((l−m)(l+m+1)) Θ_{l,m+1} − √((l+m)(l−m+1)) Θ_{l,m−1}].
pub fn theta_lm_deriv(l: u32, m: i32, theta: f64) -> f64 {
    let lf = l as f64;
    let mf = m as f64;
    let up = ((lf - mf) * (lf + mf + 1.0)).max(0.0).sqrt();
    let dn = ((lf + mf) * (lf - mf + 1.0)).max(0.0).sqrt();
    0.5 * (up * theta_lm(l, m + 1, theta) - dn * theta_lm(l, m - 1, theta))
}
