//! Full-spectrum diagonalization of the dense real symmetric
//! pseudo-Hamiltonian, with certified residuals and deterministic output.
//!
//! The production path is a Householder tridiagonalization + implicit-shift
//! QL solver (via nalgebra). A cyclic Jacobi solver is kept alongside as the
//! independent cross-check for small instances.

use crate::basis::PseudoHamiltonian;
use crate::error::{Error, Result};
use crate::model::BasisState;
use nalgebra::DMatrix;
use std::sync::Arc;

/// Relative residual bound certified by [`diagonalize`]:
/// ‖H v_i − E_i v_i‖₂ ≤ RESIDUAL_BOUND · ‖H‖_F for every i.
pub const RESIDUAL_BOUND: f64 = 1e-10;

/// Eigen-decomposition of one pseudo-Hamiltonian.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    /// Pseudo-energies, ascending (hartree).
    pub energies: Vec<f64>,
    /// Column i is the coefficient vector C_{nlμ}(i) over the basis order.
    pub vectors: DMatrix<f64>,
    pub basis: Arc<crate::basis::BasisSet>,
    /// Laser the matrix was built for.
    pub laser: crate::model::LaserParams,
    /// Certified max relative residual of the returned pairs.
    pub residual_norm: f64,
}

/// Ground-state tracking result: the eigenstate adiabatically connected to
/// ψ₁₀₀ by maximal squared overlap.
#[derive(Debug, Clone, Copy)]
pub struct GroundTrack {
    pub index: usize,
    /// C²₍₁₀₀₎ of the selected eigenvector.
    pub overlap: f64,
    /// Set when overlap < 0.5 (strong-field mixing); the index is still the
    /// maximal-overlap one.
    pub ambiguous: bool,
}

impl EigenSolution {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Coefficient C of basis state `state_idx` in eigenvector `i`.
    pub fn coeff(&self, state_idx: usize, i: usize) -> f64 {
        self.vectors[(state_idx, i)]
    }
}

/// Diagonalize, sort ascending, fix gauge, certify residuals.
pub fn diagonalize(h: &PseudoHamiltonian) -> Result<EigenSolution> {
    let n = h.dim();
    let frob = h.matrix.norm();
    let se = nalgebra::SymmetricEigen::try_new(h.matrix.clone(), f64::EPSILON, 100_000)
        .ok_or_else(|| {
            Error::Convergence(format!(
                "implicit-shift QL did not converge within 100000 iterations on a {n}x{n} matrix \
                 (‖H‖_F = {frob:.3e})"
            ))
        })?;

    // ascending sort with a stable permutation
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));

    let mut energies = Vec::with_capacity(n);
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (new_i, &old_i) in order.iter().enumerate() {
        energies.push(se.eigenvalues[old_i]);
        vectors.set_column(new_i, &se.eigenvectors.column(old_i));
    }

    // Exactly degenerate clusters leave an orthogonal gauge freedom that the
    // QL iteration resolves arbitrarily. Re-gauge each cluster from its
    // (gauge-invariant) subspace projector P = B Bᵀ: Gram-Schmidt the columns
    // P·e_r in basis order. This pins a canonical basis — the first vector is
    // the one most concentrated on the lexicographically smallest basis
    // states — and makes the vectors invariant under uniform diagonal shifts.
    let scale = frob.max(f64::MIN_POSITIVE);
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && (energies[j] - energies[i]).abs() <= 1e-12 * scale {
            j += 1;
        }
        let d = j - i;
        if d > 1 {
            let block = vectors.columns(i, d).into_owned();
            let mut canon: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(d);
            for r in 0..n {
                if canon.len() == d {
                    break;
                }
                // P e_r = B (Bᵀ e_r): projection of basis vector r onto the cluster
                let coeffs = block.row(r).transpose();
                let mut w = &block * coeffs;
                for prev in &canon {
                    let dot = prev.dot(&w);
                    w -= prev * dot;
                }
                let norm = w.norm();
                if norm > 1e-8 {
                    canon.push(w / norm);
                }
            }
            if canon.len() == d {
                for (off, w) in canon.iter().enumerate() {
                    vectors.set_column(i + off, w);
                }
            }
            // (pathological rank loss keeps the solver's own columns — still
            // deterministic for identical input)
        }
        i = j;
    }

    // gauge: largest-magnitude coefficient positive
    for c in 0..n {
        let mut best = 0usize;
        let mut best_abs = -1.0;
        for r in 0..n {
            let a = vectors[(r, c)].abs();
            if a > best_abs {
                best_abs = a;
                best = r;
            }
        }
        if vectors[(best, c)] < 0.0 {
            for r in 0..n {
                vectors[(r, c)] = -vectors[(r, c)];
            }
        }
    }

    // certify ‖H v - E v‖ / ‖H‖_F
    let hv = &h.matrix * &vectors;
    let mut max_res = 0.0f64;
    for c in 0..n {
        let mut s = 0.0;
        for r in 0..n {
            let d = hv[(r, c)] - energies[c] * vectors[(r, c)];
            s += d * d;
        }
        max_res = max_res.max(s.sqrt());
    }
    let residual_norm = if frob > 0.0 { max_res / frob } else { max_res };
    if residual_norm > RESIDUAL_BOUND {
        return Err(Error::Convergence(format!(
            "residual {residual_norm:.3e} exceeds bound {RESIDUAL_BOUND:.1e} for n = {n}; \
             refusing to return an uncertified spectrum"
        )));
    }

    Ok(EigenSolution {
        energies,
        vectors,
        basis: Arc::clone(&h.basis),
        laser: h.laser,
        residual_norm,
    })
}

/// Index of the eigenstate with maximal overlap with a chosen basis state.
pub fn tracked_state_index(sol: &EigenSolution, state: &BasisState) -> Result<GroundTrack> {
    let row = sol
        .basis
        .index_of(state.n, state.l, state.mu)
        .ok_or_else(|| Error::Domain(format!("state {} not in basis", state.label())))?;
    let mut best = 0usize;
    let mut best_ov = -1.0;
    for i in 0..sol.dim() {
        let c = sol.coeff(row, i);
        let ov = c * c;
        if ov > best_ov {
            best_ov = ov;
            best = i;
        }
    }
    Ok(GroundTrack {
        index: best,
        overlap: best_ov,
        ambiguous: best_ov < 0.5,
    })
}

/// Ground-state tracking: the eigenstate adiabatically connected to ψ₁₀₀.
pub fn ground_state_index(sol: &EigenSolution) -> Result<GroundTrack> {
    let gs = BasisState::new(1, 0, 0)?;
    tracked_state_index(sol, &gs)
}

/// Cyclic Jacobi eigensolver, the small-instance reference implementation.
///
/// Returns ascending eigenvalues and the matching orthonormal columns.
pub fn jacobi_eigen(m: &DMatrix<f64>, tol: f64) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Domain("jacobi_eigen needs a square matrix".into()));
    }
    let mut a = m.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = m.norm().max(f64::MIN_POSITIVE);
    for sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= tol * scale {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&x, &y| a[(x, x)].total_cmp(&a[(y, y)]));
            let evals: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
            let mut vecs = DMatrix::<f64>::zeros(n, n);
            for (new_i, &old_i) in order.iter().enumerate() {
                vecs.set_column(new_i, &v.column(old_i));
            }
            return Ok((evals, vecs));
        }
        let _ = sweep;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::Convergence(
        "jacobi_eigen: 200 sweeps without reaching the off-diagonal tolerance".into(),
    ))
}
