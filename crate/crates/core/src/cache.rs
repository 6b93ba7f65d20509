//! Binary cache of assembled matrices and eigen-solutions, keyed by
//! (n0, A, ħω, constants-hash). Read-back is bit-exact.
//!
//! A verification failure (stale constants, wrong key, truncation) is
//! treated as a miss: the caller recomputes and overwrites. Files are
//! written atomically.

use crate::basis::{hamiltonian_cache_key, BasisSet, PseudoHamiltonian};
use crate::constants::constants_hash;
use crate::eigen::EigenSolution;
use crate::error::{Error, Result};
use crate::model::LaserParams;
use nalgebra::DMatrix;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

const MAGIC_MATRIX: &[u8; 4] = b"CRTM";
const MAGIC_EIGEN: &[u8; 4] = b"CRTE";
const FORMAT_VERSION: u32 = 1;

/// Handle to a cache directory.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Open (creating if needed) a cache directory.
    pub fn open(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    pub fn matrix_path(&self, key: u64) -> PathBuf {
        self.dir.join(format!("h_{key:016x}.bin"))
    }

    pub fn eigen_path(&self, key: u64) -> PathBuf {
        self.dir.join(format!("e_{key:016x}.bin"))
    }

    pub fn store_matrix(&self, h: &PseudoHamiltonian) -> Result<()> {
        let key = h.cache_key();
        let n = h.dim();
        let mut buf = header_bytes(MAGIC_MATRIX, key, h.basis.n0, n as u64, &h.laser);
        buf.extend_from_slice(&h.dipole_parameter.to_le_bytes());
        for c in 0..n {
            for r in 0..n {
                buf.extend_from_slice(&h.matrix[(r, c)].to_le_bytes());
            }
        }
        write_atomic_bytes(&self.matrix_path(key), &buf)
    }

    /// Returns `Ok(None)` on miss or any verification failure.
    pub fn load_matrix(
        &self,
        basis: &Arc<BasisSet>,
        laser: &LaserParams,
    ) -> Result<Option<PseudoHamiltonian>> {
        let key = hamiltonian_cache_key(basis.n0, laser);
        let path = self.matrix_path(key);
        let Ok(bytes) = std::fs::read(&path) else {
            return Ok(None);
        };
        let Some(body) = check_header(
            &bytes,
            MAGIC_MATRIX,
            key,
            basis.n0,
            basis.len() as u64,
            laser,
        ) else {
            return Ok(None);
        };
        let n = basis.len();
        let need = 8 + n * n * 8;
        if body.len() != need {
            return Ok(None);
        }
        let dipole_parameter = f64::from_le_bytes(body[0..8].try_into().unwrap());
        let mut matrix = DMatrix::<f64>::zeros(n, n);
        let mut off = 8;
        for c in 0..n {
            for r in 0..n {
                matrix[(r, c)] = f64::from_le_bytes(body[off..off + 8].try_into().unwrap());
                off += 8;
            }
        }
        Ok(Some(PseudoHamiltonian {
            basis: Arc::clone(basis),
            matrix,
            laser: *laser,
            dipole_parameter,
        }))
    }

    pub fn store_eigen(&self, sol: &EigenSolution) -> Result<()> {
        let key = hamiltonian_cache_key(sol.basis.n0, &sol.laser);
        let n = sol.dim();
        let mut buf = header_bytes(MAGIC_EIGEN, key, sol.basis.n0, n as u64, &sol.laser);
        buf.extend_from_slice(&sol.residual_norm.to_le_bytes());
        for &e in &sol.energies {
            buf.extend_from_slice(&e.to_le_bytes());
        }
        for c in 0..n {
            for r in 0..n {
                buf.extend_from_slice(&sol.vectors[(r, c)].to_le_bytes());
            }
        }
        write_atomic_bytes(&self.eigen_path(key), &buf)
    }

    /// Returns `Ok(None)` on miss or any verification failure.
    pub fn load_eigen(
        &self,
        basis: &Arc<BasisSet>,
        laser: &LaserParams,
    ) -> Result<Option<EigenSolution>> {
        let key = hamiltonian_cache_key(basis.n0, laser);
        let path = self.eigen_path(key);
        let Ok(bytes) = std::fs::read(&path) else {
            return Ok(None);
        };
        let Some(body) = check_header(
            &bytes,
            MAGIC_EIGEN,
            key,
            basis.n0,
            basis.len() as u64,
            laser,
        ) else {
            return Ok(None);
        };
        let n = basis.len();
        let need = 8 + n * 8 + n * n * 8;
        if body.len() != need {
            return Ok(None);
        }
        let residual_norm = f64::from_le_bytes(body[0..8].try_into().unwrap());
        let mut off = 8;
        let mut energies = Vec::with_capacity(n);
        for _ in 0..n {
            energies.push(f64::from_le_bytes(body[off..off + 8].try_into().unwrap()));
            off += 8;
        }
        let mut vectors = DMatrix::<f64>::zeros(n, n);
        for c in 0..n {
            for r in 0..n {
                vectors[(r, c)] = f64::from_le_bytes(body[off..off + 8].try_into().unwrap());
                off += 8;
            }
        }
        Ok(Some(EigenSolution {
            energies,
            vectors,
            basis: Arc::clone(basis),
            laser: *laser,
            residual_norm,
        }))
    }
}

fn header_bytes(magic: &[u8; 4], key: u64, n0: u32, dim: u64, laser: &LaserParams) -> Vec<u8> {
    let mut buf = Vec::new();
    buf.extend_from_slice(magic);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&key.to_le_bytes());
    buf.extend_from_slice(&constants_hash().to_le_bytes());
    buf.extend_from_slice(&n0.to_le_bytes());
    buf.extend_from_slice(&dim.to_le_bytes());
    buf.extend_from_slice(&laser.amplitude_si.to_bits().to_le_bytes());
    buf.extend_from_slice(&laser.photon_ev.to_bits().to_le_bytes());
    buf
}

const HEADER_LEN: usize = 4 + 4 + 8 + 8 + 4 + 8 + 8 + 8;

fn check_header<'a>(
    bytes: &'a [u8],
    magic: &[u8; 4],
    key: u64,
    n0: u32,
    dim: u64,
    laser: &LaserParams,
) -> Option<&'a [u8]> {
    if bytes.len() < HEADER_LEN || &bytes[0..4] != magic {
        return None;
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    let file_key = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let file_hash = u64::from_le_bytes(bytes[16..24].try_into().unwrap());
    let file_n0 = u32::from_le_bytes(bytes[24..28].try_into().unwrap());
    let file_dim = u64::from_le_bytes(bytes[28..36].try_into().unwrap());
    let file_a = u64::from_le_bytes(bytes[36..44].try_into().unwrap());
    let file_ev = u64::from_le_bytes(bytes[44..52].try_into().unwrap());
    if version != FORMAT_VERSION
        || file_key != key
        || file_hash != constants_hash()
        || file_n0 != n0
        || file_dim != dim
        || file_a != laser.amplitude_si.to_bits()
        || file_ev != laser.photon_ev.to_bits()
    {
        return None;
    }
    Some(&bytes[HEADER_LEN..])
}

fn write_atomic_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::Cache(format!("invalid cache path {}", path.display())))?;
    let tmp = path.with_file_name(format!(
        ".{}.tmp-{}",
        file_name.to_string_lossy(),
        std::process::id()
    ));
    let mut f = std::fs::File::create(&tmp)?;
    f.write_all(bytes)?;
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
