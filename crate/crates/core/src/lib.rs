//! Non-perturbative spectra of a hydrogen atom in an intense circularly
//! polarized laser.
//!
//! The transformation to the frame corotating with the polarization turns the
//! driven problem into a time-independent pseudo-Hamiltonian over the
//! hydrogen bound basis. This crate assembles that matrix, diagonalizes it,
//! and derives the observables: time-averaged bound-bound transition
//! probabilities as functions of photon energy and intensity, photoelectron
//! energy channels, and photoionization cross sections.
//!
//! Modules follow the pipeline:
//!
//! * [`constants`] / [`model`] — pinned CODATA constants, unit bridges, and
//!   the shared domain types ([`model::BasisState`], [`model::LaserParams`]).
//! * [`specfun`] — gamma, Kummer ₁F₁, the Laplace product integral
//!   (degenerate Appell F₂), Coulomb continuum waves, angular couplings.
//! * [`basis`] — truncated basis enumeration and assembly of the dense real
//!   symmetric pseudo-Hamiltonian.
//! * [`eigen`] — full-spectrum symmetric eigensolver with certified
//!   residuals; Jacobi reference for cross-checks.
//! * [`transitions`] — time-averaged and instantaneous transition
//!   probabilities; photon-energy and intensity scans.
//! * [`ionization`] — photoelectron channels, partial-wave continuum
//!   amplitudes, and cross sections.
//! * [`config`] / [`runner`] — key=value configuration, the CLI driver, CSV
//!   export and the binary result cache.
//!
//! The `examples/` directory holds one runnable program per capability; the
//! `corotate` binary exposes the same pipelines as subcommands.

// validation sites use `!(x >= 0.0)` so NaN fails closed
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod cache;
pub mod config;
pub mod constants;
pub mod csvio;
pub mod eigen;
pub mod error;
pub mod ionization;
pub mod model;
pub mod quadrature;
pub mod runner;
pub mod specfun;
pub mod transitions;

pub use error::{Error, Result};
pub use model::{BasisState, LaserParams};
