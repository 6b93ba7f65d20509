//! Special-function kernels: gamma, confluent hypergeometric, the Laplace
//! integral of a hypergeometric product (degenerate Appell F₂), Coulomb
//! continuum radial waves, and the angular coupling of p̂_x.

pub mod angular;
pub mod appell;
pub mod coulomb;
pub(crate) mod dd;
pub mod gamma;
pub mod kummer;

pub use angular::{angular_px_coupling, theta_lm, theta_lm_deriv};
pub use appell::{degenerate_f2, laplace_product_integral, LaplaceProductArgs};
pub use coulomb::{continuum_wave, coulomb_radial_wave, ContinuumWave};
pub use gamma::{factorial, gamma, ln_factorial, ln_gamma};
pub use kummer::{kummer_1f1, kummer_1f1_deriv};
