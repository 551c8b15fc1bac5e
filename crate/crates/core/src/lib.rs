//! Transient fluorescence spectrum of a single-Cooper-pair box coupled to one
//! quantized cavity mode.
//!
//! The crate is `no_std` (it needs `alloc`) and is split along the physics:
//!
//! - [`model`]: device parameters, the canonical `(ω, Δ, g)` frame and the
//!   closed-form dressed-state quantities (Rabi splitting, eigenenergies,
//!   mixing angle, evolution amplitudes).
//! - [`field`]: initial photon-number distributions (binomial, coherent,
//!   number, vacuum, custom).
//! - [`spectrum`]: the Lorentzian line catalog and the windowed spectrum
//!   `S(ν)` built from it.
//! - [`oracle`]: an independent brute-force route. It diagonalizes the
//!   truncated Hamiltonian numerically, evolves the dipole correlation in the
//!   time domain and Fourier-transforms it by quadrature.
//!
//! All energies are angular frequencies with `ħ = 1`.
//!
//! ```
//! use cpbspec_core::{field::PhotonDistribution, model::CanonicalParams, spectrum};
//!
//! let params = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
//! let field = PhotonDistribution::vacuum();
//! let config = spectrum::SpectrumConfig::new(0.1, spectrum::offset_grid(&params, -12.0, 12.0, 2001)).unwrap();
//! let series = spectrum::evaluate_grid(&params, &field, &config).unwrap();
//! assert_eq!(series.len(), 2001);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod field;
mod math;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod spectrum;

pub use error::{Error, Result};
