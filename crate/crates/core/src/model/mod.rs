//! Device parameters, the canonical `(ω, Δ, g)` frame and closed-form
//! dressed-state quantities.
//!
//! Conventions: `|↑⟩` is the excited pseudo-spin state with energy `+E_J/2`.
//! Within the one-excitation doublet `{|n,↑⟩, |n+1,↓⟩}` the Hamiltonian is
//! `ω(n+½)·1 + [[Δ/2, g√(n+1)], [g√(n+1), −Δ/2]]`.

mod dressed;
mod params;

pub use dressed::{
    eigenenergies, evolution_amp_a, evolution_amp_b, mixing_angle, rabi_splitting, DressedLevel,
    EvolutionAmps,
};
pub use params::{canonicalize, CanonicalParams, DeviceParams};
