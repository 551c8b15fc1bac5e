use num_complex::Complex64;

use super::model::TruncatedModel;
use crate::error::Result;
use crate::field::PhotonDistribution;
use crate::math::cis;
use crate::model::{CanonicalParams, DressedLevel};

/// Dipole correlation `⟨ψ(0)| σ₊(t+τ) σ₋(t) |ψ(0)⟩` by exact propagation of
/// state vectors through the numerical eigendecomposition:
/// `⟨U(t+τ)ψ| σ₊ U(τ) σ₋ U(t) |ψ⟩`.
pub fn correlation_first_principles(
    m: &TruncatedModel,
    d: &PhotonDistribution,
    t: f64,
    tau: f64,
) -> Result<Complex64> {
    let psi = m.initial_state(d)?;
    let lowered = m.apply(m.sigma_minus(), &m.evolve(&psi, t));
    let raised = m.apply(m.sigma_plus(), &m.evolve(&lowered, tau));
    let bra = m.evolve(&psi, t + tau);
    Ok(bra.iter().zip(&raised).map(|(b, r)| b.conj() * r).sum())
}

/// Phase used for `A(n−k, τ)` when `n − k < 0`: the uncoupled ground level at
/// `−ω/2`, i.e. `e^{+iωτ/2}`.
pub const EQ13_GROUND_CONVENTION: &str = "A(n-k<0, tau) = exp(+i*omega*tau/2)";

/// The published closed form `Σ β_n² A(n,t) A(n−k,τ) A*(n,t−τ)`, evaluated
/// literally with the dressed-state amplitudes.
pub fn correlation_eq13(
    p: &CanonicalParams,
    d: &PhotonDistribution,
    t: f64,
    tau: f64,
    k: usize,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, pop) in d.populations().enumerate() {
        if pop == 0.0 {
            continue;
        }
        let level = DressedLevel::new(p, n)?;
        let lower = if n >= k {
            DressedLevel::new(p, n - k)?.amp_a(tau)
        } else {
            cis(0.5 * p.omega() * tau)
        };
        acc += level.amp_a(t) * lower * level.amp_a(t - tau).conj() * pop;
    }
    Ok(acc)
}
