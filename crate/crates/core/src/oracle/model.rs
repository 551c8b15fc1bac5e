use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::eigen::HermitianEigen;
use crate::error::{Error, Result};
use crate::field::PhotonDistribution;
use crate::math::{cis, sqrt};
use crate::model::CanonicalParams;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Box + cavity Hamiltonian on `{|n,↑⟩, |n,↓⟩ : n ≤ n_max}` under the
/// rotating-wave approximation, together with its numerical
/// eigendecomposition.
///
/// `H = ω a†a + (E_J/2) σ_z + g (a σ₊ + a† σ₋)` with `E_J = ω + Δ`.
/// `|n_max,↑⟩` has no partner inside the cutoff and is left uncoupled, so the
/// initial field must live on `n ≤ n_max − 1`.
#[derive(Debug, Clone)]
pub struct TruncatedModel {
    params: CanonicalParams,
    n_max: usize,
    dim: usize,
    hamiltonian: Vec<Complex64>,
    sigma_plus: Vec<Complex64>,
    sigma_minus: Vec<Complex64>,
    eigen: HermitianEigen,
}

/// Basis position of `|n, ↑⟩` (`up = true`) or `|n, ↓⟩`.
#[inline]
pub fn basis_index(n: usize, up: bool) -> usize {
    2 * n + usize::from(!up)
}

/// Smallest cutoff that contains the field: `n_max ≥ ⟨n⟩ + 8σ` and
/// `n_max ≥ support + 1`.
pub fn recommended_cutoff(d: &PhotonDistribution) -> usize {
    let spread = d.mean_photons() + 8.0 * sqrt(d.variance());
    let support = d.support_max().unwrap_or(0) + 1;
    (libm::ceil(spread) as usize).max(support).max(1)
}

pub fn build_truncated_model(p: &CanonicalParams, n_max: usize) -> Result<TruncatedModel> {
    if n_max < 1 {
        return Err(Error::Cutoff { n_max, required: 1 });
    }
    let dim = 2 * (n_max + 1);
    let at = |i: usize, j: usize| i * dim + j;
    let mut h = vec![ZERO; dim * dim];
    let half_ej = 0.5 * p.josephson_energy();
    for n in 0..=n_max {
        let photons = p.omega() * n as f64;
        h[at(basis_index(n, true), basis_index(n, true))] = Complex64::new(photons + half_ej, 0.0);
        h[at(basis_index(n, false), basis_index(n, false))] =
            Complex64::new(photons - half_ej, 0.0);
        if n < n_max {
            let c = Complex64::new(p.g() * sqrt(n as f64 + 1.0), 0.0);
            h[at(basis_index(n, true), basis_index(n + 1, false))] = c;
            h[at(basis_index(n + 1, false), basis_index(n, true))] = c;
        }
    }
    let mut sigma_minus = vec![ZERO; dim * dim];
    let mut sigma_plus = vec![ZERO; dim * dim];
    for n in 0..=n_max {
        sigma_minus[at(basis_index(n, false), basis_index(n, true))] = ONE;
        sigma_plus[at(basis_index(n, true), basis_index(n, false))] = ONE;
    }
    let eigen = HermitianEigen::compute(&h, dim);
    Ok(TruncatedModel {
        params: *p,
        n_max,
        dim,
        hamiltonian: h,
        sigma_plus,
        sigma_minus,
        eigen,
    })
}

impl TruncatedModel {
    pub fn params(&self) -> &CanonicalParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major Hamiltonian.
    pub fn hamiltonian(&self) -> &[Complex64] {
        &self.hamiltonian
    }

    pub fn sigma_plus(&self) -> &[Complex64] {
        &self.sigma_plus
    }

    pub fn sigma_minus(&self) -> &[Complex64] {
        &self.sigma_minus
    }

    pub fn element(&self, i: usize, j: usize) -> Complex64 {
        self.hamiltonian[i * self.dim + j]
    }

    /// Ascending eigenvalues.
    pub fn energies(&self) -> &[f64] {
        self.eigen.values()
    }

    pub fn eigenvector(&self, j: usize) -> &[Complex64] {
        self.eigen.vector(j)
    }

    /// Excitation number (`photons + [spin up]`) of eigenvector `j`, taken
    /// from its largest component.
    pub fn excitation(&self, j: usize) -> usize {
        let v = self.eigen.vector(j);
        let (i, _) = v.iter().enumerate().fold((0, -1.0), |best, (i, z)| {
            if z.norm_sqr() > best.1 {
                (i, z.norm_sqr())
            } else {
                best
            }
        });
        i / 2 + usize::from(i % 2 == 0)
    }

    /// The two eigenpairs of doublet `{|n,↑⟩, |n+1,↓⟩}`, higher energy first.
    pub fn doublet(&self, n: usize) -> Option<[(f64, &[Complex64]); 2]> {
        if n >= self.n_max {
            return None;
        }
        let mut found = (0..self.dim).filter(|&j| self.excitation(j) == n + 1);
        let a = found.next()?;
        let b = found.next()?;
        let (hi, lo) = if self.energies()[a] >= self.energies()[b] {
            (a, b)
        } else {
            (b, a)
        };
        Some([
            (self.energies()[hi], self.eigenvector(hi)),
            (self.energies()[lo], self.eigenvector(lo)),
        ])
    }

    /// Fails unless every populated Fock level of `d` is below `n_max`.
    pub fn check_support(&self, d: &PhotonDistribution) -> Result<()> {
        match d.support_max() {
            Some(top) if top + 1 > self.n_max => Err(Error::Cutoff {
                n_max: self.n_max,
                required: top + 1,
            }),
            None => Err(Error::InvalidDistribution("no populated Fock level")),
            _ => Ok(()),
        }
    }

    /// `|ψ(0)⟩ = Σ β_n |n,↑⟩` on the truncated basis.
    pub fn initial_state(&self, d: &PhotonDistribution) -> Result<Vec<Complex64>> {
        self.check_support(d)?;
        let mut psi = vec![ZERO; self.dim];
        for (n, &b) in d.amplitudes().iter().enumerate().take(self.n_max) {
            psi[basis_index(n, true)] = Complex64::new(b, 0.0);
        }
        Ok(psi)
    }

    /// Coefficients `⟨v_j|ψ⟩` in the eigenbasis.
    pub fn to_eigenbasis(&self, state: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|j| {
                self.eigen
                    .vector(j)
                    .iter()
                    .zip(state)
                    .map(|(v, s)| v.conj() * s)
                    .sum()
            })
            .collect()
    }

    /// `U(t)|ψ⟩ = Σ_j e^{−iE_j t} |v_j⟩⟨v_j|ψ⟩`.
    pub fn evolve(&self, state: &[Complex64], t: f64) -> Vec<Complex64> {
        let coeffs = self.to_eigenbasis(state);
        let mut out = vec![ZERO; self.dim];
        for (j, c) in coeffs.into_iter().enumerate() {
            if c == ZERO {
                continue;
            }
            let c = c * cis(-self.energies()[j] * t);
            for (o, v) in out.iter_mut().zip(self.eigen.vector(j)) {
                *o += v * c;
            }
        }
        out
    }

    pub(crate) fn apply(&self, op: &[Complex64], state: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| {
                op[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(state)
                    .map(|(a, s)| a * s)
                    .sum()
            })
            .collect()
    }

    /// `⟨v_a| op |v_b⟩` for all eigenvector pairs, row-major.
    pub(crate) fn in_eigenbasis(&self, op: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.dim * self.dim];
        for b in 0..self.dim {
            let col = self.apply(op, self.eigen.vector(b));
            for a in 0..self.dim {
                out[a * self.dim + b] = self
                    .eigen
                    .vector(a)
                    .iter()
                    .zip(&col)
                    .map(|(v, c)| v.conj() * c)
                    .sum();
            }
        }
        out
    }
}
