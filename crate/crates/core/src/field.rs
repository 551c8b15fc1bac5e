//! Initial photon-number distributions of the cavity field.
//!
//! Only the populations `β_n²` enter the spectrum, so amplitudes are stored
//! as non-negative reals.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{exp, lgamma, log, sqrt};

/// Populations below this are treated as absent when building line catalogs
/// and checking Fock cutoffs.
pub const SUPPORT_THRESHOLD: f64 = 1e-14;

/// How a distribution was constructed.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Provenance {
    Binomial {
        eta: f64,
        m: usize,
    },
    Coherent {
        mean_photons: f64,
        tail_epsilon: f64,
    },
    Number {
        m: usize,
    },
    Vacuum,
    Custom,
}

/// Amplitudes `β_0 … β_N` of a Fock-diagonal field, `Σ β_n² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonDistribution {
    amplitudes: Vec<f64>,
    provenance: Provenance,
}

fn from_populations(mut pops: Vec<f64>, provenance: Provenance) -> PhotonDistribution {
    let total: f64 = pops.iter().sum();
    for p in &mut pops {
        *p = sqrt(*p / total);
    }
    PhotonDistribution {
        amplitudes: pops,
        provenance,
    }
}

impl PhotonDistribution {
    /// Binomial state `|η, M⟩` with `β_n² = C(M,n) η^n (1−η)^(M−n)`.
    ///
    /// Coefficients are evaluated in log space, so `M` in the millions is fine.
    pub fn binomial(eta: f64, m: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::ParameterDomain {
                name: "eta",
                value: eta,
            });
        }
        if m < 1 {
            return Err(Error::ParameterDomain {
                name: "M",
                value: m as f64,
            });
        }
        let provenance = Provenance::Binomial { eta, m };
        let mut amplitudes = vec![0.0; m + 1];
        if eta == 0.0 {
            amplitudes[0] = 1.0;
            return Ok(Self {
                amplitudes,
                provenance,
            });
        }
        if eta == 1.0 {
            amplitudes[m] = 1.0;
            return Ok(Self {
                amplitudes,
                provenance,
            });
        }
        let ln_eta = log(eta);
        let ln_rest = libm::log1p(-eta);
        let ln_m_fact = lgamma(m as f64 + 1.0);
        let pops = (0..=m)
            .map(|n| {
                let k = n as f64;
                let ln_choose = ln_m_fact - lgamma(k + 1.0) - lgamma((m - n) as f64 + 1.0);
                exp(ln_choose + k * ln_eta + (m - n) as f64 * ln_rest)
            })
            .collect();
        Ok(from_populations(pops, provenance))
    }

    /// Poisson populations with mean `|α|²`, truncated at the smallest `N`
    /// whose tail mass `Σ_{n>N}` is below `tail_epsilon`, then renormalized.
    pub fn coherent(mean_photons: f64, tail_epsilon: f64) -> Result<Self> {
        if !(mean_photons.is_finite() && mean_photons >= 0.0) {
            return Err(Error::ParameterDomain {
                name: "mean_photons",
                value: mean_photons,
            });
        }
        if !(tail_epsilon.is_finite() && tail_epsilon > 0.0) {
            return Err(Error::ParameterDomain {
                name: "tail_epsilon",
                value: tail_epsilon,
            });
        }
        let provenance = Provenance::Coherent {
            mean_photons,
            tail_epsilon,
        };
        if mean_photons == 0.0 {
            return Ok(Self {
                amplitudes: vec![1.0],
                provenance,
            });
        }
        let ln_a = log(mean_photons);
        let mut pops = Vec::new();
        for n in 0usize.. {
            let k = n as f64;
            let p = exp(-mean_photons + k * ln_a - lgamma(k + 1.0));
            pops.push(p);
            // past the mode the tail beyond n is below p·(geometric factor ≤ 1)
            if k > 2.0 * mean_photons + 1.0 && (p < 1e-6 * tail_epsilon || p == 0.0) {
                break;
            }
        }
        // tail[N] = Σ_{n>N} p_n, accumulated from the far end
        let mut tail = 0.0;
        let mut cut = pops.len() - 1;
        for n in (0..pops.len()).rev() {
            if tail >= tail_epsilon {
                break;
            }
            cut = n;
            tail += pops[n];
        }
        pops.truncate(cut + 1);
        Ok(from_populations(pops, provenance))
    }

    /// Fock state `|m⟩`.
    pub fn number(m: usize) -> Self {
        let mut amplitudes = vec![0.0; m + 1];
        amplitudes[m] = 1.0;
        Self {
            amplitudes,
            provenance: Provenance::Number { m },
        }
    }

    pub fn vacuum() -> Self {
        Self {
            amplitudes: vec![1.0],
            provenance: Provenance::Vacuum,
        }
    }

    /// Arbitrary non-negative amplitudes, renormalized to unit norm.
    pub fn custom(amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDistribution("no amplitudes"));
        }
        if amplitudes.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::InvalidDistribution(
                "amplitudes must be finite and non-negative",
            ));
        }
        let pops: Vec<f64> = amplitudes.iter().map(|a| a * a).collect();
        if pops.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidDistribution("all amplitudes are zero"));
        }
        Ok(from_populations(pops, Provenance::Custom))
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// `β_n²`, zero outside the stored range.
    pub fn population(&self, n: usize) -> f64 {
        self.amplitudes.get(n).map_or(0.0, |a| a * a)
    }

    pub fn populations(&self) -> impl DoubleEndedIterator<Item = f64> + ExactSizeIterator + '_ {
        self.amplitudes.iter().map(|a| a * a)
    }

    /// `Σ n β_n²`.
    pub fn mean_photons(&self) -> f64 {
        self.populations()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean_photons();
        self.populations()
            .enumerate()
            .map(|(n, p)| {
                let d = n as f64 - mean;
                d * d * p
            })
            .sum()
    }

    /// Largest `n` whose population reaches [`SUPPORT_THRESHOLD`].
    pub fn support_max(&self) -> Option<usize> {
        self.populations().rposition(|p| p >= SUPPORT_THRESHOLD)
    }

    /// Exact population equality, ignoring trailing zeros and provenance.
    pub fn same_populations(&self, other: &Self) -> bool {
        let len = self.len().max(other.len());
        (0..len).all(|n| self.population(n) == other.population(n))
    }

    /// Total-variation distance `½ Σ |p_n − q_n|` between the populations.
    pub fn total_variation(&self, other: &Self) -> f64 {
        let len = self.len().max(other.len());
        0.5 * (0..len)
            .map(|n| (self.population(n) - other.population(n)).abs())
            .sum::<f64>()
    }
}

/// Free-function form of [`PhotonDistribution::mean_photons`].
pub fn mean_photons(d: &PhotonDistribution) -> f64 {
    d.mean_photons()
}
