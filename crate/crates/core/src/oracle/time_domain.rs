//! Numerical realization of the windowed spectrum
//! `S(ν) = Re ∫₀^{τ_max} dτ e^{−iντ − γτ} (1/T)∫_{t₀}^{t₀+T} G(t,τ) dt`.
//!
//! In the eigenbasis `G(t,τ) = Σ_{abc} φ̄_a P_ab M_bc φ_c e^{i(E_a−E_b)τ} e^{i(E_a−E_c)t}`
//! with `P = V†σ₊V`, `M = V†σ₋V`, `φ = V†ψ(0)`. Simpson in `t` is linear, so it
//! is applied to each `e^{i(E_a−E_c)t}` once instead of once per `τ` node;
//! the result equals Simpson over the sampled `G(t_i, τ_j)` up to rounding.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use super::model::TruncatedModel;
use crate::error::{Error, ResolutionViolation, Result};
use crate::field::PhotonDistribution;
use crate::math::{cis, exp};
use crate::quad::simpson_weight;
use crate::spectrum::{SeriesSource, SpectrumConfig, SpectrumSeries};

/// Default Simpson interval count for both time axes.
pub const DEFAULT_INTERVALS: usize = 2048;
/// `τ_max = TAU_WINDOW / γ`.
pub const TAU_WINDOW: f64 = 8.0;
/// Default averaging window, in periods of the slowest dressed beat.
pub const AVERAGING_PERIODS: f64 = 50.0;
/// Minimum averaging window, in periods of the slowest dressed beat.
pub const MIN_AVERAGING_PERIODS: f64 = 4.0;

/// Quadrature windows and resolutions. `n_t` and `n_tau` count Simpson
/// intervals (even), so each axis has one more node than that.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct QuadratureSettings {
    pub t_start: f64,
    pub t_avg: f64,
    pub tau_max: f64,
    pub n_t: usize,
    pub n_tau: usize,
}

impl QuadratureSettings {
    /// `T_avg` = 50 slowest-beat periods, `τ_max = 8/γ`, 2048 intervals each.
    pub fn defaults(m: &TruncatedModel, d: &PhotonDistribution, gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::ParameterDomain {
                name: "gamma",
                value: gamma,
            });
        }
        let t_avg = match slowest_beat(m, d)? {
            Some(beat) => AVERAGING_PERIODS * 2.0 * PI / beat,
            // nothing to average out; any positive window is exact
            None => AVERAGING_PERIODS * 2.0 * PI / gamma,
        };
        Ok(Self {
            t_start: 0.0,
            t_avg,
            tau_max: TAU_WINDOW / gamma,
            n_t: DEFAULT_INTERVALS,
            n_tau: DEFAULT_INTERVALS,
        })
    }

    pub fn refined(&self, factor: usize) -> Self {
        Self {
            n_t: self.n_t * factor,
            n_tau: self.n_tau * factor,
            ..*self
        }
    }
}

fn intervals_ok(name: &'static str, value: usize) -> Result<()> {
    if value >= 2 && value % 2 == 0 {
        Ok(())
    } else {
        Err(Error::Resolution(ResolutionViolation::IntervalCount {
            name,
            value,
        }))
    }
}

/// Smallest nonzero level splitting `|E_a − E_c|` between two populated
/// eigenstates of the same excitation manifold: the slowest term the time
/// average has to wash out.
pub fn slowest_beat(m: &TruncatedModel, d: &PhotonDistribution) -> Result<Option<f64>> {
    let phi = m.to_eigenbasis(&m.initial_state(d)?);
    let active: Vec<usize> = (0..m.dim())
        .filter(|&j| phi[j].norm_sqr() > 1e-28)
        .collect();
    let e = m.energies();
    let scale = e.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    let mut slowest: Option<f64> = None;
    for (i, &a) in active.iter().enumerate() {
        for &c in &active[i + 1..] {
            if m.excitation(a) != m.excitation(c) {
                continue;
            }
            let gap = (e[a] - e[c]).abs();
            if gap > 1e-12 * scale {
                slowest = Some(slowest.map_or(gap, |s: f64| s.min(gap)));
            }
        }
    }
    Ok(slowest)
}

/// Checks every quadrature precondition of [`time_domain_spectrum`].
pub fn validate_settings(
    m: &TruncatedModel,
    d: &PhotonDistribution,
    gamma: f64,
    s: &QuadratureSettings,
) -> Result<()> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::ParameterDomain {
            name: "gamma",
            value: gamma,
        });
    }
    intervals_ok("n_t", s.n_t)?;
    intervals_ok("n_tau", s.n_tau)?;
    let required = TAU_WINDOW / gamma;
    if s.tau_max.is_nan() || s.tau_max < required * (1.0 - 1e-12) {
        return Err(Error::Resolution(ResolutionViolation::DelayWindow {
            tau_max: s.tau_max,
            required,
        }));
    }
    if !s.t_start.is_finite() {
        return Err(Error::ParameterDomain {
            name: "t_start",
            value: s.t_start,
        });
    }
    let min_avg = match slowest_beat(m, d)? {
        Some(beat) => MIN_AVERAGING_PERIODS * 2.0 * PI / beat,
        None => 0.0,
    };
    if !(s.t_avg > 0.0 && s.t_avg >= min_avg * (1.0 - 1e-12)) {
        return Err(Error::Resolution(ResolutionViolation::AveragingWindow {
            t_avg: s.t_avg,
            required: min_avg,
        }));
    }
    Ok(())
}

/// Time-averaged correlation `Ḡ(τ_j)` on the uniform delay grid.
#[derive(Debug, Clone)]
pub struct AveragedCorrelation {
    tau_step: f64,
    values: Vec<Complex64>,
}

impl AveragedCorrelation {
    /// Averages over `t ∈ [t_start, t_start + t_avg]` and samples
    /// `τ ∈ [0, tau_max]`. Only interval counts are validated here.
    pub fn compute(
        m: &TruncatedModel,
        d: &PhotonDistribution,
        s: &QuadratureSettings,
    ) -> Result<Self> {
        intervals_ok("n_t", s.n_t)?;
        intervals_ok("n_tau", s.n_tau)?;
        if !(s.t_avg > 0.0 && s.tau_max > 0.0) {
            return Err(Error::ParameterDomain {
                name: "t_avg/tau_max",
                value: s.t_avg.min(s.tau_max),
            });
        }
        let dim = m.dim();
        let e = m.energies();
        let phi = m.to_eigenbasis(&m.initial_state(d)?);
        let lower = m.in_eigenbasis(m.sigma_minus());
        let active: Vec<usize> = (0..dim)
            .filter(|&j| phi[j] != Complex64::new(0.0, 0.0))
            .collect();

        // W_ac = (1/T) ∫ e^{i(E_a − E_c)t} dt
        let dt = s.t_avg / s.n_t as f64;
        let time_average = |a: usize, c: usize| -> Complex64 {
            let freq = e[a] - e[c];
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..=s.n_t {
                let t = s.t_start + dt * i as f64;
                acc += cis(freq * t) * simpson_weight(i, s.n_t, dt);
            }
            acc / s.t_avg
        };
        let mut w = vec![Complex64::new(0.0, 0.0); dim * dim];
        for &a in &active {
            for &c in &active {
                w[a * dim + c] = time_average(a, c);
            }
        }

        // K_ab = φ̄_a P_ab Σ_c M_bc φ_c W_ac,  P_ab = conj(M_ba)
        let mut terms: Vec<(f64, Complex64)> = Vec::new();
        for &a in &active {
            for b in 0..dim {
                let p_ab = lower[b * dim + a].conj();
                if p_ab == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let inner: Complex64 = active
                    .iter()
                    .map(|&c| lower[b * dim + c] * phi[c] * w[a * dim + c])
                    .sum();
                let k = phi[a].conj() * p_ab * inner;
                if k != Complex64::new(0.0, 0.0) {
                    terms.push((e[a] - e[b], k));
                }
            }
        }

        let tau_step = s.tau_max / s.n_tau as f64;
        let values = (0..=s.n_tau)
            .map(|j| {
                let tau = tau_step * j as f64;
                terms.iter().map(|&(freq, k)| k * cis(freq * tau)).sum()
            })
            .collect();
        Ok(Self { tau_step, values })
    }

    pub fn tau_step(&self) -> f64 {
        self.tau_step
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `Re ∫ e^{−iντ−γτ} Ḡ(τ) dτ` by composite Simpson.
    pub fn spectral_density(&self, nu: f64, gamma: f64) -> f64 {
        let intervals = self.values.len() - 1;
        let mut acc = 0.0;
        for (j, g) in self.values.iter().enumerate() {
            let tau = self.tau_step * j as f64;
            let kernel = cis(-nu * tau) * exp(-gamma * tau);
            acc += (kernel * g).re * simpson_weight(j, intervals, self.tau_step);
        }
        acc
    }
}

/// Oracle spectrum on `nu_grid`; every quadrature precondition is enforced.
pub fn time_domain_spectrum(
    m: &TruncatedModel,
    d: &PhotonDistribution,
    gamma: f64,
    nu_grid: Vec<f64>,
    s: &QuadratureSettings,
) -> Result<SpectrumSeries> {
    validate_settings(m, d, gamma, s)?;
    let config = SpectrumConfig::new(gamma, nu_grid)?;
    let corr = AveragedCorrelation::compute(m, d, s)?;
    let values = config
        .nu_grid()
        .iter()
        .map(|&nu| corr.spectral_density(nu, gamma))
        .collect();
    Ok(series_from_values(m, d, config, values))
}

/// Wraps oracle samples into a [`SpectrumSeries`].
pub fn series_from_values(
    m: &TruncatedModel,
    d: &PhotonDistribution,
    config: SpectrumConfig,
    values: Vec<f64>,
) -> SpectrumSeries {
    SpectrumSeries {
        config,
        params: *m.params(),
        distribution: d.into(),
        source: SeriesSource::Oracle,
        lines: Vec::new(),
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CanonicalParams;
    use crate::oracle::{build_truncated_model, correlation_first_principles};
    use crate::quad::simpson;

    #[test]
    fn factorized_average_matches_direct_double_sum() {
        let p = CanonicalParams::new(10.0, 0.5, 1.0).unwrap();
        let m = build_truncated_model(&p, 6).unwrap();
        let d = PhotonDistribution::binomial(0.6, 3).unwrap();
        let s = QuadratureSettings {
            t_start: 0.3,
            t_avg: 7.0,
            tau_max: 5.0,
            n_t: 16,
            n_tau: 8,
        };
        let fast = AveragedCorrelation::compute(&m, &d, &s).unwrap();
        let dt = s.t_avg / s.n_t as f64;
        for j in 0..=s.n_tau {
            let tau = j as f64 * s.tau_max / s.n_tau as f64;
            let samples: Vec<Complex64> = (0..=s.n_t)
                .map(|i| {
                    correlation_first_principles(&m, &d, s.t_start + dt * i as f64, tau).unwrap()
                })
                .collect();
            let direct = simpson(&samples, dt).unwrap() / s.t_avg;
            assert!((fast.values()[j] - direct).norm() < 1e-12, "τ index {j}");
        }
    }

    #[test]
    fn preconditions_are_enforced() {
        let p = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
        let m = build_truncated_model(&p, 4).unwrap();
        let d = PhotonDistribution::vacuum();
        let good = QuadratureSettings::defaults(&m, &d, 0.1).unwrap();
        assert!((good.tau_max - 80.0).abs() < 1e-12);
        // slowest beat 2μ₀ = 2 → 50 periods of π
        assert!((good.t_avg - 50.0 * PI).abs() < 1e-9);
        assert!(validate_settings(&m, &d, 0.1, &good).is_ok());

        let short_tau = QuadratureSettings {
            tau_max: 40.0,
            ..good
        };
        assert!(matches!(
            validate_settings(&m, &d, 0.1, &short_tau),
            Err(Error::Resolution(ResolutionViolation::DelayWindow { .. }))
        ));
        let short_t = QuadratureSettings {
            t_avg: 3.0 * PI,
            ..good
        };
        assert!(matches!(
            validate_settings(&m, &d, 0.1, &short_t),
            Err(Error::Resolution(
                ResolutionViolation::AveragingWindow { .. }
            ))
        ));
        let odd = QuadratureSettings { n_tau: 7, ..good };
        assert!(matches!(
            validate_settings(&m, &d, 0.1, &odd),
            Err(Error::Resolution(ResolutionViolation::IntervalCount { .. }))
        ));
        assert!(time_domain_spectrum(&m, &d, 0.1, alloc::vec![10.0], &short_tau).is_err());
        let big = PhotonDistribution::number(4);
        assert!(matches!(
            QuadratureSettings::defaults(&m, &big, 0.1),
            Err(Error::Cutoff { .. })
        ));
    }

    #[test]
    fn tau_truncation_tail_bound() {
        let p = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
        let m = build_truncated_model(&p, 4).unwrap();
        let d = PhotonDistribution::vacuum();
        let gamma = 0.1;
        let full = QuadratureSettings::defaults(&m, &d, gamma).unwrap();
        let half = QuadratureSettings {
            tau_max: 4.0 / gamma,
            n_tau: full.n_tau / 2,
            ..full
        };
        let a = AveragedCorrelation::compute(&m, &d, &full).unwrap();
        let b = AveragedCorrelation::compute(&m, &d, &half).unwrap();
        for nu in [9.0, 11.0] {
            let (sa, sb) = (a.spectral_density(nu, gamma), b.spectral_density(nu, gamma));
            assert!(((sa - sb) / sa).abs() < 0.02, "ν={nu}: {sa} vs {sb}");
        }
    }
}
