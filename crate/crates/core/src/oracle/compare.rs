use alloc::vec::Vec;

use super::correlation::{correlation_eq13, correlation_first_principles, EQ13_GROUND_CONVENTION};
use super::model::TruncatedModel;
use super::time_domain::QuadratureSettings;
use crate::error::{Error, Result};
use crate::field::{PhotonDistribution, SUPPORT_THRESHOLD};
use crate::math::sqrt;
use crate::model::DressedLevel;
use crate::spectrum::{
    evaluate_grid, find_peaks, Peak, SpectrumConfig, SpectrumSeries, WeightPairing,
};

/// Peaks below this fraction of a series' maximum are ignored when matching.
pub const DEFAULT_MIN_RELATIVE_HEIGHT: f64 = 1e-2;

/// A significant peak of `a` and the nearest peak of `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PeakMatch {
    pub nu: f64,
    pub value: f64,
    pub partner_nu: f64,
    pub partner_value: f64,
    pub distance: f64,
    pub height_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ComparisonReport {
    pub grid_step: f64,
    pub min_relative_height: f64,
    pub matched: Vec<PeakMatch>,
    pub unmatched_a: Vec<Peak>,
    pub unmatched_b: Vec<Peak>,
    /// `‖a − b‖₂ / ‖b‖₂`.
    pub l2_relative: f64,
    /// `max |a − b| / max |b|`.
    pub linf_relative: f64,
    /// Every significant peak of either series has a partner within one grid step.
    pub all_peaks_matched: bool,
}

pub fn compare_spectra(a: &SpectrumSeries, b: &SpectrumSeries) -> Result<ComparisonReport> {
    compare_spectra_with(a, b, DEFAULT_MIN_RELATIVE_HEIGHT)
}

fn nearest(peaks: &[Peak], nu: f64) -> Option<&Peak> {
    peaks
        .iter()
        .min_by(|x, y| (x.nu - nu).abs().total_cmp(&(y.nu - nu).abs()))
}

pub fn compare_spectra_with(
    a: &SpectrumSeries,
    b: &SpectrumSeries,
    min_relative_height: f64,
) -> Result<ComparisonReport> {
    let (na, nb) = (a.nu(), b.nu());
    if na.len() != nb.len()
        || na
            .iter()
            .zip(nb)
            .any(|(x, y)| (x - y).abs() > 1e-12 * x.abs().max(1.0))
    {
        return Err(Error::GridMismatch);
    }
    let grid_step = na.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let tolerance = grid_step * (1.0 + 1e-9);

    let pa = find_peaks(a)?;
    let pb = find_peaks(b)?;
    // candidates get half the threshold so a borderline partner is still found
    let sig_a: Vec<Peak> = pa.significant(min_relative_height).copied().collect();
    let sig_b: Vec<Peak> = pb.significant(min_relative_height).copied().collect();
    let cand_a: Vec<Peak> = pa.significant(0.5 * min_relative_height).copied().collect();
    let cand_b: Vec<Peak> = pb.significant(0.5 * min_relative_height).copied().collect();

    let mut matched = Vec::new();
    let mut unmatched_a = Vec::new();
    for peak in &sig_a {
        match nearest(&cand_b, peak.nu) {
            Some(partner) if (partner.nu - peak.nu).abs() <= tolerance => matched.push(PeakMatch {
                nu: peak.nu,
                value: peak.value,
                partner_nu: partner.nu,
                partner_value: partner.value,
                distance: (partner.nu - peak.nu).abs(),
                height_ratio: peak.value / partner.value,
            }),
            _ => unmatched_a.push(*peak),
        }
    }
    let unmatched_b: Vec<Peak> = sig_b
        .iter()
        .filter(|peak| {
            nearest(&cand_a, peak.nu).map_or(true, |p| (p.nu - peak.nu).abs() > tolerance)
        })
        .copied()
        .collect();

    let diff2: f64 = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    let norm2: f64 = b.values.iter().map(|y| y * y).sum();
    let max_diff = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let max_b = b.values.iter().map(|y| y.abs()).fold(0.0, f64::max);
    let all_peaks_matched = unmatched_a.is_empty() && unmatched_b.is_empty();
    Ok(ComparisonReport {
        grid_step,
        min_relative_height,
        matched,
        unmatched_a,
        unmatched_b,
        l2_relative: sqrt(diff2) / sqrt(norm2),
        linf_relative: max_diff / max_b,
        all_peaks_matched,
    })
}

/// Where the `n = 0` lines sit under each pairing.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GroundTermReport {
    pub population: f64,
    /// `Υ₀₊, Υ₀₋` as printed.
    pub paper_centers: [f64; 2],
    /// `Υ₀± − E_ground`, with `E_ground = −E_J/2`.
    pub derived_centers: [f64; 2],
    pub shift: f64,
}

/// Oracle vs. both analytic pairings, plus diagnostics for the printed
/// correlation formula.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CrossValidation {
    /// Analytic (published pairing) against the oracle.
    pub paper: ComparisonReport,
    /// Analytic (derived pairing) against the oracle.
    pub derived: ComparisonReport,
    /// The pairing whose peaks all match the oracle; the smaller L2 distance
    /// wins a tie.
    pub validated_pairing: Option<WeightPairing>,
    pub ground_term: Option<GroundTermReport>,
    /// `max |G_printed − G_exact|` on a 16×16 `(t, τ)` grid spanning the
    /// quadrature windows.
    pub eq13_max_deviation: f64,
    pub eq13_convention: &'static str,
}

pub fn cross_validate(
    m: &TruncatedModel,
    d: &PhotonDistribution,
    analytic: &SpectrumConfig,
    oracle: &SpectrumSeries,
    settings: &QuadratureSettings,
) -> Result<CrossValidation> {
    let p = m.params();
    let config = analytic.with_grid(oracle.nu().to_vec())?;
    let paper_series = evaluate_grid(p, d, &config.with_pairing(WeightPairing::Paper))?;
    let derived_series = evaluate_grid(p, d, &config.with_pairing(WeightPairing::Derived))?;
    let paper = compare_spectra(&paper_series, oracle)?;
    let derived = compare_spectra(&derived_series, oracle)?;
    let validated_pairing = match (paper.all_peaks_matched, derived.all_peaks_matched) {
        (true, true) if paper.l2_relative < derived.l2_relative => Some(WeightPairing::Paper),
        (_, true) => Some(WeightPairing::Derived),
        (true, false) => Some(WeightPairing::Paper),
        (false, false) => None,
    };

    let ground_term = if d.population(0) >= SUPPORT_THRESHOLD {
        let lvl = DressedLevel::new(p, 0)?;
        let shift = 0.5 * p.josephson_energy();
        Some(GroundTermReport {
            population: d.population(0),
            paper_centers: [lvl.upsilon_plus, lvl.upsilon_minus],
            derived_centers: [lvl.upsilon_plus + shift, lvl.upsilon_minus + shift],
            shift,
        })
    } else {
        None
    };

    const STEPS: usize = 15;
    let mut eq13_max_deviation = 0.0f64;
    for i in 0..=STEPS {
        let t = settings.t_start + settings.t_avg * i as f64 / STEPS as f64;
        for j in 0..=STEPS {
            let tau = settings.tau_max * j as f64 / STEPS as f64;
            let exact = correlation_first_principles(m, d, t, tau)?;
            let printed = correlation_eq13(p, d, t, tau, analytic.transition_order())?;
            eq13_max_deviation = eq13_max_deviation.max((exact - printed).norm());
        }
    }

    Ok(CrossValidation {
        paper,
        derived,
        validated_pairing,
        ground_term,
        eq13_max_deviation,
        eq13_convention: EQ13_GROUND_CONVENTION,
    })
}
