use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{SpectrumConfig, WeightPairing};
use crate::error::{Error, Result};
use crate::field::{PhotonDistribution, SUPPORT_THRESHOLD};
use crate::model::{CanonicalParams, DressedLevel};

/// Which pair of dressed energies a line connects.
///
/// `PlusMinus` is `ν = Υ₊(n) − Υ₋(n−k)`, and so on. The two `Ground*` lines
/// come from the `n = 0` doublet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Branch {
    #[cfg_attr(feature = "serde", serde(rename = "++"))]
    PlusPlus,
    #[cfg_attr(feature = "serde", serde(rename = "+-"))]
    PlusMinus,
    #[cfg_attr(feature = "serde", serde(rename = "-+"))]
    MinusPlus,
    #[cfg_attr(feature = "serde", serde(rename = "--"))]
    MinusMinus,
    #[cfg_attr(feature = "serde", serde(rename = "n0+"))]
    GroundPlus,
    #[cfg_attr(feature = "serde", serde(rename = "n0-"))]
    GroundMinus,
}

impl Branch {
    pub fn is_ground(self) -> bool {
        matches!(self, Self::GroundPlus | Self::GroundMinus)
    }
}

/// One Lorentzian component of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TransitionLine {
    pub center: f64,
    pub weight: f64,
    pub source_n: usize,
    pub branch: Branch,
}

fn sin4_cos4(level: &DressedLevel) -> (f64, f64) {
    let s2 = level.sin2();
    let c2 = level.cos2();
    (s2 * s2, c2 * c2)
}

/// Builds the line catalog for an initially excited box.
///
/// Fock components with `β_n² <` [`SUPPORT_THRESHOLD`] contribute no lines;
/// neither do `0 < n < k`.
pub fn transition_lines(
    p: &CanonicalParams,
    d: &PhotonDistribution,
    c: &SpectrumConfig,
) -> Result<Vec<TransitionLine>> {
    if d.is_empty() {
        return Err(Error::InvalidDistribution("no amplitudes"));
    }
    let k = c.transition_order();
    let pairing = c.weight_pairing();
    let ground_energy = -0.5 * p.josephson_energy();
    let mut lines = Vec::new();

    for (n, pop) in d.populations().enumerate() {
        if pop < SUPPORT_THRESHOLD || (n > 0 && n < k) {
            continue;
        }
        let upper = DressedLevel::new(p, n)?;
        let (s4, c4) = sin4_cos4(&upper);
        if n == 0 {
            let (plus, minus) = match pairing {
                WeightPairing::Paper => ((upper.upsilon_plus, s4), (upper.upsilon_minus, c4)),
                WeightPairing::Derived => (
                    (upper.upsilon_plus - ground_energy, c4),
                    (upper.upsilon_minus - ground_energy, s4),
                ),
            };
            lines.push(TransitionLine {
                center: plus.0,
                weight: pop * plus.1,
                source_n: 0,
                branch: Branch::GroundPlus,
            });
            lines.push(TransitionLine {
                center: minus.0,
                weight: pop * minus.1,
                source_n: 0,
                branch: Branch::GroundMinus,
            });
            continue;
        }

        let lower = DressedLevel::new(p, n - k)?;
        let (ls2, lc2) = (lower.sin2(), lower.cos2());
        // weights for (++, +-, -+, --)
        let w = match pairing {
            WeightPairing::Paper => [s4 * lc2, s4 * ls2, c4 * lc2, c4 * ls2],
            WeightPairing::Derived => [c4 * ls2, c4 * lc2, s4 * ls2, s4 * lc2],
        };
        let centers = [
            (upper.upsilon_plus - lower.upsilon_plus, Branch::PlusPlus),
            (upper.upsilon_plus - lower.upsilon_minus, Branch::PlusMinus),
            (upper.upsilon_minus - lower.upsilon_plus, Branch::MinusPlus),
            (
                upper.upsilon_minus - lower.upsilon_minus,
                Branch::MinusMinus,
            ),
        ];
        for ((center, branch), weight) in centers.into_iter().zip(w) {
            lines.push(TransitionLine {
                center,
                weight: pop * weight,
                source_n: n,
                branch,
            });
        }
    }
    Ok(lines)
}

/// Analytic area under the spectrum, `π Σ w`.
pub fn integrated_power(lines: &[TransitionLine]) -> f64 {
    PI * lines.iter().map(|l| l.weight).sum::<f64>()
}

/// Normalized first moment `|Σ w (c − ω)| / Σ w`. This is `|∫(ν−ω)S dν| / ∫S dν`
/// over a window symmetric about `ω`, in the limit of an infinite window. With `include_ground = false` the `n = 0` lines are
/// left out.
pub fn asymmetry(lines: &[TransitionLine], omega: f64, include_ground: bool) -> f64 {
    let (moment, total) = lines
        .iter()
        .filter(|l| include_ground || !l.branch.is_ground())
        .fold((0.0, 0.0), |(m, t), l| {
            (m + l.weight * (l.center - omega), t + l.weight)
        });
    if total > 0.0 {
        (moment / total).abs()
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rabi_splitting;
    use crate::spectrum::offset_grid;
    use core::f64::consts::FRAC_PI_2;

    fn config(p: &CanonicalParams, pairing: WeightPairing) -> SpectrumConfig {
        SpectrumConfig::with_options(0.1, offset_grid(p, -12.0, 12.0, 201), 1, pairing, false)
            .unwrap()
    }

    #[test]
    fn vacuum_has_two_ground_lines() {
        let p = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
        let lines = transition_lines(
            &p,
            &PhotonDistribution::vacuum(),
            &config(&p, WeightPairing::Paper),
        )
        .unwrap();
        assert_eq!(lines.len(), 2);
        assert!((lines[0].center - 6.0).abs() < 1e-15);
        assert!((lines[1].center - 4.0).abs() < 1e-15);
        for l in &lines {
            assert!((l.weight - 0.25).abs() < 1e-15);
        }
        let derived = transition_lines(
            &p,
            &PhotonDistribution::vacuum(),
            &config(&p, WeightPairing::Derived),
        )
        .unwrap();
        assert!((derived[0].center - 11.0).abs() < 1e-14);
        assert!((derived[1].center - 9.0).abs() < 1e-14);
    }

    #[test]
    fn binomial_line_count() {
        let p = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
        let d = PhotonDistribution::binomial(0.7, 3).unwrap();
        let lines = transition_lines(&p, &d, &config(&p, WeightPairing::Paper)).unwrap();
        assert_eq!(lines.len(), 14);
        // number state: β₀ = 0
        let lines = transition_lines(
            &p,
            &PhotonDistribution::number(4),
            &config(&p, WeightPairing::Paper),
        )
        .unwrap();
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn resonant_centers_are_symmetric() {
        let p = CanonicalParams::new(10.0, 0.0, 0.7).unwrap();
        for n in 1..12 {
            let d = PhotonDistribution::number(n);
            let lines = transition_lines(&p, &d, &config(&p, WeightPairing::Paper)).unwrap();
            let (mu, mu1) = (rabi_splitting(&p, n), rabi_splitting(&p, n - 1));
            let expect = [
                10.0 + (mu - mu1),
                10.0 + (mu + mu1),
                10.0 - (mu + mu1),
                10.0 - (mu - mu1),
            ];
            for (l, e) in lines.iter().zip(expect) {
                assert!((l.center - e).abs() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn branch_weights_sum() {
        let p = CanonicalParams::new(10.0, 1.3, 0.6).unwrap();
        for pairing in [WeightPairing::Paper, WeightPairing::Derived] {
            for n in 1..10 {
                let lines =
                    transition_lines(&p, &PhotonDistribution::number(n), &config(&p, pairing))
                        .unwrap();
                let lvl = DressedLevel::new(&p, n).unwrap();
                let total: f64 = lines.iter().map(|l| l.weight).sum();
                let (s4, c4) = sin4_cos4(&lvl);
                assert!((total - (s4 + c4)).abs() < 1e-15);
                assert!(lines.iter().all(|l| (0.0..=1.0).contains(&l.weight)));
            }
        }
    }

    #[test]
    fn integrated_power_values() {
        let p = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
        let c = config(&p, WeightPairing::Paper);
        let vac = transition_lines(&p, &PhotonDistribution::vacuum(), &c).unwrap();
        assert!((integrated_power(&vac) - FRAC_PI_2).abs() < 1e-15);
        let five = transition_lines(&p, &PhotonDistribution::number(5), &c).unwrap();
        assert!((integrated_power(&five) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn higher_order_skips_intermediate_n() {
        let p = CanonicalParams::new(10.0, 0.2, 1.0).unwrap();
        let c = SpectrumConfig::with_options(0.1, alloc::vec![10.0], 2, WeightPairing::Paper, true)
            .unwrap();
        let d = PhotonDistribution::custom(alloc::vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let lines = transition_lines(&p, &d, &c).unwrap();
        // n=0 (2 lines), n=2 and n=3 (4 each); n=1 < k contributes nothing
        assert_eq!(lines.len(), 10);
        assert!(lines.iter().all(|l| l.source_n != 1));
    }

    #[test]
    fn asymmetry_vanishes_at_resonance_without_ground() {
        let p = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
        let d = PhotonDistribution::binomial(0.7, 3).unwrap();
        let lines = transition_lines(&p, &d, &config(&p, WeightPairing::Paper)).unwrap();
        assert!(asymmetry(&lines, 10.0, false) < 1e-12);
        assert!(asymmetry(&lines, 10.0, true) > 0.0);
    }
}
