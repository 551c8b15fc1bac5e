//! Closed-form transient spectrum as a sum of Lorentzian transition lines.
//!
//! Each line is `w γ / (γ² + (ν − c)²)`, so the whole spectrum is fixed by
//! the catalog of `(c, w)` pairs and the detector width `γ`.

mod lines;
mod peaks;

use alloc::vec::Vec;

pub use lines::{asymmetry, integrated_power, transition_lines, Branch, TransitionLine};
pub use peaks::{find_peaks, Peak, PeakSet};

use crate::error::{Error, Result};
use crate::field::{PhotonDistribution, Provenance};
use crate::model::CanonicalParams;

/// Which branch assignment of the four `n ≥ k` weights to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WeightPairing {
    /// Weights attached exactly as the published closed form prints them,
    /// including the `n = 0` lines at `ν = Υ₀±`.
    #[default]
    Paper,
    /// Weights attached as the propagator amplitudes dictate: `sin²θ_n` goes
    /// with `Υ₋` on the upper level, the lower level enters through its
    /// `|n,↓⟩` diagonal amplitude, and `n = 0` lines sit at `Υ₀± − E_ground`.
    Derived,
}

impl WeightPairing {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Paper => "paper",
            Self::Derived => "derived",
        }
    }
}

/// Default frequency window in units of `g` around `ω`.
pub const DEFAULT_OFFSET_RANGE: (f64, f64) = (-12.0, 12.0);
/// Default number of grid points.
pub const DEFAULT_GRID_POINTS: usize = 2001;

/// `points` frequencies `ν = ω + g·x` with `x` uniform on `[lo, hi]`.
pub fn offset_grid(p: &CanonicalParams, lo: f64, hi: f64, points: usize) -> Vec<f64> {
    offsets(lo, hi, points)
        .into_iter()
        .map(|x| p.omega() + p.g() * x)
        .collect()
}

/// The uniform offsets `x_i` used by [`offset_grid`].
pub fn offsets(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let step = (hi - lo) / (points - 1) as f64;
            (0..points).map(|i| lo + step * i as f64).collect()
        }
    }
}

/// `γ`, the ν grid, the transition order `k` and the weight pairing.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpectrumConfig {
    detector_width: f64,
    nu_grid: Vec<f64>,
    transition_order: usize,
    weight_pairing: WeightPairing,
}

impl SpectrumConfig {
    /// `k = 1` with the published pairing.
    pub fn new(detector_width: f64, nu_grid: Vec<f64>) -> Result<Self> {
        Self::with_options(detector_width, nu_grid, 1, WeightPairing::Paper, false)
    }

    /// Full constructor. `k ≠ 1` is only accepted with `experimental` set,
    /// since the doublet structure only supports single-photon transitions.
    pub fn with_options(
        detector_width: f64,
        nu_grid: Vec<f64>,
        transition_order: usize,
        weight_pairing: WeightPairing,
        experimental: bool,
    ) -> Result<Self> {
        if !(detector_width.is_finite() && detector_width > 0.0) {
            return Err(Error::ParameterDomain {
                name: "gamma",
                value: detector_width,
            });
        }
        if nu_grid.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(
                "frequency grid contains non-finite values",
            ));
        }
        if nu_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig(
                "frequency grid must be strictly increasing",
            ));
        }
        if transition_order == 0 {
            return Err(Error::InvalidConfig("transition order must be at least 1"));
        }
        if transition_order != 1 && !experimental {
            return Err(Error::InvalidConfig(
                "transition order other than 1 requires the experimental flag",
            ));
        }
        Ok(Self {
            detector_width,
            nu_grid,
            transition_order,
            weight_pairing,
        })
    }

    pub fn detector_width(&self) -> f64 {
        self.detector_width
    }

    pub fn nu_grid(&self) -> &[f64] {
        &self.nu_grid
    }

    pub fn transition_order(&self) -> usize {
        self.transition_order
    }

    pub fn weight_pairing(&self) -> WeightPairing {
        self.weight_pairing
    }

    pub fn with_pairing(&self, weight_pairing: WeightPairing) -> Self {
        Self {
            weight_pairing,
            ..self.clone()
        }
    }

    pub fn with_grid(&self, nu_grid: Vec<f64>) -> Result<Self> {
        Self::with_options(
            self.detector_width,
            nu_grid,
            self.transition_order,
            self.weight_pairing,
            true,
        )
    }
}

/// Where a series came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "kind", content = "pairing", rename_all = "snake_case")
)]
pub enum SeriesSource {
    Analytic(WeightPairing),
    Oracle,
}

/// Compact description of the input field carried along with a series.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DistributionSummary {
    pub provenance: Provenance,
    pub mean_photons: f64,
    pub len: usize,
}

impl From<&PhotonDistribution> for DistributionSummary {
    fn from(d: &PhotonDistribution) -> Self {
        Self {
            provenance: d.provenance().clone(),
            mean_photons: d.mean_photons(),
            len: d.len(),
        }
    }
}

/// Sampled `S(ν)` together with the inputs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSeries {
    pub config: SpectrumConfig,
    pub params: CanonicalParams,
    pub distribution: DistributionSummary,
    pub source: SeriesSource,
    /// Empty for oracle series.
    pub lines: Vec<TransitionLine>,
    pub values: Vec<f64>,
}

impl SpectrumSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn nu(&self) -> &[f64] {
        self.config.nu_grid()
    }

    /// `(ν, S(ν))` pairs.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nu().iter().copied().zip(self.values.iter().copied())
    }

    /// Abscissa `(ν − ω)/g`.
    pub fn offsets(&self) -> impl Iterator<Item = f64> + '_ {
        let (w, g) = (self.params.omega(), self.params.g());
        self.nu().iter().map(move |nu| (nu - w) / g)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Spectrum of a line catalog at one frequency.
pub fn evaluate(lines: &[TransitionLine], detector_width: f64, nu: f64) -> f64 {
    let g2 = detector_width * detector_width;
    lines
        .iter()
        .map(|l| {
            let d = nu - l.center;
            l.weight * detector_width / (g2 + d * d)
        })
        .sum()
}

/// Catalog plus samples on the configured grid.
pub fn evaluate_grid(
    p: &CanonicalParams,
    d: &PhotonDistribution,
    c: &SpectrumConfig,
) -> Result<SpectrumSeries> {
    let lines = transition_lines(p, d, c)?;
    let values = c
        .nu_grid()
        .iter()
        .map(|&nu| evaluate(&lines, c.detector_width(), nu))
        .collect();
    Ok(SpectrumSeries {
        config: c.clone(),
        params: *p,
        distribution: d.into(),
        source: SeriesSource::Analytic(c.weight_pairing()),
        lines,
        values,
    })
}
