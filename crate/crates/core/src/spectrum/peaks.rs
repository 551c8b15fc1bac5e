use alloc::vec::Vec;

use super::SpectrumSeries;
use crate::error::{Error, Result};

/// A strict local maximum of a sampled spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Peak {
    pub index: usize,
    pub nu: f64,
    pub value: f64,
}

/// Peaks sorted by height, tallest first.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PeakSet {
    pub peaks: Vec<Peak>,
    /// Set when some grid spacing exceeds `γ/2`; narrow lines may be missed.
    pub coarse_grid: bool,
}

impl PeakSet {
    /// Peaks at least `fraction` of the tallest one.
    pub fn significant(&self, fraction: f64) -> impl Iterator<Item = &Peak> {
        let cut = self.peaks.first().map_or(0.0, |p| p.value * fraction);
        self.peaks.iter().filter(move |p| p.value >= cut)
    }
}

pub fn find_peaks(s: &SpectrumSeries) -> Result<PeakSet> {
    let nu = s.nu();
    let v = &s.values;
    if v.len() < 3 {
        return Err(Error::InvalidConfig(
            "peak search needs at least three samples",
        ));
    }
    let half_width = 0.5 * s.config.detector_width();
    let coarse_grid = nu.windows(2).any(|w| w[1] - w[0] > half_width);
    let mut peaks: Vec<Peak> = (1..v.len() - 1)
        .filter(|&i| v[i] > v[i - 1] && v[i] > v[i + 1])
        .map(|i| Peak {
            index: i,
            nu: nu[i],
            value: v[i],
        })
        .collect();
    // stable: equal heights keep grid order
    peaks.sort_by(|a, b| b.value.total_cmp(&a.value));
    Ok(PeakSet { peaks, coarse_grid })
}
