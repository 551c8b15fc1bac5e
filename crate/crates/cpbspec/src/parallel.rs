//! Grid evaluation spread over the rayon pool. Every sample is computed on
//! its own with a fixed summation order, so results do not depend on the
//! number of threads.

use cpbspec_core::field::PhotonDistribution;
use cpbspec_core::model::CanonicalParams;
use cpbspec_core::oracle::{
    series_from_values, validate_settings, AveragedCorrelation, QuadratureSettings, TruncatedModel,
};
use cpbspec_core::spectrum::{
    evaluate, transition_lines, SeriesSource, SpectrumConfig, SpectrumSeries,
};
use cpbspec_core::Result;
use rayon::prelude::*;

/// Same result as `cpbspec_core::spectrum::evaluate_grid`.
pub fn analytic_series(
    p: &CanonicalParams,
    d: &PhotonDistribution,
    c: &SpectrumConfig,
) -> Result<SpectrumSeries> {
    let lines = transition_lines(p, d, c)?;
    let gamma = c.detector_width();
    let values = c
        .nu_grid()
        .par_iter()
        .map(|&nu| evaluate(&lines, gamma, nu))
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

/// Same result as `cpbspec_core::oracle::time_domain_spectrum`.
pub fn oracle_series(
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
        .par_iter()
        .map(|&nu| corr.spectral_density(nu, gamma))
        .collect();
    Ok(series_from_values(m, d, config, values))
}
