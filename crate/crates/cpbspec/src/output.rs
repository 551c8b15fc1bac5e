//! CSV and JSON renderings of spectra and cross-check reports.

use std::f64::consts::SQRT_2;
use std::fmt::Write;

use cpbspec_core::field::{PhotonDistribution, Provenance};
use cpbspec_core::model::CanonicalParams;
use cpbspec_core::oracle::{CrossValidation, QuadratureSettings, DEFAULT_MIN_RELATIVE_HEIGHT};
use cpbspec_core::spectrum::{
    find_peaks, SeriesSource, SpectrumSeries, TransitionLine, WeightPairing,
};
use serde::Serialize;

pub const SOFTWARE: &str = concat!("cpbspec ", env!("CARGO_PKG_VERSION"));

pub const CSV_HEADER: &str = "nu_offset,S";

/// Offsets in units of `g`, or of `λ = g/√2` when `paper_axis` is set.
pub fn axis_offsets(offsets: &[f64], paper_axis: bool) -> Vec<f64> {
    if paper_axis {
        offsets.iter().map(|x| x * SQRT_2).collect()
    } else {
        offsets.to_vec()
    }
}

fn axis_name(paper_axis: bool) -> &'static str {
    if paper_axis {
        "(nu-omega)/lambda"
    } else {
        "(nu-omega)/g"
    }
}

/// `nu_offset,S` rows with 17 significant digits.
pub fn csv(offsets: &[f64], values: &[f64]) -> String {
    let mut out = String::with_capacity(48 * (values.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (x, s) in offsets.iter().zip(values) {
        writeln!(out, "{x:.16e},{s:.16e}").expect("writing to a String");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakEcho {
    pub nu: f64,
    pub offset_g: f64,
    pub offset_paper_lambda: f64,
    pub value: f64,
}

/// The two tallest peaks when they sit at `±x₀` within one grid step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymmetricPair {
    pub x0_g: f64,
    pub x0_paper_lambda: f64,
    /// `|x₊ + x₋|`, in units of `g`.
    pub asymmetry_g: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominantPeaks {
    /// Peaks above 1% of the maximum, tallest first.
    pub peaks: Vec<PeakEcho>,
    pub symmetric_pair: Option<SymmetricPair>,
    pub coarse_grid: bool,
}

pub fn dominant_peaks(s: &SpectrumSeries) -> cpbspec_core::Result<DominantPeaks> {
    let set = find_peaks(s)?;
    let (w, g) = (s.params.omega(), s.params.g());
    let peaks: Vec<PeakEcho> = set
        .significant(DEFAULT_MIN_RELATIVE_HEIGHT)
        .map(|p| {
            let x = (p.nu - w) / g;
            PeakEcho {
                nu: p.nu,
                offset_g: x,
                offset_paper_lambda: x * SQRT_2,
                value: p.value,
            }
        })
        .collect();
    let step = s.nu().windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max) / g;
    let symmetric_pair = match peaks.as_slice() {
        [a, b, ..]
            if a.offset_g * b.offset_g < 0.0
                && (a.offset_g + b.offset_g).abs() <= step * (1.0 + 1e-9) =>
        {
            let x0 = 0.5 * (a.offset_g.abs() + b.offset_g.abs());
            Some(SymmetricPair {
                x0_g: x0,
                x0_paper_lambda: x0 * SQRT_2,
                asymmetry_g: (a.offset_g + b.offset_g).abs(),
            })
        }
        _ => None,
    };
    Ok(DominantPeaks {
        peaks,
        symmetric_pair,
        coarse_grid: set.coarse_grid,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamsEcho {
    pub omega: f64,
    pub delta: f64,
    pub g: f64,
    pub paper_lambda: f64,
    pub josephson_energy: f64,
}

impl From<&CanonicalParams> for ParamsEcho {
    fn from(p: &CanonicalParams) -> Self {
        Self {
            omega: p.omega(),
            delta: p.delta(),
            g: p.g(),
            paper_lambda: p.paper_lambda(),
            josephson_energy: p.josephson_energy(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldEcho<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<&'a str>,
    pub provenance: &'a Provenance,
    pub mean_photons: f64,
    /// `β_n²`.
    pub populations: Vec<f64>,
}

impl<'a> FieldEcho<'a> {
    pub fn new(label: Option<&'a str>, d: &'a PhotonDistribution) -> Self {
        Self {
            label,
            provenance: d.provenance(),
            mean_photons: d.mean_photons(),
            populations: d.populations().collect(),
        }
    }
}

#[derive(Serialize)]
struct Sample {
    nu_offset: f64,
    nu: f64,
    #[serde(rename = "S")]
    s: f64,
}

#[derive(Serialize)]
struct SeriesDocument<'a> {
    software: &'static str,
    params: ParamsEcho,
    field: FieldEcho<'a>,
    source: SeriesSource,
    pairing: Option<WeightPairing>,
    detector_width: f64,
    transition_order: usize,
    axis: &'static str,
    lines: &'a [TransitionLine],
    samples: Vec<Sample>,
    dominant_peaks: DominantPeaks,
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("report serializes");
    text.push('\n');
    text
}

/// Full JSON result for one series.
pub fn series_json(
    series: &SpectrumSeries,
    field: FieldEcho<'_>,
    offsets: &[f64],
    paper_axis: bool,
) -> cpbspec_core::Result<String> {
    let samples = axis_offsets(offsets, paper_axis)
        .into_iter()
        .zip(series.samples())
        .map(|(nu_offset, (nu, s))| Sample { nu_offset, nu, s })
        .collect();
    let pairing = match series.source {
        SeriesSource::Analytic(p) => Some(p),
        SeriesSource::Oracle => None,
    };
    Ok(to_json(&SeriesDocument {
        software: SOFTWARE,
        params: (&series.params).into(),
        field,
        source: series.source,
        pairing,
        detector_width: series.config.detector_width(),
        transition_order: series.config.transition_order(),
        axis: axis_name(paper_axis),
        lines: &series.lines,
        samples,
        dominant_peaks: dominant_peaks(series)?,
    }))
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    software: &'static str,
    params: ParamsEcho,
    field: FieldEcho<'a>,
    n_max: usize,
    quadrature: &'a QuadratureSettings,
    analytic_peaks: DominantPeaks,
    oracle_peaks: DominantPeaks,
    cross_validation: &'a CrossValidation,
}

/// Analytic vs. time-domain comparison for one curve.
pub fn report_json(
    analytic: &SpectrumSeries,
    oracle: &SpectrumSeries,
    field: FieldEcho<'_>,
    n_max: usize,
    quadrature: &QuadratureSettings,
    cross: &CrossValidation,
) -> cpbspec_core::Result<String> {
    Ok(to_json(&ReportDocument {
        software: SOFTWARE,
        params: (&analytic.params).into(),
        field,
        n_max,
        quadrature,
        analytic_peaks: dominant_peaks(analytic)?,
        oracle_peaks: dominant_peaks(oracle)?,
        cross_validation: cross,
    }))
}
