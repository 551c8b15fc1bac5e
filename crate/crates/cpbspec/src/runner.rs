//! `run` and `sweep`: compute every curve, render every artifact, and only
//! then touch the file system, so a failing run leaves nothing behind.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use cpbspec_core::field::PhotonDistribution;
use cpbspec_core::model::CanonicalParams;
use cpbspec_core::oracle::{
    build_truncated_model, cross_validate, recommended_cutoff, CrossValidation, QuadratureSettings,
    DEFAULT_N_MAX,
};
use cpbspec_core::spectrum::{SpectrumConfig, SpectrumSeries};
use serde::Serialize;

use crate::config::{Axis, Format, RunConfig};
use crate::error::CliError;
use crate::output::{self, FieldEcho, SOFTWARE};
use crate::parallel::{analytic_series, oracle_series};

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub n_max: usize,
    pub settings: QuadratureSettings,
    pub series: SpectrumSeries,
    pub cross: CrossValidation,
}

#[derive(Debug, Clone)]
pub struct CurveResult {
    pub label: Option<String>,
    pub distribution: PhotonDistribution,
    /// Grid abscissa in units of `g`.
    pub offsets: Vec<f64>,
    pub analytic: SpectrumSeries,
    pub oracle: Option<OracleOutcome>,
}

/// A file to be written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub path: PathBuf,
    pub contents: String,
}

fn oracle_outcome(
    cfg: &RunConfig,
    p: &CanonicalParams,
    d: &PhotonDistribution,
    analytic: &SpectrumConfig,
) -> Result<OracleOutcome, CliError> {
    let o = &cfg.oracle;
    let n_max = o
        .n_max
        .unwrap_or_else(|| DEFAULT_N_MAX.max(recommended_cutoff(d)));
    let m = build_truncated_model(p, n_max)?;
    let gamma = analytic.detector_width();
    let defaults = QuadratureSettings::defaults(&m, d, gamma)?;
    let settings = QuadratureSettings {
        t_start: o.t_start,
        t_avg: o.t_avg.unwrap_or(defaults.t_avg),
        tau_max: o.tau_max.unwrap_or(defaults.tau_max),
        n_t: o.n_t,
        n_tau: o.n_tau,
    };
    let series = oracle_series(&m, d, gamma, analytic.nu_grid().to_vec(), &settings)?;
    let cross = cross_validate(&m, d, analytic, &series, &settings)?;
    Ok(OracleOutcome {
        n_max,
        settings,
        series,
        cross,
    })
}

/// Evaluates every curve of `cfg`, plus the time-domain cross-check when enabled.
pub fn compute(cfg: &RunConfig) -> Result<Vec<CurveResult>, CliError> {
    cfg.validate()?;
    let p = cfg.canonical()?;
    let (offsets, spectrum) = cfg.spectrum_config(&p)?;
    cfg.curves()?
        .into_iter()
        .map(|curve| {
            let analytic = analytic_series(&p, &curve.distribution, &spectrum)?;
            let oracle = if cfg.oracle.enabled {
                Some(oracle_outcome(cfg, &p, &curve.distribution, &spectrum)?)
            } else {
                None
            };
            Ok(CurveResult {
                label: curve.label,
                distribution: curve.distribution,
                offsets: offsets.clone(),
                analytic,
                oracle,
            })
        })
        .collect()
}

fn joined(stem: &Path, parts: &[&str]) -> OsString {
    let mut name = OsString::from(stem.as_os_str());
    for part in parts {
        name.push("_");
        name.push(part);
    }
    name
}

fn suffixed(stem: &Path, parts: &[&str], extension: &str) -> PathBuf {
    let mut name = joined(stem, parts);
    name.push(".");
    name.push(extension);
    PathBuf::from(name)
}

fn default_stem(cfg: &RunConfig) -> PathBuf {
    PathBuf::from(cfg.preset.as_deref().unwrap_or("spectrum"))
}

fn series_text(
    cfg: &RunConfig,
    series: &SpectrumSeries,
    curve: &CurveResult,
) -> Result<String, CliError> {
    let paper_axis = cfg.output.paper_axis;
    Ok(match cfg.output.format {
        Format::Csv => output::csv(
            &output::axis_offsets(&curve.offsets, paper_axis),
            &series.values,
        ),
        Format::Json => output::series_json(
            series,
            FieldEcho::new(curve.label.as_deref(), &curve.distribution),
            &curve.offsets,
            paper_axis,
        )?,
    })
}

/// Renders the files for one run. `exact` names the main file of a
/// single-curve run; everything else is derived from `stem`.
pub fn render(
    cfg: &RunConfig,
    results: &[CurveResult],
    stem: &Path,
    exact: Option<&Path>,
) -> Result<Vec<Artifact>, CliError> {
    let ext = cfg.output.format.extension();
    let mut artifacts = Vec::new();
    for curve in results {
        let label: Vec<&str> = curve.label.as_deref().into_iter().collect();
        let path = match (exact, results.len()) {
            (Some(p), 1) => p.to_path_buf(),
            _ => suffixed(stem, &label, ext),
        };
        artifacts.push(Artifact {
            path,
            contents: series_text(cfg, &curve.analytic, curve)?,
        });
        if let Some(o) = &curve.oracle {
            let mut parts = label.clone();
            parts.push("oracle");
            artifacts.push(Artifact {
                path: suffixed(stem, &parts, ext),
                contents: series_text(cfg, &o.series, curve)?,
            });
            parts.pop();
            parts.push("report");
            artifacts.push(Artifact {
                path: suffixed(stem, &parts, "json"),
                contents: output::report_json(
                    &curve.analytic,
                    &o.series,
                    FieldEcho::new(curve.label.as_deref(), &curve.distribution),
                    o.n_max,
                    &o.settings,
                    &o.cross,
                )?,
            });
        }
    }
    Ok(artifacts)
}

pub fn write_all(artifacts: &[Artifact]) -> Result<Vec<PathBuf>, CliError> {
    artifacts
        .iter()
        .map(|a| {
            fs::write(&a.path, &a.contents).map_err(|e| CliError::io(&a.path, e))?;
            Ok(a.path.clone())
        })
        .collect()
}

/// Artifacts of a single run.
pub fn plan_run(cfg: &RunConfig) -> Result<Vec<Artifact>, CliError> {
    let results = compute(cfg)?;
    match &cfg.output.path {
        Some(p) => render(cfg, &results, &p.with_extension(""), Some(p)),
        None => render(cfg, &results, &default_stem(cfg), None),
    }
}

pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    write_all(&plan_run(cfg)?)
}

#[derive(Serialize)]
struct SweepEntry {
    value: f64,
    files: Vec<String>,
}

#[derive(Serialize)]
struct SweepIndex<'a> {
    software: &'static str,
    axis: &'a str,
    values: &'a [f64],
    runs: Vec<SweepEntry>,
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map_or_else(String::new, |n| n.to_string_lossy().into_owned())
}

/// Artifacts of a sweep: one run per value plus `<stem>_index.json`.
pub fn plan_sweep(cfg: &RunConfig, axis: Axis, values: &[f64]) -> Result<Vec<Artifact>, CliError> {
    if values.is_empty() {
        return Err(CliError::Usage("sweep needs at least one value".into()));
    }
    let stem = cfg
        .output
        .path
        .as_ref()
        .map_or_else(|| default_stem(cfg), |p| p.with_extension(""));
    let mut names: Vec<String> = Vec::with_capacity(values.len());
    let mut artifacts = Vec::new();
    let mut runs = Vec::with_capacity(values.len());
    for &value in values {
        let name = format!("{value}");
        if names.contains(&name) {
            return Err(CliError::Usage(format!("duplicate sweep value {name}")));
        }
        let point = cfg.with_axis(axis, value)?;
        let results = compute(&point)?;
        let run_stem = PathBuf::from(joined(&stem, &[axis.as_str(), &name]));
        let produced = render(&point, &results, &run_stem, None)?;
        runs.push(SweepEntry {
            value,
            files: produced.iter().map(|a| file_name(&a.path)).collect(),
        });
        artifacts.extend(produced);
        names.push(name);
    }
    let mut index = serde_json::to_string_pretty(&SweepIndex {
        software: SOFTWARE,
        axis: axis.as_str(),
        values,
        runs,
    })
    .expect("index serializes");
    index.push('\n');
    artifacts.push(Artifact {
        path: suffixed(&stem, &["index"], "json"),
        contents: index,
    });
    Ok(artifacts)
}

pub fn sweep(cfg: &RunConfig, axis: Axis, values: &[f64]) -> Result<Vec<PathBuf>, CliError> {
    write_all(&plan_sweep(cfg, axis, values)?)
}
