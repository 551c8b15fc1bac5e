//! Strict JSON run configuration.
//!
//! A document names either canonical `params` or raw `device` constants, one
//! or more `field` states, and the `spectrum` settings. `oracle` and `output`
//! are optional. A `preset` key supplies every section the document leaves
//! out.

use std::fmt;
use std::path::PathBuf;

use cpbspec_core::field::PhotonDistribution;
use cpbspec_core::model::{canonicalize, CanonicalParams, DeviceParams};
use cpbspec_core::oracle::DEFAULT_INTERVALS;
use cpbspec_core::spectrum::{
    offsets, SpectrumConfig, WeightPairing, DEFAULT_GRID_POINTS, DEFAULT_OFFSET_RANGE,
};
use serde::de::value::{MapAccessDeserializer, SeqAccessDeserializer};
use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::CliError;
use crate::presets;

/// Default tail mass cut for coherent states.
pub const DEFAULT_TAIL_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Binomial,
    Coherent,
    Number,
    Vacuum,
    Custom,
}

impl FieldKind {
    fn as_str(self) -> &'static str {
        match self {
            Self::Binomial => "binomial",
            Self::Coherent => "coherent",
            Self::Number => "number",
            Self::Vacuum => "vacuum",
            Self::Custom => "custom",
        }
    }
}

/// One input field. Which of the optional keys are required depends on `kind`:
/// `binomial` takes `eta` and `m`, `coherent` takes `mean_photons` and an
/// optional `tail_epsilon`, `number` takes `m`, `custom` takes `amplitudes`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub kind: FieldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_photons: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<f64>>,
    /// Distinguishes curves in output file names.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl FieldSpec {
    fn bare(kind: FieldKind) -> Self {
        Self {
            kind,
            eta: None,
            m: None,
            mean_photons: None,
            tail_epsilon: None,
            amplitudes: None,
            label: None,
        }
    }

    pub fn binomial(eta: f64, m: usize) -> Self {
        Self {
            eta: Some(eta),
            m: Some(m),
            ..Self::bare(FieldKind::Binomial)
        }
    }

    pub fn coherent(mean_photons: f64) -> Self {
        Self {
            mean_photons: Some(mean_photons),
            ..Self::bare(FieldKind::Coherent)
        }
    }

    pub fn number(m: usize) -> Self {
        Self {
            m: Some(m),
            ..Self::bare(FieldKind::Number)
        }
    }

    pub fn vacuum() -> Self {
        Self::bare(FieldKind::Vacuum)
    }

    pub fn custom(amplitudes: Vec<f64>) -> Self {
        Self {
            amplitudes: Some(amplitudes),
            ..Self::bare(FieldKind::Custom)
        }
    }

    pub fn labeled(self, label: &str) -> Self {
        Self {
            label: Some(label.to_owned()),
            ..self
        }
    }

    /// The explicit label, or one derived from the parameters.
    pub fn display_label(&self, index: usize) -> String {
        if let Some(label) = &self.label {
            return label.clone();
        }
        match self.kind {
            FieldKind::Binomial => {
                format!("eta{}_m{}", self.eta.unwrap_or(0.0), self.m.unwrap_or(0))
            }
            FieldKind::Coherent => format!("alpha2_{}", self.mean_photons.unwrap_or(0.0)),
            FieldKind::Number => format!("number{}", self.m.unwrap_or(0)),
            FieldKind::Vacuum => "vacuum".to_owned(),
            FieldKind::Custom => format!("custom{index}"),
        }
    }

    fn check_keys(&self, at: &str) -> Result<(), CliError> {
        let present = [
            ("eta", self.eta.is_some()),
            ("m", self.m.is_some()),
            ("mean_photons", self.mean_photons.is_some()),
            ("tail_epsilon", self.tail_epsilon.is_some()),
            ("amplitudes", self.amplitudes.is_some()),
        ];
        let (required, optional): (&[&str], &[&str]) = match self.kind {
            FieldKind::Binomial => (&["eta", "m"], &[]),
            FieldKind::Coherent => (&["mean_photons"], &["tail_epsilon"]),
            FieldKind::Number => (&["m"], &[]),
            FieldKind::Vacuum => (&[], &[]),
            FieldKind::Custom => (&["amplitudes"], &[]),
        };
        for (key, is_set) in present {
            let allowed = required.contains(&key) || optional.contains(&key);
            if is_set && !allowed {
                return Err(CliError::config(
                    format!("{at}.{key}"),
                    format!("not accepted by kind `{}`", self.kind.as_str()),
                ));
            }
            if !is_set && required.contains(&key) {
                return Err(CliError::config(
                    format!("{at}.{key}"),
                    format!("required by kind `{}`", self.kind.as_str()),
                ));
            }
        }
        if let Some(label) = &self.label {
            let ok = !label.is_empty()
                && label
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'));
            if !ok {
                return Err(CliError::config(
                    format!("{at}.label"),
                    "labels may only contain ASCII letters, digits, `.`, `_` and `-`",
                ));
            }
        }
        Ok(())
    }

    /// Builds the distribution, reporting failures against `at`.
    pub fn build(&self, at: &str) -> Result<PhotonDistribution, CliError> {
        self.check_keys(at)?;
        let built = match self.kind {
            FieldKind::Binomial => PhotonDistribution::binomial(self.eta.unwrap(), self.m.unwrap()),
            FieldKind::Coherent => PhotonDistribution::coherent(
                self.mean_photons.unwrap(),
                self.tail_epsilon.unwrap_or(DEFAULT_TAIL_EPSILON),
            ),
            FieldKind::Number => Ok(PhotonDistribution::number(self.m.unwrap())),
            FieldKind::Vacuum => Ok(PhotonDistribution::vacuum()),
            FieldKind::Custom => PhotonDistribution::custom(self.amplitudes.clone().unwrap()),
        };
        built.map_err(|e| {
            let key = match &e {
                cpbspec_core::Error::ParameterDomain { name, .. } => match *name {
                    "M" => "m",
                    "mean_photons" | "tail_epsilon" | "eta" => name,
                    _ => "",
                },
                cpbspec_core::Error::InvalidDistribution(_) => "amplitudes",
                _ => "",
            };
            let path = if key.is_empty() {
                at.to_owned()
            } else {
                format!("{at}.{key}")
            };
            CliError::config(path, e)
        })
    }
}

/// A single field or an overlay of several.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldSet {
    One(FieldSpec),
    Many(Vec<FieldSpec>),
}

impl FieldSet {
    pub fn specs(&self) -> &[FieldSpec] {
        match self {
            Self::One(f) => std::slice::from_ref(f),
            Self::Many(v) => v,
        }
    }

    pub fn specs_mut(&mut self) -> &mut [FieldSpec] {
        match self {
            Self::One(f) => std::slice::from_mut(f),
            Self::Many(v) => v,
        }
    }

    fn key(&self, index: usize) -> String {
        match self {
            Self::One(_) => "field".to_owned(),
            Self::Many(_) => format!("field[{index}]"),
        }
    }
}

impl Serialize for FieldSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::One(f) => f.serialize(s),
            Self::Many(v) => v.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for FieldSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = FieldSet;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a field object or an array of field objects")
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<FieldSet, A::Error> {
                FieldSpec::deserialize(MapAccessDeserializer::new(map)).map(FieldSet::One)
            }

            fn visit_seq<A: SeqAccess<'de>>(self, seq: A) -> Result<FieldSet, A::Error> {
                let v = Vec::<FieldSpec>::deserialize(SeqAccessDeserializer::new(seq))?;
                if v.is_empty() {
                    return Err(de::Error::invalid_length(0, &"at least one field"));
                }
                Ok(FieldSet::Many(v))
            }
        }
        d.deserialize_any(V)
    }
}

/// Frequency grid in units of `g` around `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            min: DEFAULT_OFFSET_RANGE.0,
            max: DEFAULT_OFFSET_RANGE.1,
            points: DEFAULT_GRID_POINTS,
        }
    }
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumSpec {
    pub gamma: f64,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default = "one")]
    pub order: usize,
    #[serde(default)]
    pub experimental_order: bool,
    #[serde(default)]
    pub pairing: WeightPairing,
}

impl SpectrumSpec {
    pub fn new(gamma: f64) -> Self {
        Self {
            gamma,
            grid: GridSpec::default(),
            order: 1,
            experimental_order: false,
            pairing: WeightPairing::Paper,
        }
    }
}

/// Time-domain cross-check settings. Unset windows follow the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleSpec {
    pub enabled: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    pub t_start: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_avg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_max: Option<f64>,
    pub n_t: usize,
    pub n_tau: usize,
}

impl Default for OracleSpec {
    fn default() -> Self {
        Self {
            enabled: false,
            n_max: None,
            t_start: 0.0,
            t_avg: None,
            tau_max: None,
            n_t: DEFAULT_INTERVALS,
            n_tau: DEFAULT_INTERVALS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSpec {
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub paper_axis: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamsSpec {
    Canonical(CanonicalParams),
    Device(DeviceParams),
}

/// A validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub params: ParamsSpec,
    pub field: FieldSet,
    pub spectrum: SpectrumSpec,
    pub oracle: OracleSpec,
    pub output: OutputSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    preset: Option<String>,
    params: Option<CanonicalParams>,
    device: Option<DeviceParams>,
    field: Option<FieldSet>,
    spectrum: Option<SpectrumSpec>,
    oracle: Option<OracleSpec>,
    output: Option<OutputSpec>,
}

#[derive(Serialize)]
struct RawConfigOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    preset: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<&'a CanonicalParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    device: Option<&'a DeviceParams>,
    field: &'a FieldSet,
    spectrum: &'a SpectrumSpec,
    oracle: &'a OracleSpec,
    output: &'a OutputSpec,
}

impl Serialize for RunConfig {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (params, device) = match &self.params {
            ParamsSpec::Canonical(p) => (Some(p), None),
            ParamsSpec::Device(d) => (None, Some(d)),
        };
        RawConfigOut {
            preset: self.preset.as_deref(),
            params,
            device,
            field: &self.field,
            spectrum: &self.spectrum,
            oracle: &self.oracle,
            output: &self.output,
        }
        .serialize(s)
    }
}

/// Parses and validates a JSON configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_data() {
            CliError::config(
                if path == "." {
                    "<root>".to_owned()
                } else {
                    path
                },
                inner,
            )
        } else {
            CliError::Syntax {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        }
    })?;
    de.end().map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let cfg = resolve(raw)?;
    cfg.validate()?;
    Ok(cfg)
}

fn resolve(raw: RawConfig) -> Result<RunConfig, CliError> {
    let base = match &raw.preset {
        Some(name) => Some(
            presets::preset(name)
                .ok_or_else(|| CliError::config("preset", format!("unknown preset `{name}`")))?,
        ),
        None => None,
    };
    let params = match (raw.params, raw.device) {
        (Some(_), Some(_)) => {
            return Err(CliError::config(
                "device",
                "give exactly one of `params` and `device`",
            ))
        }
        (Some(p), None) => ParamsSpec::Canonical(p),
        (None, Some(d)) => ParamsSpec::Device(d),
        (None, None) => base
            .as_ref()
            .map(|b| b.params.clone())
            .ok_or_else(|| CliError::config("params", "missing; give `params` or `device`"))?,
    };
    let field = match raw.field {
        Some(f) => f,
        None => base
            .as_ref()
            .map(|b| b.field.clone())
            .ok_or_else(|| CliError::config("field", "missing"))?,
    };
    let spectrum = match raw.spectrum {
        Some(s) => s,
        None => base
            .as_ref()
            .map(|b| b.spectrum.clone())
            .ok_or_else(|| CliError::config("spectrum", "missing"))?,
    };
    let oracle = raw
        .oracle
        .or(base.as_ref().map(|b| b.oracle))
        .unwrap_or_default();
    let output = raw
        .output
        .or(base.as_ref().map(|b| b.output.clone()))
        .unwrap_or_default();
    Ok(RunConfig {
        preset: raw.preset,
        params,
        field,
        spectrum,
        oracle,
        output,
    })
}

/// Parameters a sweep can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Axis {
    Delta,
    Gamma,
    Eta,
    #[value(name = "M", alias = "m")]
    M,
    Alpha2,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Delta => "delta",
            Self::Gamma => "gamma",
            Self::Eta => "eta",
            Self::M => "M",
            Self::Alpha2 => "alpha2",
        }
    }
}

/// One curve to compute: a label (absent for single-field runs) and its field.
#[derive(Debug, Clone)]
pub struct Curve {
    pub label: Option<String>,
    pub distribution: PhotonDistribution,
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn canonical(&self) -> Result<CanonicalParams, CliError> {
        match &self.params {
            ParamsSpec::Canonical(p) => Ok(*p),
            ParamsSpec::Device(d) => canonicalize(d).map_err(|e| match e {
                cpbspec_core::Error::ParameterDomain { name, .. } => {
                    CliError::config(format!("device.{name}"), e)
                }
                other => CliError::config("device", other),
            }),
        }
    }

    pub fn curves(&self) -> Result<Vec<Curve>, CliError> {
        let specs = self.field.specs();
        let mut curves: Vec<Curve> = Vec::with_capacity(specs.len());
        for (i, spec) in specs.iter().enumerate() {
            let key = self.field.key(i);
            let distribution = spec.build(&key)?;
            let label = match self.field {
                FieldSet::One(_) => None,
                FieldSet::Many(_) => Some(spec.display_label(i)),
            };
            if label.is_some() && curves.iter().any(|c| c.label == label) {
                return Err(CliError::config(
                    format!("{key}.label"),
                    "duplicate curve label",
                ));
            }
            curves.push(Curve {
                label,
                distribution,
            });
        }
        Ok(curves)
    }

    /// Grid offsets `x_i` and the matching analytic spectrum settings.
    pub fn spectrum_config(
        &self,
        p: &CanonicalParams,
    ) -> Result<(Vec<f64>, SpectrumConfig), CliError> {
        let s = &self.spectrum;
        if !(s.gamma.is_finite() && s.gamma > 0.0) {
            return Err(CliError::config(
                "spectrum.gamma",
                "must be a positive number",
            ));
        }
        let g = s.grid;
        if !(g.min.is_finite() && g.max.is_finite() && g.min < g.max) {
            return Err(CliError::config(
                "spectrum.grid",
                "need finite `min` < `max`",
            ));
        }
        if g.points < 3 {
            return Err(CliError::config(
                "spectrum.grid.points",
                "need at least 3 points",
            ));
        }
        let x = offsets(g.min, g.max, g.points);
        let nu = x.iter().map(|x| p.omega() + p.g() * x).collect();
        let config =
            SpectrumConfig::with_options(s.gamma, nu, s.order, s.pairing, s.experimental_order)
                .map_err(|e| {
                    let key = match e {
                        cpbspec_core::Error::InvalidConfig(m) if m.contains("order") => {
                            "spectrum.order"
                        }
                        _ => "spectrum.grid",
                    };
                    CliError::config(key, e)
                })?;
        Ok((x, config))
    }

    /// This config with one parameter replaced. Field axes apply to every
    /// field of the matching kind.
    pub fn with_axis(&self, axis: Axis, value: f64) -> Result<RunConfig, CliError> {
        let mut out = self.clone();
        let key = format!("values.{}", axis.as_str());
        let set_fields = |out: &mut RunConfig, kind: FieldKind, apply: &dyn Fn(&mut FieldSpec)| {
            let mut hits = 0;
            for spec in out.field.specs_mut().iter_mut().filter(|s| s.kind == kind) {
                apply(spec);
                hits += 1;
            }
            if hits == 0 {
                return Err(CliError::config(
                    "field",
                    format!(
                        "sweep axis `{}` needs a {} field",
                        axis.as_str(),
                        kind.as_str()
                    ),
                ));
            }
            Ok(())
        };
        match axis {
            Axis::Delta => {
                let p = self
                    .canonical()?
                    .with_delta(value)
                    .map_err(|e| CliError::config(&key, e))?;
                out.params = ParamsSpec::Canonical(p);
            }
            Axis::Gamma => out.spectrum.gamma = value,
            Axis::Eta => set_fields(&mut out, FieldKind::Binomial, &|s| s.eta = Some(value))?,
            Axis::M => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64) {
                    return Err(CliError::config(
                        key,
                        format!("M must be a positive integer, got {value}"),
                    ));
                }
                set_fields(&mut out, FieldKind::Binomial, &|s| {
                    s.m = Some(value as usize)
                })?
            }
            Axis::Alpha2 => set_fields(&mut out, FieldKind::Coherent, &|s| {
                s.mean_photons = Some(value)
            })?,
        }
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let p = self.canonical()?;
        self.curves()?;
        self.spectrum_config(&p)?;
        let o = &self.oracle;
        for (key, n) in [("oracle.n_t", o.n_t), ("oracle.n_tau", o.n_tau)] {
            if n < 2 || n % 2 != 0 {
                return Err(CliError::config(
                    key,
                    "must be an even interval count of at least 2",
                ));
            }
        }
        if o.n_max == Some(0) {
            return Err(CliError::config("oracle.n_max", "must be at least 1"));
        }
        if !o.t_start.is_finite() {
            return Err(CliError::config("oracle.t_start", "must be finite"));
        }
        for (key, v) in [("oracle.t_avg", o.t_avg), ("oracle.tau_max", o.tau_max)] {
            if matches!(v, Some(v) if !(v.is_finite() && v > 0.0)) {
                return Err(CliError::config(key, "must be a positive number"));
            }
        }
        Ok(())
    }
}
