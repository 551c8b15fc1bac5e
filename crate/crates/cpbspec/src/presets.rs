//! Built-in parameter sets for the five figure regimes.
//!
//! All share `ω = 10g`, `g = 1` and `γ = 0.1g` on the default grid. `fig1`
//! overlays coherent fields with `|α|² = 10` and `1`; `fig2`–`fig5` overlay
//! binomial fields with `η = 0.7` and `0.1`.

use cpbspec_core::model::CanonicalParams;

use crate::config::{
    FieldSet, FieldSpec, OracleSpec, OutputSpec, ParamsSpec, RunConfig, SpectrumSpec,
};

pub const PRESET_NAMES: [&str; 5] = ["fig1", "fig2", "fig3", "fig4", "fig5"];

pub const OMEGA: f64 = 10.0;
pub const G: f64 = 1.0;
pub const GAMMA: f64 = 0.1;

fn binomial_pair(m: usize) -> FieldSet {
    FieldSet::Many(vec![
        FieldSpec::binomial(0.7, m).labeled("eta0.7"),
        FieldSpec::binomial(0.1, m).labeled("eta0.1"),
    ])
}

pub fn preset(name: &str) -> Option<RunConfig> {
    let (delta, field) = match name {
        "fig1" => (
            0.0,
            FieldSet::Many(vec![
                FieldSpec::coherent(10.0).labeled("alpha2_10"),
                FieldSpec::coherent(1.0).labeled("alpha2_1"),
            ]),
        ),
        "fig2" => (0.0, binomial_pair(3)),
        "fig3" => (0.0, binomial_pair(30)),
        "fig4" => (G, binomial_pair(3)),
        "fig5" => (2.0 * G, binomial_pair(3)),
        _ => return None,
    };
    Some(RunConfig {
        preset: Some(name.to_owned()),
        params: ParamsSpec::Canonical(CanonicalParams::new(OMEGA, delta, G).expect("valid preset")),
        field,
        spectrum: SpectrumSpec::new(GAMMA * G),
        oracle: OracleSpec::default(),
        output: OutputSpec::default(),
    })
}
