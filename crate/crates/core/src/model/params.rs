use crate::error::{Error, Result};
use crate::math::sqrt;

/// Raw device description of the junction and cavity.
///
/// Energies are angular frequencies; `hbar` only enters the coupling constant.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct DeviceParams {
    pub junction_capacitance: f64,
    pub gate_capacitance: f64,
    pub josephson_energy: f64,
    pub cavity_frequency: f64,
    pub electron_charge: f64,
    pub hbar: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::ParameterDomain { name, value })
    }
}

impl DeviceParams {
    pub fn validate(&self) -> Result<()> {
        positive("junction_capacitance", self.junction_capacitance)?;
        positive("gate_capacitance", self.gate_capacitance)?;
        positive("josephson_energy", self.josephson_energy)?;
        positive("cavity_frequency", self.cavity_frequency)?;
        positive("electron_charge", self.electron_charge)?;
        positive("hbar", self.hbar)?;
        Ok(())
    }

    /// Charging energy `E_c = e² / (2(C_g + C_J))`.
    pub fn charging_energy(&self) -> f64 {
        let e = self.electron_charge;
        e * e / (2.0 * (self.gate_capacitance + self.junction_capacitance))
    }
}

/// The dimensionless working frame every downstream computation consumes.
///
/// `g` is defined through `μ_n² = Δ²/4 + g²(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CanonicalParams {
    omega: f64,
    delta: f64,
    g: f64,
}

impl CanonicalParams {
    /// Builds `(ω, Δ, g)`; requires `ω > 0`, `g > 0` and a finite `Δ`.
    pub fn new(omega: f64, delta: f64, g: f64) -> Result<Self> {
        positive("omega", omega)?;
        positive("g", g)?;
        if !delta.is_finite() {
            return Err(Error::ParameterDomain {
                name: "delta",
                value: delta,
            });
        }
        Ok(Self { omega, delta, g })
    }

    /// The bare (`g = 0`) limit. Only the oracle's Hamiltonian is meaningful
    /// here; dressed-state quantities report [`Error::SingularCoupling`].
    pub fn decoupled(omega: f64, delta: f64) -> Result<Self> {
        positive("omega", omega)?;
        if !delta.is_finite() {
            return Err(Error::ParameterDomain {
                name: "delta",
                value: delta,
            });
        }
        Ok(Self {
            omega,
            delta,
            g: 0.0,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// Josephson energy `E_J = ω + Δ`.
    pub fn josephson_energy(&self) -> f64 {
        self.omega + self.delta
    }

    /// The figure-axis scale `λ = g/√2` used by the published plots.
    pub fn paper_lambda(&self) -> f64 {
        self.g / core::f64::consts::SQRT_2
    }

    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        if self.g == 0.0 {
            Self::decoupled(self.omega, delta)
        } else {
            Self::new(self.omega, delta, self.g)
        }
    }

    pub(crate) fn is_coupled(&self) -> bool {
        self.g > 0.0
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for CanonicalParams {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            omega: f64,
            delta: f64,
            g: f64,
        }
        let raw = Raw::deserialize(deserializer)?;
        CanonicalParams::new(raw.omega, raw.delta, raw.g).map_err(serde::de::Error::custom)
    }
}

/// Reduces device parameters to the canonical frame.
///
/// `Δ = E_J − ω` and `g² = e² C_J ω / (4 ħ (C_J + C_g)²)`.
pub fn canonicalize(raw: &DeviceParams) -> Result<CanonicalParams> {
    raw.validate()?;
    let cj = raw.junction_capacitance;
    let sum = cj + raw.gate_capacitance;
    let e = raw.electron_charge;
    let g2 = e * e * cj * cj * raw.cavity_frequency / (4.0 * raw.hbar * cj * sum * sum);
    CanonicalParams::new(
        raw.cavity_frequency,
        raw.josephson_energy - raw.cavity_frequency,
        sqrt(g2),
    )
}
