use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A physical parameter is outside its domain (non-positive, non-finite, ...).
    ParameterDomain { name: &'static str, value: f64 },
    /// Dressed-state quantities were requested at zero coupling.
    SingularCoupling,
    /// A photon distribution could not be built or is unusable.
    InvalidDistribution(&'static str),
    /// A spectrum configuration violates its invariants.
    InvalidConfig(&'static str),
    /// The Fock cutoff does not contain the initial field.
    Cutoff { n_max: usize, required: usize },
    /// A quadrature precondition was not met.
    Resolution(ResolutionViolation),
    /// Two series were compared on different frequency grids.
    GridMismatch,
}

/// Which oracle quadrature bound was violated.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolutionViolation {
    /// `tau_max` below `8/γ`.
    DelayWindow { tau_max: f64, required: f64 },
    /// Averaging window shorter than four periods of the slowest dressed beat.
    AveragingWindow { t_avg: f64, required: f64 },
    /// Simpson needs an even, non-zero number of intervals.
    IntervalCount { name: &'static str, value: usize },
}

impl fmt::Display for ResolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DelayWindow { tau_max, required } => {
                write!(f, "tau_max = {tau_max} is below the required {required} (8/gamma)")
            }
            Self::AveragingWindow { t_avg, required } => write!(
                f,
                "t_avg = {t_avg} covers fewer than 4 periods of the slowest dressed beat (needs {required})"
            ),
            Self::IntervalCount { name, value } => {
                write!(f, "{name} = {value} must be a positive even interval count")
            }
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ParameterDomain { name, value } => {
                write!(f, "parameter `{name}` = {value} is outside its domain")
            }
            Self::SingularCoupling => f.write_str("dressed states are undefined at zero coupling"),
            Self::InvalidDistribution(why) => write!(f, "invalid photon distribution: {why}"),
            Self::InvalidConfig(why) => write!(f, "invalid spectrum configuration: {why}"),
            Self::Cutoff { n_max, required } => write!(
                f,
                "Fock cutoff n_max = {n_max} is too small; the field needs n_max >= {required}"
            ),
            Self::Resolution(v) => write!(f, "insufficient quadrature resolution: {v}"),
            Self::GridMismatch => f.write_str("spectra are sampled on different frequency grids"),
        }
    }
}

impl core::error::Error for Error {}
