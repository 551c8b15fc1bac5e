//! Brute-force verification route, independent of the closed-form line
//! catalog: numerical diagonalization of the truncated Hamiltonian, exact
//! propagation of the dipole correlation, and quadrature in both time axes.

mod compare;
mod correlation;
mod eigen;
mod model;
mod time_domain;

pub use compare::{
    compare_spectra, compare_spectra_with, cross_validate, ComparisonReport, CrossValidation,
    GroundTermReport, PeakMatch, DEFAULT_MIN_RELATIVE_HEIGHT,
};
pub use correlation::{correlation_eq13, correlation_first_principles, EQ13_GROUND_CONVENTION};
pub use eigen::HermitianEigen;
pub use model::{basis_index, build_truncated_model, recommended_cutoff, TruncatedModel};
pub use time_domain::{
    series_from_values, slowest_beat, time_domain_spectrum, validate_settings, AveragedCorrelation,
    QuadratureSettings, AVERAGING_PERIODS, DEFAULT_INTERVALS, MIN_AVERAGING_PERIODS, TAU_WINDOW,
};

/// Default Fock cutoff for oracle runs.
pub const DEFAULT_N_MAX: usize = 16;
