//! Thin shim over `libm` so the rest of the crate reads like ordinary float code.

use num_complex::Complex64;

pub(crate) use libm::{atan, cos, exp, lgamma, log, sin, sqrt};

/// `e^{iφ}`.
#[inline]
pub(crate) fn cis(phase: f64) -> Complex64 {
    let (s, c) = libm::sincos(phase);
    Complex64::new(c, s)
}
