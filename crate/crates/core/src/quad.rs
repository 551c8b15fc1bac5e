//! Composite Simpson quadrature on uniform grids.
//!
//! Sums run in index order, so results do not depend on how samples were
//! produced.

use core::ops::{Add, Mul};

/// Weight of node `i` in an `intervals`-step composite Simpson rule with step `h`.
///
/// `intervals` must be even and non-zero.
#[inline]
pub fn simpson_weight(i: usize, intervals: usize, h: f64) -> f64 {
    debug_assert!(intervals >= 2 && intervals % 2 == 0);
    let w = if i == 0 || i == intervals {
        1.0
    } else if i % 2 == 1 {
        4.0
    } else {
        2.0
    };
    w * h / 3.0
}

/// Integrates samples `f(x0 + i h)`, `i = 0..=intervals`.
///
/// Returns `None` unless the sample count is odd and at least three.
pub fn simpson<T>(samples: &[T], h: f64) -> Option<T>
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T> + Default,
{
    let n = samples.len();
    if n < 3 || n % 2 == 0 {
        return None;
    }
    let intervals = n - 1;
    let mut acc = T::default();
    for (i, &v) in samples.iter().enumerate() {
        acc = acc + v * simpson_weight(i, intervals, h);
    }
    Some(acc)
}

/// Integrates `f` over `[a, b]` with `intervals` (rounded up to even) Simpson steps.
pub fn simpson_fn<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, intervals: usize) -> f64 {
    let intervals = (intervals.max(2) + 1) & !1;
    let h = (b - a) / intervals as f64;
    let mut acc = 0.0;
    for i in 0..=intervals {
        acc += f(a + i as f64 * h) * simpson_weight(i, intervals, h);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn exact_for_cubics() {
        let f = |x: f64| 3.0 * x * x * x - x * x + 2.0;
        // ∫_0^2 = 3·4 − 8/3 + 4
        let got = simpson_fn(f, 0.0, 2.0, 4);
        assert!((got - (12.0 - 8.0 / 3.0 + 4.0)).abs() < 1e-13);
    }

    #[test]
    fn rejects_even_sample_counts() {
        assert!(simpson(&[1.0, 2.0], 0.1).is_none());
        assert!(simpson(&[1.0, 2.0, 3.0, 4.0], 0.1).is_none());
    }

    #[test]
    fn complex_samples() {
        // ∫_0^π e^{ix} dx = 2i
        let n = 200;
        let h = core::f64::consts::PI / n as f64;
        let samples: alloc::vec::Vec<Complex64> = (0..=n)
            .map(|i| Complex64::new(libm::cos(i as f64 * h), libm::sin(i as f64 * h)))
            .collect();
        let got = simpson(&samples, h).unwrap();
        assert!((got - Complex64::new(0.0, 2.0)).norm() < 1e-8);
    }
}
