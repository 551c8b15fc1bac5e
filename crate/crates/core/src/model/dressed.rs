use num_complex::Complex64;

use super::CanonicalParams;
use crate::error::{Error, Result};
use crate::math::{atan, cis, cos, sin, sqrt};

/// Half the gap of the `n`-th dressed doublet, `μ_n = √(Δ²/4 + g²(n+1))`.
pub fn rabi_splitting(p: &CanonicalParams, n: usize) -> f64 {
    let d = p.delta();
    let g = p.g();
    sqrt(0.25 * d * d + g * g * (n as f64 + 1.0))
}

/// Dressed energies `(Υ₊, Υ₋) = ω(n+½) ± μ_n`.
pub fn eigenenergies(p: &CanonicalParams, n: usize) -> (f64, f64) {
    let mid = p.omega() * (n as f64 + 0.5);
    let mu = rabi_splitting(p, n);
    (mid + mu, mid - mu)
}

/// Mixing angle `θ_n = arctan((2μ_n − Δ) / (2g√(n+1)))`, in `(0, π/2)`.
///
/// The dressed states are `|Φ₊⟩ = cos θ |n,↑⟩ + sin θ |n+1,↓⟩` and
/// `|Φ₋⟩ = sin θ |n,↑⟩ − cos θ |n+1,↓⟩`.
pub fn mixing_angle(p: &CanonicalParams, n: usize) -> Result<f64> {
    if !p.is_coupled() {
        return Err(Error::SingularCoupling);
    }
    if p.delta() == 0.0 {
        // the argument is exactly one; avoid rounding in √(g²(n+1)) vs g√(n+1)
        return Ok(core::f64::consts::FRAC_PI_4);
    }
    let mu = rabi_splitting(p, n);
    let coupling = 2.0 * p.g() * sqrt(n as f64 + 1.0);
    // 2μ − Δ cancels catastrophically for Δ ≫ g; use 2μ − Δ = (4μ² − Δ²)/(2μ + Δ).
    let numerator = if p.delta() > 0.0 {
        coupling * coupling / (2.0 * mu + p.delta())
    } else {
        2.0 * mu - p.delta()
    };
    Ok(atan(numerator / coupling))
}

/// Everything about one dressed doublet.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DressedLevel {
    pub n: usize,
    pub mu: f64,
    pub upsilon_plus: f64,
    pub upsilon_minus: f64,
    pub theta: f64,
}

/// Diagonal and off-diagonal propagator amplitudes of one doublet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionAmps {
    /// `A(n,t) = ⟨n,↑|U(t)|n,↑⟩`.
    pub a: Complex64,
    /// `B(n,t) = ⟨n+1,↓|U(t)|n,↑⟩`.
    pub b: Complex64,
}

impl DressedLevel {
    pub fn new(p: &CanonicalParams, n: usize) -> Result<Self> {
        let theta = mixing_angle(p, n)?;
        let mu = rabi_splitting(p, n);
        let mid = p.omega() * (n as f64 + 0.5);
        Ok(Self {
            n,
            mu,
            upsilon_plus: mid + mu,
            upsilon_minus: mid - mu,
            theta,
        })
    }

    pub fn sin2(&self) -> f64 {
        let s = sin(self.theta);
        s * s
    }

    pub fn cos2(&self) -> f64 {
        let c = cos(self.theta);
        c * c
    }

    /// `A(n,t) = sin²θ e^{−iΥ₋t} + cos²θ e^{−iΥ₊t}`.
    pub fn amp_a(&self, t: f64) -> Complex64 {
        cis(-self.upsilon_minus * t) * self.sin2() + cis(-self.upsilon_plus * t) * self.cos2()
    }

    /// `B(n,t) = ½ sin 2θ (e^{−iΥ₊t} − e^{−iΥ₋t})`.
    pub fn amp_b(&self, t: f64) -> Complex64 {
        (cis(-self.upsilon_plus * t) - cis(-self.upsilon_minus * t)) * (0.5 * sin(2.0 * self.theta))
    }

    pub fn evolve(&self, t: f64) -> EvolutionAmps {
        EvolutionAmps {
            a: self.amp_a(t),
            b: self.amp_b(t),
        }
    }
}

pub fn evolution_amp_a(p: &CanonicalParams, n: usize, t: f64) -> Result<Complex64> {
    Ok(DressedLevel::new(p, n)?.amp_a(t))
}

pub fn evolution_amp_b(p: &CanonicalParams, n: usize, t: f64) -> Result<Complex64> {
    Ok(DressedLevel::new(p, n)?.amp_b(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(omega: f64, delta: f64, g: f64) -> CanonicalParams {
        CanonicalParams::new(omega, delta, g).unwrap()
    }

    #[test]
    fn rabi_splitting_values() {
        assert_eq!(rabi_splitting(&p(10.0, 0.0, 1.0), 0), 1.0);
        assert_eq!(rabi_splitting(&p(10.0, 0.0, 1.0), 3), 2.0);
        // radicand 4/4 + 1 = 2
        assert!((rabi_splitting(&p(10.0, 2.0, 1.0), 0) - core::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn eigenenergy_values() {
        assert_eq!(eigenenergies(&p(10.0, 0.0, 1.0), 0), (6.0, 4.0));
        assert_eq!(eigenenergies(&p(10.0, 0.0, 1.0), 3), (37.0, 33.0));
        let q = p(3.3, -0.7, 0.4);
        for n in 0..20 {
            let (up, um) = eigenenergies(&q, n);
            assert!(up > um);
            assert!(((up + um) / 2.0 - 3.3 * (n as f64 + 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn level_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let q = p(
                rng.gen_range(0.5..20.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(0.01..3.0),
            );
            let n = rng.gen_range(0..60);
            let lvl = DressedLevel::new(&q, n).unwrap();
            assert!(
                (lvl.upsilon_plus - lvl.upsilon_minus - 2.0 * lvl.mu).abs()
                    <= 1e-12 * lvl.upsilon_plus.abs().max(1.0)
            );
            let rhs = q.delta() * q.delta() / 4.0 + q.g() * q.g() * (n as f64 + 1.0);
            assert!((lvl.mu * lvl.mu - rhs).abs() <= 1e-14 * rhs);
            assert!(lvl.theta > 0.0 && lvl.theta < FRAC_PI_2);
        }
    }

    #[test]
    fn resonance_gives_quarter_pi() {
        for n in 0..40 {
            assert_eq!(mixing_angle(&p(10.0, 0.0, 0.37), n).unwrap(), FRAC_PI_4);
        }
    }

    #[test]
    fn far_detuned_limits() {
        let up = mixing_angle(&p(10.0, 1000.0, 1.0), 0).unwrap();
        assert!(up > 0.0 && up < 1e-2);
        // −Δ + 2μ ≈ 2g²/Δ → tan θ ≈ g/Δ
        assert!((up - 1e-3).abs() < 1e-8);
        let down = mixing_angle(&p(10.0, -1000.0, 1.0), 0).unwrap();
        assert!(down < FRAC_PI_2 && FRAC_PI_2 - down < 1e-2);
        assert!((up + down - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn mixing_angle_decreases_with_detuning() {
        for n in [0usize, 1, 5, 30] {
            let mut last = FRAC_PI_2;
            for i in 0..=400 {
                let d = -20.0 + 0.1 * i as f64;
                let th = mixing_angle(&p(10.0, d, 0.8), n).unwrap();
                assert!(th < last, "n={n} Δ={d}");
                last = th;
            }
        }
    }

    #[test]
    fn zero_coupling_is_singular() {
        let q = CanonicalParams::decoupled(10.0, 0.3).unwrap();
        assert_eq!(mixing_angle(&q, 0), Err(Error::SingularCoupling));
        assert!(DressedLevel::new(&q, 2).is_err());
    }

    #[test]
    fn amplitudes_at_time_zero() {
        let q = p(10.0, 0.4, 0.9);
        for n in 0..5 {
            let amps = DressedLevel::new(&q, n).unwrap().evolve(0.0);
            assert!((amps.a - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            assert_eq!(amps.b, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn resonant_rabi_flop() {
        // At θ = π/4: A = e^{−iω(n+½)t} cos(μt), |B| = |sin(μt)|.
        let q = p(10.0, 0.0, 1.0);
        let t = PI / 2.0;
        assert!(evolution_amp_a(&q, 0, t).unwrap().norm() < 1e-15);
        assert!((evolution_amp_b(&q, 0, t).unwrap().norm() - 1.0).abs() < 1e-15);
        let lvl = DressedLevel::new(&q, 2).unwrap();
        for i in 0..50 {
            let t = 0.13 * i as f64;
            let expect = cis(-10.0 * 2.5 * t) * cos(lvl.mu * t);
            assert!((lvl.amp_a(t) - expect).norm() < 1e-12);
            assert!((lvl.amp_b(t).norm() - sin(lvl.mu * t).abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn far_detuned_b_vanishes() {
        let lvl = DressedLevel::new(&p(10.0, 1000.0, 1.0), 0).unwrap();
        let worst = (0..2000)
            .map(|i| lvl.amp_b(0.01 * i as f64).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-2);
    }

    #[test]
    fn unitarity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let q = p(
                rng.gen_range(0.5..20.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(0.01..3.0),
            );
            let n = rng.gen_range(0..100);
            let t = rng.gen_range(-50.0..50.0);
            let amps = DressedLevel::new(&q, n).unwrap().evolve(t);
            assert!((amps.a.norm_sqr() + amps.b.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}
