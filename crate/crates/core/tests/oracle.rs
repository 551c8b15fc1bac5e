use cpbspec_core::field::PhotonDistribution;
use cpbspec_core::model::{CanonicalParams, DressedLevel};
use cpbspec_core::oracle::{
    basis_index, build_truncated_model, correlation_first_principles, cross_validate,
    time_domain_spectrum, QuadratureSettings, TruncatedModel, DEFAULT_N_MAX,
};
use cpbspec_core::spectrum::{
    find_peaks, offset_grid, SpectrumConfig, SpectrumSeries, WeightPairing,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn oracle(
    p: &CanonicalParams,
    d: &PhotonDistribution,
    gamma: f64,
    grid: Vec<f64>,
) -> (TruncatedModel, QuadratureSettings, SpectrumSeries) {
    let m = build_truncated_model(p, DEFAULT_N_MAX).unwrap();
    let s = QuadratureSettings::defaults(&m, d, gamma).unwrap();
    let series = time_domain_spectrum(&m, d, gamma, grid, &s).unwrap();
    (m, s, series)
}

#[test]
fn eigen_consistency_up_to_n50() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..4 {
        let p = CanonicalParams::new(10.0, rng.gen_range(-5.0..5.0), rng.gen_range(1e-3..=3.0))
            .unwrap();
        let m = build_truncated_model(&p, 51).unwrap();
        for n in 0..=50 {
            let lvl = DressedLevel::new(&p, n).unwrap();
            let [(e_hi, v_hi), (e_lo, v_lo)] = m.doublet(n).unwrap();
            assert!((e_hi - lvl.upsilon_plus).abs() <= 1e-10 * lvl.upsilon_plus.abs());
            assert!((e_lo - lvl.upsilon_minus).abs() <= 1e-10 * lvl.upsilon_minus.abs());
            let (c, s) = (lvl.theta.cos(), lvl.theta.sin());
            let (up, down) = (basis_index(n, true), basis_index(n + 1, false));
            let plus = (v_hi[up] * c + v_hi[down] * s).norm();
            let minus = (v_lo[up] * (-s) + v_lo[down] * c).norm();
            assert!(
                plus > 1.0 - 1e-10 && minus > 1.0 - 1e-10,
                "n={n}: {plus} {minus}"
            );
        }
    }
}

#[test]
fn propagation_preserves_norm() {
    let p = CanonicalParams::new(10.0, 0.7, 1.3).unwrap();
    let m = build_truncated_model(&p, 20).unwrap();
    let psi = m
        .initial_state(&PhotonDistribution::binomial(0.4, 12).unwrap())
        .unwrap();
    for k in 0..=100 {
        let t = k as f64 / p.g();
        let norm: f64 = m.evolve(&psi, t).iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-10, "t={t}: {norm}");
    }
}

#[test]
fn equal_time_correlation_is_excited_population() {
    let p = CanonicalParams::new(10.0, -0.8, 0.9).unwrap();
    let m = build_truncated_model(&p, 18).unwrap();
    let d = PhotonDistribution::coherent(2.0, 1e-10).unwrap();
    let psi = m.initial_state(&d).unwrap();
    for k in 0..40 {
        let t = 0.37 * k as f64;
        let g = correlation_first_principles(&m, &d, t, 0.0).unwrap();
        let state = m.evolve(&psi, t);
        let excited: f64 = (0..=m.n_max())
            .map(|n| state[basis_index(n, true)].norm_sqr())
            .sum();
        assert!(g.im.abs() < 1e-10);
        assert!((g.re - excited).abs() < 1e-10);
    }
}

#[test]
fn quadrature_converges_under_refinement() {
    let p = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
    let d = PhotonDistribution::binomial(0.7, 3).unwrap();
    let grid = offset_grid(&p, -12.0, 12.0, 401);
    let (m, s, coarse) = oracle(&p, &d, 0.1, grid.clone());
    let fine = time_domain_spectrum(&m, &d, 0.1, grid, &s.refined(2)).unwrap();
    let max = coarse.max_value();
    for (a, b) in coarse.values.iter().zip(&fine.values) {
        assert!((a - b).abs() < 5e-3 * max);
    }
}

fn fwhm(s: &SpectrumSeries) -> f64 {
    let nu = s.nu();
    let top = find_peaks(s).unwrap().peaks[0];
    let half = 0.5 * top.value;
    let cross = |range: &mut dyn Iterator<Item = usize>| -> f64 {
        let mut prev = top.index;
        for i in range {
            if s.values[i] < half {
                let f = (s.values[prev] - half) / (s.values[prev] - s.values[i]);
                return nu[prev] + f * (nu[i] - nu[prev]);
            }
            prev = i;
        }
        panic!("no half-maximum crossing");
    };
    let right = cross(&mut (top.index + 1..nu.len()));
    let left = cross(&mut (0..top.index).rev());
    right - left
}

#[test]
fn doubling_gamma_doubles_linewidth() {
    let p = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
    let d = PhotonDistribution::vacuum();
    let grid = offset_grid(&p, 0.0, 2.0, 2001);
    let (_, _, narrow) = oracle(&p, &d, 0.1, grid.clone());
    let (_, _, wide) = oracle(&p, &d, 0.2, grid);
    let ratio = fwhm(&wide) / fwhm(&narrow);
    assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn vacuum_oracle_validates_derived_pairing() {
    let p = CanonicalParams::new(10.0, 0.0, 1.0).unwrap();
    let d = PhotonDistribution::vacuum();
    let grid = offset_grid(&p, -12.0, 12.0, 2001);
    let (m, s, series) = oracle(&p, &d, 0.1, grid.clone());
    let analytic = SpectrumConfig::new(0.1, grid).unwrap();
    let report = cross_validate(&m, &d, &analytic, &series, &s).unwrap();
    assert!(report.derived.all_peaks_matched, "{:?}", report.derived);
    assert!(!report.paper.all_peaks_matched);
    assert_eq!(report.validated_pairing, Some(WeightPairing::Derived));
    let ground = report.ground_term.unwrap();
    assert_eq!(ground.population, 1.0);
    assert!((ground.shift - 5.0).abs() < 1e-12);
    assert!(
        report.derived.l2_relative < 0.05,
        "{}",
        report.derived.l2_relative
    );
}
