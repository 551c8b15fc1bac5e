use std::f64::consts::{FRAC_PI_2, PI};

use cpbspec_core::field::PhotonDistribution;
use cpbspec_core::model::{mixing_angle, CanonicalParams, DressedLevel};
use cpbspec_core::quad::simpson_fn;
use cpbspec_core::spectrum::{
    evaluate, evaluate_grid, integrated_power, offset_grid, transition_lines, SpectrumConfig,
    TransitionLine, WeightPairing,
};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = CanonicalParams> {
    (5.0..20.0f64, -5.0..5.0f64, 0.1..3.0f64)
        .prop_map(|(w, d, g)| CanonicalParams::new(w, d, g).unwrap())
}

fn distribution() -> impl Strategy<Value = PhotonDistribution> {
    prop_oneof![
        (0.0..=1.0f64, 1usize..40)
            .prop_map(|(eta, m)| PhotonDistribution::binomial(eta, m).unwrap()),
        (0.0..15.0f64).prop_map(|a2| PhotonDistribution::coherent(a2, 1e-12).unwrap()),
        (0usize..20).prop_map(PhotonDistribution::number),
        prop::collection::vec(0.0..1.0f64, 1..12)
            .prop_filter("nonzero", |v| v.iter().any(|&x| x > 1e-3))
            .prop_map(|v| PhotonDistribution::custom(v).unwrap()),
    ]
}

fn pairing() -> impl Strategy<Value = WeightPairing> {
    prop_oneof![Just(WeightPairing::Paper), Just(WeightPairing::Derived)]
}

fn config(gamma: f64, pairing: WeightPairing) -> SpectrumConfig {
    SpectrumConfig::new(gamma, vec![0.0])
        .unwrap()
        .with_pairing(pairing)
}

fn reflected(lines: &[TransitionLine], omega: f64) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = lines
        .iter()
        .map(|l| (2.0 * omega - l.center, l.weight))
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out
}

fn sorted(lines: &[TransitionLine]) -> Vec<(f64, f64)> {
    reflected(lines, 0.0)
        .into_iter()
        .map(|(c, w)| (-c, w))
        .rev()
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn amplitudes_are_unitary(p in params(), n in 0usize..200, t in -100.0..100.0f64) {
        let amps = DressedLevel::new(&p, n).unwrap().evolve(t);
        prop_assert!((amps.a.norm_sqr() + amps.b.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn angle_in_open_quadrant(p in params(), n in 0usize..500) {
        let theta = mixing_angle(&p, n).unwrap();
        prop_assert!(theta > 0.0 && theta < FRAC_PI_2);
    }

    #[test]
    fn detuning_flip_complements_angle(p in params(), n in 0usize..100) {
        let flipped = p.with_delta(-p.delta()).unwrap();
        let sum = mixing_angle(&p, n).unwrap() + mixing_angle(&flipped, n).unwrap();
        prop_assert!((sum - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn distributions_are_normalized(d in distribution()) {
        let total: f64 = d.populations().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(d.amplitudes().iter().all(|&b| b >= 0.0));
    }

    #[test]
    fn binomial_moments(eta in 0.0..=1.0f64, m in 1usize..2000) {
        let d = PhotonDistribution::binomial(eta, m).unwrap();
        prop_assert_eq!(d.len(), m + 1);
        let mean = eta * m as f64;
        let var = mean * (1.0 - eta);
        prop_assert!((d.mean_photons() - mean).abs() <= 1e-10 * mean.max(1.0));
        prop_assert!((d.variance() - var).abs() <= 1e-10 * mean.max(1.0));
    }

    #[test]
    fn spectrum_is_positive(p in params(), d in distribution(), pairing in pairing(), gamma in 0.01..2.0f64) {
        let grid = offset_grid(&p, -20.0, 20.0, 401);
        let c = SpectrumConfig::new(gamma, grid).unwrap().with_pairing(pairing);
        let s = evaluate_grid(&p, &d, &c).unwrap();
        prop_assert_eq!(s.len(), 401);
        prop_assert!(s.values.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn line_weights_and_power(p in params(), d in distribution(), pairing in pairing()) {
        let lines = transition_lines(&p, &d, &config(0.1, pairing)).unwrap();
        prop_assert!(lines.iter().all(|l| (0.0..=1.0).contains(&l.weight)));
        let expected: f64 = d
            .populations()
            .enumerate()
            .filter(|&(_, b2)| b2 >= 1e-14)
            .map(|(n, b2)| {
                let lvl = DressedLevel::new(&p, n).unwrap();
                b2 * (lvl.sin2().powi(2) + lvl.cos2().powi(2))
            })
            .sum();
        let power = integrated_power(&lines);
        prop_assert!((power - PI * expected).abs() < 1e-12);
        prop_assert!(power <= PI + 1e-12);
        let populated = d.populations().skip(1).filter(|&b2| b2 >= 1e-14).count();
        let ground = usize::from(d.population(0) >= 1e-14);
        prop_assert_eq!(lines.len(), 2 * ground + 4 * populated);
    }

    #[test]
    fn resonant_mirror_symmetry(
        raw in prop::collection::vec(0.0..1.0f64, 1..15),
        omega in 5.0..20.0f64,
        g in 0.1..3.0f64,
        pairing in pairing(),
        x in 0.0..15.0f64,
    ) {
        prop_assume!(raw.iter().any(|&v| v > 1e-3));
        let mut amps = vec![0.0];
        amps.extend(raw);
        let d = PhotonDistribution::custom(amps).unwrap();
        let p = CanonicalParams::new(omega, 0.0, g).unwrap();
        let lines = transition_lines(&p, &d, &config(0.1, pairing)).unwrap();
        let peak = lines.iter().map(|l| evaluate(&lines, 0.1, l.center)).fold(0.0, f64::max);
        let up = evaluate(&lines, 0.1, omega + g * x);
        let down = evaluate(&lines, 0.1, omega - g * x);
        prop_assert!((up - down).abs() < 1e-10 * peak);
    }

    #[test]
    fn detuning_flip_reflects_catalog(
        p in params(),
        d in distribution(),
        pairing in pairing(),
    ) {
        let c = config(0.1, pairing);
        let flipped = p.with_delta(-p.delta()).unwrap();
        let keep = |l: &TransitionLine| pairing == WeightPairing::Derived || !l.branch.is_ground();
        let a: Vec<_> = transition_lines(&p, &d, &c).unwrap().into_iter().filter(keep).collect();
        let b: Vec<_> = transition_lines(&flipped, &d, &c).unwrap().into_iter().filter(keep).collect();
        let (a, b) = (reflected(&a, p.omega()), sorted(&b));
        prop_assert_eq!(a.len(), b.len());
        let scale = p.omega() * d.len() as f64;
        for ((ca, wa), (cb, wb)) in a.iter().zip(&b) {
            prop_assert!((ca - cb).abs() < 1e-12 * scale, "{ca} vs {cb}");
            prop_assert!((wa - wb).abs() < 1e-12, "{wa} vs {wb}");
        }
    }
}

#[test]
fn quadrature_matches_integrated_power() {
    let cases = [
        (0.0, PhotonDistribution::coherent(10.0, 1e-12).unwrap()),
        (0.0, PhotonDistribution::binomial(0.7, 3).unwrap()),
        (1.0, PhotonDistribution::binomial(0.1, 30).unwrap()),
        (2.0, PhotonDistribution::vacuum()),
        (-1.5, PhotonDistribution::number(4)),
    ];
    let gamma = 0.1;
    for pairing in [WeightPairing::Paper, WeightPairing::Derived] {
        for (delta, d) in &cases {
            let p = CanonicalParams::new(10.0, *delta, 1.0).unwrap();
            let lines = transition_lines(&p, d, &config(gamma, pairing)).unwrap();
            let lo = lines.iter().map(|l| l.center).fold(f64::INFINITY, f64::min) - 200.0 * gamma;
            let hi = lines
                .iter()
                .map(|l| l.center)
                .fold(f64::NEG_INFINITY, f64::max)
                + 200.0 * gamma;
            let intervals = 2 * ((hi - lo) / (0.02 * gamma)) as usize;
            let numeric = simpson_fn(|nu| evaluate(&lines, gamma, nu), lo, hi, intervals);
            let exact = integrated_power(&lines);
            assert!(
                (numeric - exact).abs() < 5e-3 * exact,
                "{pairing:?} Δ={delta}: {numeric} vs {exact}"
            );
        }
    }
}
