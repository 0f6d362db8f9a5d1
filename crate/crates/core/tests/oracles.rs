use chanbound_core::bounds::{da_lower, dd_lower, deb_lower, EbSource};
use chanbound_core::channel::erasure;
use chanbound_core::entropy::{binary_entropy, relative_entropy, LogBase};
use chanbound_core::linalg::{DensityMatrix, PureState};
use chanbound_core::optimize::{
    maximize_channel_ic, maximize_channel_l, minimize_channel_ic, ree_ppt_lower, seesaw_diamond_lower,
    seesaw_value, OptimizerConfig,
};
use chanbound_core::random;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TWO: LogBase = LogBase::Two;

fn cfg() -> OptimizerConfig {
    OptimizerConfig { restarts: 2, max_iters: 200, ..Default::default() }
}

#[test]
fn certified_ree_below_sampled_separable_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for rank in [1, 2, 3] {
        let rho = random::random_state(&mut rng, 4, rank).set_dims((2, 2)).unwrap();
        let out = ree_ppt_lower(&rho, &OptimizerConfig::default()).unwrap();
        let mut best = f64::INFINITY;
        for _ in 0..33_334 {
            let sigma = random::random_separable(&mut rng, 2, 2, 4);
            if let Some(v) = relative_entropy(&rho, &sigma, TWO).unwrap().finite() {
                best = best.min(v);
            }
        }
        assert!(out.certificate.value <= best + 1e-9, "{} > {best}", out.certificate.value);
        assert!(out.certificate.value <= out.estimate + 1e-9);
    }
}

#[test]
fn ree_of_pure_states_is_entanglement_entropy() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..3 {
        let psi = random::random_pure(&mut rng, 4).with_dims((2, 2)).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let marg = chanbound_core::linalg::partial_trace(&rho, chanbound_core::linalg::Subsystem::B).unwrap();
        let ent = chanbound_core::entropy::von_neumann_entropy(&marg, TWO).unwrap();
        let out = ree_ppt_lower(&rho, &OptimizerConfig::default()).unwrap();
        assert!((out.certificate.value - ent).abs() < 1e-4, "{} vs {ent} (estimate {}, {} iterations)", out.certificate.value, out.estimate, out.certificate.iterations);
    }
}

#[test]
fn seesaw_beats_maximally_entangled_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..5 {
        let phi = random::random_channel(&mut rng, 2, 3, 2);
        let psi = random::random_channel(&mut rng, 2, 3, 1);
        let c = seesaw_diamond_lower(&phi, &psi, &cfg()).unwrap();
        let at_me = seesaw_value(&phi, &psi, &PureState::maximally_entangled(2)).unwrap();
        assert!(c.value >= at_me - 1e-12);
        assert!(c.value <= 2.0 + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn erasure_certificates_match_closed_forms(d in 2usize..5, p in 0.02f64..0.98) {
        let phi = erasure(d, p).unwrap();
        let ld = (d as f64).log2();
        let ic = maximize_channel_ic(&phi, &cfg()).unwrap().value;
        let want_ic = ((1.0 - 2.0 * p) * ld).max(0.0);
        prop_assert!((ic - want_ic).abs() < 1e-6, "ic {ic} vs {want_ic}");
        let min_ic = minimize_channel_ic(&phi, &cfg()).unwrap().value;
        let want_min = ((1.0 - 2.0 * p) * ld).min(0.0);
        prop_assert!((min_ic - want_min).abs() < 1e-6, "min ic {min_ic} vs {want_min}");
        let l = maximize_channel_l(&phi, &cfg()).unwrap().value;
        let want_l = (1.0 - p) * ld - binary_entropy(p, TWO).unwrap();
        prop_assert!(l >= want_l - 1e-6, "L {l} below {want_l}");
    }

    #[test]
    fn erasure_bounds_respect_known_distances(d in 2usize..5, p in 0.02f64..0.98) {
        let phi = erasure(d, p).unwrap();
        let ic = maximize_channel_ic(&phi, &cfg()).unwrap().value;
        let neg_ic = -minimize_channel_ic(&phi, &cfg()).unwrap().value;
        // erasure at 1/2 is degradable and antidegradable; at 1 it is entanglement breaking
        if ic > 1e-9 {
            prop_assert!(da_lower(ic, d, TWO).unwrap().value <= 2.0 * (0.5 - p).abs() + 1e-9);
            prop_assert!(deb_lower(ic, d, EbSource::Ic, TWO).unwrap().value <= 2.0 * (1.0 - p) + 1e-9);
        }
        if neg_ic > 1e-9 {
            prop_assert!(dd_lower(neg_ic, d, TWO).unwrap().value <= 2.0 * (p - 0.5).abs() + 1e-9);
        }
    }
}
