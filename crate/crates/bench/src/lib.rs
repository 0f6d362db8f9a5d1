//! Fixtures shared by the benchmarks.

use chanbound_core::channel::depolarizing;
use chanbound_core::{random, CMatrix, DensityMatrix, KrausChannel, OptimizerConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hermitian(n: usize) -> CMatrix {
    random::random_hermitian(&mut rng(n as u64), n)
}

pub fn two_qubit_state() -> DensityMatrix {
    random::random_state(&mut rng(7), 4, 2).set_dims((2, 2)).expect("4 = 2 * 2")
}

pub fn channel_pair(d: usize) -> (KrausChannel, KrausChannel) {
    let phi = random::random_channel(&mut rng(11), d, d, 2);
    let psi = depolarizing(d, 0.3).expect("valid depolarizing parameter");
    (phi, psi)
}

/// Short runs with a single restart.
pub fn quick_config() -> OptimizerConfig {
    OptimizerConfig { restarts: 1, max_iters: 100, ..Default::default() }
}
