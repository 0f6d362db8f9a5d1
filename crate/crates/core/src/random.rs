//! Seeded random matrices, states and channels.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::KrausChannel;
use crate::linalg::{hermitian_eigen, CMatrix, DensityMatrix, PureState, C64};

fn gaussian(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    ginibre(rng, n, n).symmetrized()
}

/// Traceless Hermitian direction with unit Frobenius norm.
pub fn random_traceless_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let mut h = random_hermitian(rng, n);
    let shift = h.trace() / n as f64;
    for i in 0..n {
        h[(i, i)] -= shift;
    }
    let norm = h.frobenius_norm();
    h.scale_real(1.0 / norm)
}

/// `G G^dagger / Tr` for an `n x rank` Ginibre matrix `G`.
pub fn random_state(rng: &mut impl Rng, n: usize, rank: usize) -> DensityMatrix {
    let g = ginibre(rng, n, rank.max(1));
    let m = g.matmul(&g.adjoint());
    let tr = m.trace().re;
    DensityMatrix::from_trusted(m.scale_real(1.0 / tr))
}

pub fn random_pure(rng: &mut impl Rng, n: usize) -> PureState {
    let v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
    PureState::normalized(v).expect("gaussian vector is nonzero")
}

/// Isometry `G (G^dagger G)^{-1/2}` from a tall Ginibre matrix.
pub fn random_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = ginibre(rng, rows, cols);
    let gram = g.adjoint().matmul(&g);
    let inv_sqrt = hermitian_eigen(&gram)
        .expect("Gram matrix is Hermitian")
        .map(|x| 1.0 / x.sqrt());
    g.matmul(&inv_sqrt)
}

/// Random channel with `n_kraus` Kraus operators, from a random Stinespring isometry.
pub fn random_channel(rng: &mut impl Rng, d_in: usize, d_out: usize, n_kraus: usize) -> KrausChannel {
    let v = random_isometry(rng, d_out * n_kraus, d_in);
    let kraus = (0..n_kraus)
        .map(|k| CMatrix::from_fn(d_out, d_in, |b, a| v[(b * n_kraus + k, a)]))
        .collect();
    KrausChannel::new(kraus).expect("isometry slices are complete")
}

/// Convex mixture of `terms` random product states on `d_a (x) d_b`.
pub fn random_separable(rng: &mut impl Rng, d_a: usize, d_b: usize, terms: usize) -> DensityMatrix {
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    let mut acc = CMatrix::zeros(d_a * d_b, d_a * d_b);
    for w in weights {
        let a = DensityMatrix::from_pure(&random_pure(rng, d_a));
        let b = DensityMatrix::from_pure(&random_pure(rng, d_b));
        acc.add_scaled(a.tensor(&b).matrix(), C64::new(w, 0.0));
    }
    DensityMatrix::from_trusted(acc)
        .set_dims((d_a, d_b))
        .expect("dims factor by construction")
}
