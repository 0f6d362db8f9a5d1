//! Optimization over the PPT states: relative entropy of entanglement and trace
//! distance, both relaxed from the separable set to its PPT superset.

use crate::entropy::{spectrum_entropy_nats, LogBase};
use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, hermitian_sign, partial_transpose, trace_norm, CMatrix, DensityMatrix, C64,
};

use super::{Certificate, CertificateKind, OptimizerConfig, Stagnation, Witness};

/// Weight of `I/n` mixed into iterates to keep them full rank.
const FLOOR: f64 = 1e-9;
const DYKSTRA_GAP: f64 = 1e-10;
const DYKSTRA_MAX_ITERS: usize = 200;
const DUAL_ITERS: usize = 3000;

fn require_dims(rho: &DensityMatrix) -> Result<(usize, usize)> {
    rho.dims().ok_or(Error::MissingDims)
}

/// Euclidean projection of a real vector onto the probability simplex.
fn simplex_project(values: &[f64]) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (i, &v) in sorted.iter().enumerate() {
        cumsum += v;
        let t = (cumsum - 1.0) / (i + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    values.iter().map(|&v| (v - theta).max(0.0)).collect()
}

/// Projection onto `{X >= 0, Tr X = 1}` in Frobenius norm.
fn project_states(m: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eigen(&m.symmetrized())?;
    let proj = simplex_project(&eig.values);
    let mut out = CMatrix::zeros(m.rows(), m.cols());
    for (k, &w) in proj.iter().enumerate() {
        if w > 0.0 {
            out.add_scaled(&CMatrix::outer(&eig.vector(k)), C64::new(w, 0.0));
        }
    }
    Ok(out)
}

/// Projection onto `{X : X^T_B >= 0, Tr X = 1}`; partial transposition is an isometry.
fn project_pt_states(m: &CMatrix, dims: (usize, usize)) -> Result<CMatrix> {
    Ok(partial_transpose(&project_states(&partial_transpose(m, dims))?, dims))
}

fn min_eigenvalue(m: &CMatrix) -> Result<f64> {
    Ok(hermitian_eigen(m)?.values[0])
}

/// Dykstra's alternating projections of `m` onto the states and the PT-states.
/// Returns the limit and the two accumulated increments.
fn dykstra(m: &CMatrix, dims: (usize, usize)) -> Result<(CMatrix, CMatrix, CMatrix)> {
    let n = m.rows();
    let mut x = m.symmetrized();
    let mut p = CMatrix::zeros(n, n);
    let mut q = CMatrix::zeros(n, n);
    for _ in 0..DYKSTRA_MAX_ITERS {
        let y = project_states(&(&x + &p))?;
        p = &(&x + &p) - &y;
        let next = project_pt_states(&(&y + &q), dims)?;
        q = &(&y + &q) - &next;
        let gap = (&next - &x).frobenius_norm();
        x = next;
        if gap < DYKSTRA_GAP {
            break;
        }
    }
    Ok((x, p, q))
}

/// Projection onto the PPT states by Dykstra's alternating projections, followed by
/// a mixture with `I/n` that makes the partial transpose exactly positive.
pub fn project_ppt(m: &CMatrix, dims: (usize, usize)) -> Result<DensityMatrix> {
    let n = m.rows();
    let (x, _, _) = dykstra(m, dims)?;
    let sigma = project_states(&x)?;
    let pt_min = min_eigenvalue(&partial_transpose(&sigma, dims))?;
    let sigma = if pt_min < 0.0 {
        let t = -pt_min / (1.0 / n as f64 - pt_min);
        let mut s = sigma.scale_real(1.0 - t);
        s.add_scaled(&CMatrix::identity(n), C64::new(t / n as f64, 0.0));
        s
    } else {
        sigma
    };
    DensityMatrix::from_trusted(sigma).set_dims(dims)
}

/// Mixes in the least amount of `I/n` that lifts the smallest eigenvalue to `FLOOR`.
fn with_floor(sigma: &DensityMatrix) -> Result<DensityMatrix> {
    let n = sigma.dim() as f64;
    let lo = min_eigenvalue(sigma.matrix())?;
    if lo >= FLOOR {
        return Ok(sigma.clone());
    }
    let t = (FLOOR - lo) / (1.0 / n - lo);
    Ok(sigma.mix(&DensityMatrix::chaotic(sigma.dim()), t))
}

/// `-Tr rho log sigma` in nats; `sigma` must be full rank.
fn cross_entropy(rho: &CMatrix, sigma: &CMatrix) -> Result<f64> {
    let eig = hermitian_eigen(sigma)?;
    if eig.values[0] <= 0.0 {
        return Err(Error::OutOfRange("PPT iterate must be full rank".into()));
    }
    let log = eig.map(f64::ln);
    Ok(-rho.trace_product_re(&log))
}

/// Gradient (nats) of `sigma -> -Tr rho log sigma` by the divided-difference formula
/// on the eigenbasis of a full-rank `sigma`.
pub fn ree_gradient(rho: &CMatrix, sigma: &CMatrix) -> Result<CMatrix> {
    let eig = hermitian_eigen(sigma)?;
    let mu = &eig.values;
    if mu[0] <= 0.0 {
        return Err(Error::OutOfRange("PPT iterate must be full rank".into()));
    }
    let v = &eig.vectors;
    let r = v.adjoint().matmul(rho).matmul(v);
    let n = mu.len();
    let scale = mu[n - 1];
    let inner = CMatrix::from_fn(n, n, |i, j| {
        let gamma = if (mu[i] - mu[j]).abs() > 1e-12 * scale {
            (mu[i].ln() - mu[j].ln()) / (mu[i] - mu[j])
        } else {
            2.0 / (mu[i] + mu[j])
        };
        r[(i, j)] * -gamma
    });
    Ok(v.matmul(&inner).matmul(&v.adjoint()).symmetrized())
}

/// `lambda_min(S) + lambda_min((G - S)^T_B)`, a lower bound on `min Tr(G sigma)`
/// over PPT `sigma`, valid for every Hermitian split `S`.
fn split_bound(g: &CMatrix, split: &CMatrix, dims: (usize, usize)) -> Result<f64> {
    Ok(min_eigenvalue(split)? + min_eigenvalue(&partial_transpose(&(g - split), dims))?)
}

/// Softmin of the spectrum and its gradient as a density matrix.
fn softmin(m: &CMatrix, tau: f64) -> Result<CMatrix> {
    let eig = hermitian_eigen(m)?;
    let lo = eig.values[0];
    let w: Vec<f64> = eig.values.iter().map(|&x| (-(x - lo) / tau).exp()).collect();
    let z: f64 = w.iter().sum();
    let mut out = CMatrix::zeros(m.rows(), m.cols());
    for (k, &wk) in w.iter().enumerate() {
        if wk > 0.0 {
            out.add_scaled(&CMatrix::outer(&eig.vector(k)), C64::new(wk / z, 0.0));
        }
    }
    Ok(out)
}

/// Split read off the normal-cone increments of one projected gradient step at
/// `sigma`; exact at a fixed point of the descent.
fn kkt_split(g: &CMatrix, sigma: &CMatrix, dims: (usize, usize)) -> Result<CMatrix> {
    let t = 1.0 / g.frobenius_norm().max(1e-12);
    let mut z = sigma.clone();
    z.add_scaled(g, C64::new(-t, 0.0));
    let (_, p, _) = dykstra(&z, dims)?;
    Ok(p.scale_real(-1.0 / t))
}

/// Searches for a split `S` maximizing [`split_bound`] by ascent on its smoothed
/// version, started from the best of `seeds`, `0`, `G/2` and `G`.
fn best_split(g: &CMatrix, dims: (usize, usize), seeds: Vec<CMatrix>) -> Result<(CMatrix, f64)> {
    let n = g.rows();
    let mut best = (CMatrix::zeros(n, n), split_bound(g, &CMatrix::zeros(n, n), dims)?);
    for cand in seeds.into_iter().chain([g.clone(), g.scale_real(0.5)]) {
        let v = split_bound(g, &cand, dims)?;
        if v > best.1 {
            best = (cand, v);
        }
    }
    let scale = g.max_abs().max(1e-3);
    let (tau_hi, tau_lo) = (0.1 * scale, 1e-9 * scale);
    for start_tau in [tau_hi, 1e-4 * scale] {
        let mut s = best.0.clone();
        for it in 0..DUAL_ITERS {
            let tau = start_tau * (tau_lo / start_tau).powf(it as f64 / (DUAL_ITERS - 1) as f64);
            let w1 = softmin(&s, tau)?;
            let w2 = softmin(&partial_transpose(&(g - &s), dims), tau)?;
            let dir = &w1 - &partial_transpose(&w2, dims);
            s.add_scaled(&dir, C64::new(tau, 0.0));
            let v = split_bound(g, &s, dims)?;
            if v > best.1 {
                best = (s.clone(), v);
            }
        }
    }
    Ok(best)
}

/// Certified lower bound on the PPT-relaxed relative entropy of entanglement of
/// `rho`, from convexity at the full-rank PPT state `sigma` and the dual `split`.
pub fn certify_ree(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    split: &CMatrix,
    base: LogBase,
) -> Result<f64> {
    let dims = require_dims(rho)?;
    let g = ree_gradient(rho.matrix(), sigma.matrix())?;
    let neg_h = -spectrum_entropy_nats(&hermitian_eigen(rho.matrix())?.values)?;
    let at_sigma = neg_h + cross_entropy(rho.matrix(), sigma.matrix())?;
    let linear_min = split_bound(&g, split, dims)?;
    let nats = at_sigma + linear_min - g.trace_product_re(sigma.matrix());
    Ok(base.from_nats(nats.max(0.0)))
}

/// Result of the relative-entropy search: a certified lower bound (inside the
/// certificate) and the achieved objective, which is only an estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct ReeOutcome {
    pub certificate: Certificate,
    /// `H(rho || sigma)` at the witness `sigma`; an upper estimate of the PPT minimum.
    pub estimate: f64,
}

struct Descent {
    sigma: DensityMatrix,
    converged: bool,
    iterations: usize,
}

/// Projected gradient descent on `sigma -> -Tr target log sigma` with
/// Barzilai-Borwein steps and Armijo backtracking.
/// Stagnation tolerance of the descent, relative to `cfg.tol`.
const DESCENT_TOL_SCALE: f64 = 1e-5;

fn descend(
    target: &CMatrix,
    start: DensityMatrix,
    dims: (usize, usize),
    cfg: &OptimizerConfig,
) -> Result<Descent> {
    let mut sigma = start;
    let mut f = cross_entropy(target, sigma.matrix())?;
    let mut g = ree_gradient(target, sigma.matrix())?;
    let mut step = cfg.step;
    let mut stagnation = Stagnation::new(cfg.tol * DESCENT_TOL_SCALE);
    for it in 1..=cfg.max_iters {
        let (next, next_f) = loop {
            let mut trial = sigma.matrix().clone();
            trial.add_scaled(&g, C64::new(-step, 0.0));
            let cand = with_floor(&project_ppt(&trial, dims)?)?;
            let cf = cross_entropy(target, cand.matrix())?;
            let decrease = g.trace_product_re(&(cand.matrix() - sigma.matrix()));
            if cf <= f + 1e-4 * decrease.min(0.0) {
                break (cand, cf);
            }
            step *= cfg.backtrack;
            if step < 1e-14 {
                return Ok(Descent { sigma, converged: true, iterations: it });
            }
        };
        let next_g = ree_gradient(target, next.matrix())?;
        let ds = next.matrix() - sigma.matrix();
        let curvature = ds.trace_product_re(&(&next_g - &g));
        step = if curvature > 0.0 {
            (ds.trace_product_re(&ds) / curvature).clamp(1e-12, 1e6)
        } else {
            (step * 2.0).min(1e6)
        };
        let change = f - next_f;
        sigma = next;
        f = next_f;
        g = next_g;
        if stagnation.record(change) {
            return Ok(Descent { sigma, converged: true, iterations: it });
        }
    }
    Ok(Descent { sigma, converged: false, iterations: cfg.max_iters })
}

/// Weights of `I/n` mixed into `rho` along the continuation path; the last
/// stage solves the problem for `rho` up to the floor.
const CONTINUATION: [f64; 6] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];

/// Minimizes `H(rho || sigma)` over PPT `sigma` by projected gradient descent and
/// certifies a lower bound on the minimum.
///
/// The descent runs on `rho` mixed with decreasing amounts of `I/n`, each stage
/// warm-started from the previous one; every stage endpoint is certified against
/// the original `rho` and the best certificate is kept.
pub fn ree_ppt_lower(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<ReeOutcome> {
    cfg.validate()?;
    let dims = require_dims(rho)?;
    let n = rho.dim();
    let neg_h = -spectrum_entropy_nats(&hermitian_eigen(rho.matrix())?.values)?;

    let marg_a = crate::linalg::partial_trace(rho, crate::linalg::Subsystem::B)?;
    let marg_b = crate::linalg::partial_trace(rho, crate::linalg::Subsystem::A)?;
    let mut sigma = with_floor(&marg_a.tensor(&marg_b))?;
    let mut best: Option<(f64, DensityMatrix, CMatrix)> = None;
    let mut iterations = 0;
    let mut converged = false;

    for eps in CONTINUATION {
        let target = rho.mix(&DensityMatrix::chaotic(n), eps);
        let run = descend(target.matrix(), sigma, dims, cfg)?;
        iterations += run.iterations;
        converged = run.converged;
        sigma = run.sigma.set_dims(dims)?;

        let g = ree_gradient(rho.matrix(), sigma.matrix())?;
        let seed = kkt_split(&g, sigma.matrix(), dims)?;
        let (split, _) = best_split(&g, dims, vec![seed])?;
        let value = certify_ree(rho, &sigma, &split, cfg.base)?;
        if best.as_ref().is_none_or(|b| value >= b.0) {
            best = Some((value, sigma.clone(), split));
        }
    }

    let (value, sigma, split) = best.expect("at least one stage");
    let estimate = neg_h + cross_entropy(rho.matrix(), sigma.matrix())?;
    Ok(ReeOutcome {
        certificate: Certificate {
            kind: CertificateKind::ErLower,
            value,
            witness: Witness::PptDual { sigma, split },
            converged,
            iterations,
        },
        estimate: cfg.base.from_nats(estimate.max(0.0)),
    })
}

/// Smallest `||rho - sigma||_1` found over PPT `sigma` by projected subgradient
/// descent with steps `step / sqrt(k)`; best iterate returned.
pub fn trace_dist_to_ppt(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<Certificate> {
    cfg.validate()?;
    let dims = require_dims(rho)?;
    let mut sigma = project_ppt(rho.matrix(), dims)?;
    let mut best_val = trace_norm(&(rho.matrix() - sigma.matrix()));
    let mut best = sigma.clone();
    let mut stagnation = Stagnation::new(cfg.tol);
    let mut converged = false;
    let mut iterations = cfg.max_iters;
    for k in 1..=cfg.max_iters {
        let s = hermitian_sign(&(rho.matrix() - sigma.matrix()))?;
        let norm = s.frobenius_norm();
        if norm == 0.0 || best_val == 0.0 {
            converged = true;
            iterations = k;
            break;
        }
        let mut trial = sigma.matrix().clone();
        trial.add_scaled(&s, C64::new(cfg.step / (k as f64).sqrt() / norm, 0.0));
        sigma = project_ppt(&trial, dims)?;
        let val = trace_norm(&(rho.matrix() - sigma.matrix()));
        let improvement = (best_val - val).max(0.0);
        if val < best_val {
            best_val = val;
            best = sigma.clone();
        }
        if stagnation.record(improvement) && k > 50 {
            converged = true;
            iterations = k;
            break;
        }
    }
    Ok(Certificate {
        kind: CertificateKind::DsOracle,
        value: best_val,
        witness: Witness::State(best),
        converged,
        iterations,
    })
}
