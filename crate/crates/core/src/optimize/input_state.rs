//! Input-state search for `I_c(Phi, rho)` and `L(Phi, rho)` by entropic mirror ascent.

use crate::channel::KrausChannel;
use crate::entropy::spectrum_entropy_nats;
use crate::error::Result;
use crate::linalg::{hermitian_eigen, CMatrix, DensityMatrix};
use crate::random;

use super::{Certificate, CertificateKind, OptimizerConfig, Stagnation, Witness};

/// Eigenvalue floor used when taking matrix logarithms for gradients.
const LOG_FLOOR: f64 = 1e-14;
const MAX_STEP: f64 = 1e3;
const MIN_STEP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputObjective {
    /// Maximize `I_c(Phi, rho)`.
    Ic,
    /// Minimize `I_c(Phi, rho)`.
    NegIc,
    /// Maximize `L(Phi, rho)`.
    L,
}

impl InputObjective {
    fn kind(self) -> CertificateKind {
        match self {
            InputObjective::Ic => CertificateKind::Ic,
            InputObjective::NegIc => CertificateKind::NegIc,
            InputObjective::L => CertificateKind::L,
        }
    }

    /// +1 when maximizing the reported quantity, -1 when minimizing it.
    fn sign(self) -> f64 {
        match self {
            InputObjective::NegIc => -1.0,
            _ => 1.0,
        }
    }
}

/// Entropy (nats) and floored matrix log of a positive operator.
fn entropy_and_log(m: &CMatrix) -> Result<(f64, CMatrix)> {
    let eig = hermitian_eigen(m)?;
    let h = spectrum_entropy_nats(&eig.values)?;
    Ok((h, eig.map(|x| x.max(LOG_FLOOR).ln())))
}

fn entropy_nats(m: &CMatrix) -> Result<f64> {
    spectrum_entropy_nats(&hermitian_eigen(m)?.values)
}

struct Evaluator<'a> {
    phi: &'a KrausChannel,
    comp: KrausChannel,
    objective: InputObjective,
}

impl<'a> Evaluator<'a> {
    fn new(phi: &'a KrausChannel, objective: InputObjective) -> Self {
        Self {
            phi,
            comp: phi.complement(),
            objective,
        }
    }

    /// Reported quantity in nats (`I_c` or `L`).
    fn quantity(&self, rho: &CMatrix) -> Result<f64> {
        let h_env = entropy_nats(&self.comp.apply_operator(rho))?;
        let h_main = match self.objective {
            InputObjective::L => entropy_nats(rho)?,
            _ => entropy_nats(&self.phi.apply_operator(rho))?,
        };
        Ok(h_main - h_env)
    }

    /// Reported quantity and its Euclidean gradient, both in nats. `log_rho` is
    /// only consulted for the `L` objective.
    fn quantity_and_gradient(&self, rho: &CMatrix, log_rho: &CMatrix) -> Result<(f64, CMatrix)> {
        let (h_env, log_env) = entropy_and_log(&self.comp.apply_operator(rho))?;
        let mut grad = self.comp.apply_adjoint(&log_env);
        let h_main = match self.objective {
            InputObjective::L => {
                grad = &grad - log_rho;
                entropy_nats(rho)?
            }
            _ => {
                let (h, log_out) = entropy_and_log(&self.phi.apply_operator(rho))?;
                grad = &grad - &self.phi.apply_adjoint(&log_out);
                h
            }
        };
        Ok((h_main - h_env, grad.symmetrized()))
    }
}

/// Gradient in nats of `rho -> H(Phi(rho)) - H(complement(Phi)(rho))`, meaningful
/// along traceless directions.
pub fn channel_ic_gradient(phi: &KrausChannel, rho: &DensityMatrix) -> Result<CMatrix> {
    let ev = Evaluator::new(phi, InputObjective::Ic);
    let (_, g) = ev.quantity_and_gradient(rho.matrix(), &CMatrix::zeros(rho.dim(), rho.dim()))?;
    Ok(g)
}

/// `I_c(Phi, rho)` (for `Ic` and `NegIc`) or `L(Phi, rho)` in the config base.
pub fn evaluate_input_objective(
    phi: &KrausChannel,
    objective: InputObjective,
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
) -> Result<f64> {
    let ev = Evaluator::new(phi, objective);
    Ok(cfg.base.from_nats(ev.quantity(rho.matrix())?))
}

/// Normalized state `exp(h) / Tr exp(h)` and its (exact) log.
fn exp_normalized(h: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let eig = hermitian_eigen(h)?;
    let top = eig.values.last().copied().unwrap_or(0.0);
    let z: f64 = eig.values.iter().map(|&x| (x - top).exp()).sum();
    let shift = top + z.ln();
    let rho = eig.map(|x| (x - shift).exp());
    let log = eig.map(|x| x - shift);
    Ok((rho, log))
}

struct RunResult {
    rho: CMatrix,
    score: f64,
    converged: bool,
    iterations: usize,
}

/// Mirror ascent on `sign * quantity` from a full-rank start.
fn ascend(ev: &Evaluator<'_>, start: &CMatrix, cfg: &OptimizerConfig) -> Result<RunResult> {
    let sign = ev.objective.sign();
    let eig = hermitian_eigen(start)?;
    let (mut rho, mut log_rho) = exp_normalized(&eig.map(|x| x.max(LOG_FLOOR).ln()))?;
    let (q, g) = ev.quantity_and_gradient(&rho, &log_rho)?;
    let mut score = sign * q;
    let mut grad = g.scale_real(sign);
    let mut step = cfg.step;
    let mut stagnation = Stagnation::new(cfg.tol);

    for it in 1..=cfg.max_iters {
        let accepted = loop {
            let mut trial = log_rho.clone();
            trial.add_scaled(&grad, step.into());
            let (cand, cand_log) = exp_normalized(&trial)?;
            let (q, g) = ev.quantity_and_gradient(&cand, &cand_log)?;
            if sign * q >= score {
                break Some((cand, cand_log, sign * q, g.scale_real(sign)));
            }
            step *= cfg.backtrack;
            if step < MIN_STEP {
                break None;
            }
        };
        let Some((cand, cand_log, cand_score, cand_grad)) = accepted else {
            // no ascent direction at resolvable step sizes
            return Ok(RunResult { rho, score, converged: true, iterations: it });
        };
        let change = cand_score - score;
        rho = cand;
        log_rho = cand_log;
        score = cand_score;
        grad = cand_grad;
        step = (step * 2.0).min(MAX_STEP);
        if stagnation.record(change) {
            return Ok(RunResult { rho, score, converged: true, iterations: it });
        }
    }
    Ok(RunResult {
        rho,
        score,
        converged: false,
        iterations: cfg.max_iters,
    })
}

fn optimize(phi: &KrausChannel, objective: InputObjective, cfg: &OptimizerConfig) -> Result<Certificate> {
    cfg.validate()?;
    let ev = Evaluator::new(phi, objective);
    let sign = objective.sign();
    let n = phi.d_in();

    let chaotic = DensityMatrix::chaotic(n);
    // exact seeds count as converged when the ascent refining the chaotic seed did
    let refined = ascend(&ev, chaotic.matrix(), cfg)?;
    let mut best = RunResult {
        score: sign * ev.quantity(chaotic.matrix())?,
        rho: chaotic.matrix().clone(),
        converged: refined.converged,
        iterations: 0,
    };
    let mut total_iters = 0;
    let mut consider = |run: RunResult, best: &mut RunResult| {
        total_iters += run.iterations;
        if run.score > best.score {
            *best = run;
        }
    };

    for i in 0..n {
        let basis = DensityMatrix::basis(n, i);
        let score = sign * ev.quantity(basis.matrix())?;
        consider(
            RunResult { rho: basis.into_matrix(), score, converged: refined.converged, iterations: 0 },
            &mut best,
        );
    }
    consider(refined, &mut best);

    let mut rng = cfg.rng(objective as u64 + 1);
    for _ in 0..cfg.restarts {
        let start = random::random_state(&mut rng, n, n);
        let run = ascend(&ev, start.matrix(), cfg)?;
        consider(run, &mut best);
    }

    let witness = DensityMatrix::from_trusted(best.rho);
    // report the objective re-evaluated at the witness
    let value = cfg.base.from_nats(ev.quantity(witness.matrix())?);
    Ok(Certificate {
        kind: objective.kind(),
        value,
        witness: Witness::State(witness),
        converged: best.converged,
        iterations: total_iters,
    })
}

/// Best found `sup_rho I_c(Phi, rho)`; the value is attained at the witness.
pub fn maximize_channel_ic(phi: &KrausChannel, cfg: &OptimizerConfig) -> Result<Certificate> {
    optimize(phi, InputObjective::Ic, cfg)
}

/// Best found `inf_rho I_c(Phi, rho)`; the value is attained at the witness.
pub fn minimize_channel_ic(phi: &KrausChannel, cfg: &OptimizerConfig) -> Result<Certificate> {
    optimize(phi, InputObjective::NegIc, cfg)
}

/// Best found `sup_rho L(Phi, rho)`; the value is attained at the witness.
pub fn maximize_channel_l(phi: &KrausChannel, cfg: &OptimizerConfig) -> Result<Certificate> {
    optimize(phi, InputObjective::L, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{
        channel_coherent_information, channel_l, completely_depolarizing, erasure,
        identity_embedding,
    };
    use crate::entropy::{binary_entropy, LogBase};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> OptimizerConfig {
        OptimizerConfig { restarts: 3, ..Default::default() }
    }

    #[test]
    fn erasure_ic_max_at_chaotic() {
        for d in [2usize, 3, 4] {
            let c = maximize_channel_ic(&erasure(d, 0.3).unwrap(), &cfg()).unwrap();
            assert!((c.value - 0.4 * (d as f64).log2()).abs() < 1e-5);
            assert_eq!(c.kind, CertificateKind::Ic);
        }
    }

    #[test]
    fn identity_ic_max() {
        let c = maximize_channel_ic(&identity_embedding(3, 3).unwrap(), &cfg()).unwrap();
        assert!((c.value - 3f64.log2()).abs() < 1e-6);
    }

    #[test]
    fn half_erasure_has_no_positive_ic() {
        let c = maximize_channel_ic(&erasure(3, 0.5).unwrap(), &cfg()).unwrap();
        assert!(c.value <= 1e-6);
    }

    #[test]
    fn erasure_ic_min() {
        let c = minimize_channel_ic(&erasure(4, 0.8).unwrap(), &cfg()).unwrap();
        assert!((c.value + 0.6 * 2.0).abs() < 1e-5);
        assert_eq!(c.kind, CertificateKind::NegIc);
    }

    #[test]
    fn erasure_l_max() {
        let c = maximize_channel_l(&erasure(4, 0.3).unwrap(), &cfg()).unwrap();
        let expect = 0.7 * 2.0 - binary_entropy(0.3, LogBase::Two).unwrap();
        assert!((c.value - expect).abs() < 1e-5);
        let c = maximize_channel_l(&identity_embedding(4, 4).unwrap(), &cfg()).unwrap();
        assert!((c.value - 2.0).abs() < 1e-6);
    }

    #[test]
    fn certificates_reevaluate_at_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let phi = random::random_channel(&mut rng, 3, 3, 2);
        let base = LogBase::Two;
        let c = maximize_channel_ic(&phi, &cfg()).unwrap();
        let w = c.witness_state().unwrap();
        assert!((channel_coherent_information(&phi, w, base).unwrap() - c.value).abs() < 1e-8);
        let c = maximize_channel_l(&phi, &cfg()).unwrap();
        let w = c.witness_state().unwrap();
        assert!((channel_l(&phi, w, base).unwrap() - c.value).abs() < 1e-8);
    }

    #[test]
    fn search_beats_seeds_on_random_channel() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let phi = random::random_channel(&mut rng, 3, 3, 2);
        let c = maximize_channel_ic(&phi, &cfg()).unwrap();
        let base = LogBase::Two;
        for _ in 0..50 {
            let rho = random::random_state(&mut rng, 3, 3);
            assert!(channel_coherent_information(&phi, &rho, base).unwrap() <= c.value + 1e-9);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let phi = random::random_channel(&mut rng, 2, 3, 3);
        let a = maximize_channel_ic(&phi, &cfg()).unwrap();
        let b = maximize_channel_ic(&phi, &cfg()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn completely_depolarizing_min() {
        let c = minimize_channel_ic(&completely_depolarizing(2).unwrap(), &cfg()).unwrap();
        assert!((c.value + 1.0).abs() < 1e-6);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let h = 1e-5;
        for _ in 0..10 {
            let phi = random::random_channel(&mut rng, 3, 2, 3);
            let rho = random::random_state(&mut rng, 3, 3).mix(&DensityMatrix::chaotic(3), 0.2);
            let dir = random::random_traceless_hermitian(&mut rng, 3);
            let grad = channel_ic_gradient(&phi, &rho).unwrap();
            let analytic = grad.trace_product_re(&dir);
            let f = |t: f64| {
                let mut m = rho.matrix().clone();
                m.add_scaled(&dir, t.into());
                channel_coherent_information(&phi, &DensityMatrix::from_trusted(m), LogBase::Natural)
                    .unwrap()
            };
            let fd = (f(h) - f(-h)) / (2.0 * h);
            assert!((analytic - fd).abs() <= 1e-4 * fd.abs().max(1e-3), "{analytic} vs {fd}");
        }
    }
}
