//! See-saw lower estimate of the diamond distance between two channels.
//!
//! For a pure input `psi` on `A (x) R` let `X = ((Phi - Psi) (x) Id)(|psi><psi|)`
//! and `U = sign(X)`. Replacing `psi` by the top eigenvector of
//! `((Phi - Psi)^* (x) Id)(U)` never decreases `||X||_1`.

use crate::channel::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_sign, tensor, trace_norm, CMatrix, PureState, C64};
use crate::random;

use super::{Certificate, CertificateKind, OptimizerConfig, Stagnation, Witness};

struct Difference<'a> {
    plus: &'a KrausChannel,
    minus: &'a KrausChannel,
    d_r: usize,
}

impl Difference<'_> {
    /// `((Phi - Psi) (x) Id)(|v><v|)`
    fn output(&self, v: &[C64]) -> CMatrix {
        let d_r = self.d_r;
        let n = self.plus.d_out() * d_r;
        let mut x = CMatrix::zeros(n, n);
        for (chan, sign) in [(self.plus, 1.0), (self.minus, -1.0)] {
            for k in chan.kraus() {
                // (K (x) I) v, with v read as a d_A x d_R matrix
                let w: Vec<C64> = (0..n)
                    .map(|row| {
                        let (b, r) = (row / d_r, row % d_r);
                        (0..chan.d_in()).map(|a| k[(b, a)] * v[a * d_r + r]).sum()
                    })
                    .collect();
                x.add_scaled(&CMatrix::outer(&w), C64::new(sign, 0.0));
            }
        }
        x
    }

    /// `((Phi - Psi)^* (x) Id)(u)`
    fn adjoint(&self, u: &CMatrix) -> CMatrix {
        let n = self.plus.d_in() * self.d_r;
        let id = CMatrix::identity(self.d_r);
        let mut m = CMatrix::zeros(n, n);
        for (chan, sign) in [(self.plus, 1.0), (self.minus, -1.0)] {
            for k in chan.kraus() {
                let kd = tensor(&k.adjoint(), &id);
                // (K^dag (x) I) U (K (x) I) = (K^dag (x) I) [(K^dag (x) I) U]^dag for Hermitian U
                let t = kd.matmul(u);
                m.add_scaled(&kd.matmul(&t.adjoint()), C64::new(sign, 0.0));
            }
        }
        m.symmetrized()
    }
}

fn check_dims(phi: &KrausChannel, psi: &KrausChannel) -> Result<()> {
    if phi.d_in() != psi.d_in() || phi.d_out() != psi.d_out() {
        return Err(Error::DimensionMismatch(format!(
            "channels {}->{} and {}->{}",
            phi.d_in(),
            phi.d_out(),
            psi.d_in(),
            psi.d_out()
        )));
    }
    Ok(())
}

/// `||((Phi - Psi) (x) Id_R)(|input><input|)||_1` with `d_R = d_A`.
pub fn seesaw_value(phi: &KrausChannel, psi: &KrausChannel, input: &PureState) -> Result<f64> {
    check_dims(phi, psi)?;
    let d_r = phi.d_in();
    if input.dim() != phi.d_in() * d_r {
        return Err(Error::DimensionMismatch(format!(
            "input of dimension {} for A (x) R = {}",
            input.dim(),
            phi.d_in() * d_r
        )));
    }
    let diff = Difference { plus: phi, minus: psi, d_r };
    Ok(trace_norm(&diff.output(input.vector())))
}

struct Run {
    value: f64,
    vec: Vec<C64>,
    converged: bool,
    iterations: usize,
}

fn climb(diff: &Difference<'_>, start: Vec<C64>, cfg: &OptimizerConfig) -> Result<Run> {
    let mut vec = start;
    let mut x = diff.output(&vec);
    let mut value = trace_norm(&x);
    let mut stagnation = Stagnation::new(cfg.tol);
    for it in 1..=cfg.max_iters {
        let u = hermitian_sign(&x)?;
        let m = diff.adjoint(&u);
        let eig = hermitian_eigen(&m)?;
        let top = eig.vector(eig.values.len() - 1);
        let next_x = diff.output(&top);
        let next = trace_norm(&next_x);
        let change = next - value;
        if next >= value {
            vec = top;
            x = next_x;
            value = next;
        }
        if stagnation.record(change) || value == 0.0 {
            return Ok(Run { value, vec, converged: true, iterations: it });
        }
    }
    Ok(Run { value, vec, converged: false, iterations: cfg.max_iters })
}

/// Certified lower bound on `||Phi - Psi||_diamond` from the best input found.
pub fn seesaw_diamond_lower(
    phi: &KrausChannel,
    psi: &KrausChannel,
    cfg: &OptimizerConfig,
) -> Result<Certificate> {
    cfg.validate()?;
    check_dims(phi, psi)?;
    let d_a = phi.d_in();
    let diff = Difference { plus: phi, minus: psi, d_r: d_a };

    let mut best = climb(&diff, PureState::maximally_entangled(d_a).vector().to_vec(), cfg)?;
    let mut iterations = best.iterations;
    let mut rng = cfg.rng(101);
    for _ in 0..cfg.restarts {
        let start = random::random_pure(&mut rng, d_a * d_a);
        let run = climb(&diff, start.vector().to_vec(), cfg)?;
        iterations += run.iterations;
        if run.value > best.value {
            best = run;
        }
    }
    let witness = PureState::normalized(best.vec)?.with_dims((d_a, d_a))?;
    let value = seesaw_value(phi, psi, &witness)?;
    Ok(Certificate {
        kind: CertificateKind::DiamondLower,
        value,
        witness: Witness::Pure(witness),
        converged: best.converged,
        iterations,
    })
}
