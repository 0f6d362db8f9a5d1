//! Entropic functionals of states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    clipped_spectrum, hermitian_eigen, partial_trace, tensor, DensityMatrix, Subsystem, CLIP_TOL,
};

/// Eigenvalues of `rho` above this count as support for the relative entropy.
pub const SUPPORT_EIGEN_TOL: f64 = 1e-10;
/// Squared overlap with the kernel of `sigma` above this breaks support inclusion.
pub const SUPPORT_OVERLAP_TOL: f64 = 1e-9;

/// Logarithm base shared by every quantity in one computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    Natural,
}

impl LogBase {
    /// Natural log of the base.
    pub fn ln_base(self) -> f64 {
        match self {
            LogBase::Two => std::f64::consts::LN_2,
            LogBase::Natural => 1.0,
        }
    }

    /// Converts a value in nats to this base.
    pub fn from_nats(self, nats: f64) -> f64 {
        nats / self.ln_base()
    }

    pub fn log(self, x: f64) -> f64 {
        self.from_nats(x.ln())
    }

    pub fn label(self) -> &'static str {
        match self {
            LogBase::Two => "2",
            LogBase::Natural => "e",
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" | "two" => Ok(LogBase::Two),
            "e" | "natural" => Ok(LogBase::Natural),
            other => Err(Error::OutOfRange(format!("log base {other:?}"))),
        }
    }
}

fn eta(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

/// `h_2(x) = eta(x) + eta(1 - x)`.
pub fn binary_entropy(x: f64, base: LogBase) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::OutOfRange(format!("binary entropy argument {x}")));
    }
    let x = x.clamp(0.0, 1.0);
    Ok(base.from_nats(eta(x) + eta(1.0 - x)))
}

/// The continuity-bound correction `g(x) = (1 + x) h_2(x / (1 + x))`, zero for `x < 0`.
pub fn g_func(x: f64, base: LogBase) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    // (1+x) ln(1+x) - x ln x
    let nats = (1.0 + x) * (1.0 + x).ln() - x * x.ln();
    base.from_nats(nats)
}

/// Shannon entropy of a clipped spectrum, in nats.
pub(crate) fn spectrum_entropy_nats(values: &[f64]) -> Result<f64> {
    Ok(clipped_spectrum(values)?.into_iter().map(eta).sum())
}

pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    let eig = hermitian_eigen(rho.matrix())?;
    Ok(base.from_nats(spectrum_entropy_nats(&eig.values)?))
}

/// Relative entropy value; `+infinity` is a distinct marker rather than a float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RelativeEntropy {
    Finite(f64),
    Infinite,
}

impl RelativeEntropy {
    pub fn finite(self) -> Option<f64> {
        match self {
            RelativeEntropy::Finite(v) => Some(v),
            RelativeEntropy::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, RelativeEntropy::Infinite)
    }
}

/// `H(rho || sigma) = Tr rho log rho - Tr rho log sigma`.
pub fn relative_entropy(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    base: LogBase,
) -> Result<RelativeEntropy> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy of {}-dim and {}-dim states",
            rho.dim(),
            sigma.dim()
        )));
    }
    let n = rho.dim();
    let er = hermitian_eigen(rho.matrix())?;
    let es = hermitian_eigen(sigma.matrix())?;
    let rho_vals = clipped_spectrum(&er.values)?;
    let sigma_vals = clipped_spectrum(&es.values)?;

    let kernel: Vec<usize> = (0..n).filter(|&k| sigma_vals[k] <= CLIP_TOL).collect();
    for (i, &lambda) in rho_vals.iter().enumerate() {
        if lambda <= SUPPORT_EIGEN_TOL {
            continue;
        }
        let overlap: f64 = kernel
            .iter()
            .map(|&k| {
                (0..n)
                    .map(|a| es.vectors[(a, k)].conj() * er.vectors[(a, i)])
                    .sum::<crate::linalg::C64>()
                    .norm_sqr()
            })
            .sum();
        if overlap >= SUPPORT_OVERLAP_TOL {
            return Ok(RelativeEntropy::Infinite);
        }
    }

    // Tr rho log sigma = sum_j log mu_j <f_j|rho|f_j> over the support of sigma
    let rm = rho.matrix();
    let mut cross = 0.0;
    for (j, &mu) in sigma_vals.iter().enumerate() {
        if mu <= CLIP_TOL {
            continue;
        }
        let f: Vec<_> = (0..n).map(|a| es.vectors[(a, j)]).collect();
        let rf = rm.mat_vec(&f);
        let diag: f64 = f.iter().zip(&rf).map(|(x, y)| (x.conj() * y).re).sum();
        cross += diag * mu.ln();
    }
    let neg_entropy: f64 = -rho_vals.iter().map(|&x| eta(x)).sum::<f64>();
    let nats = (neg_entropy - cross).max(0.0);
    Ok(RelativeEntropy::Finite(base.from_nats(nats)))
}

fn marginals(rho: &DensityMatrix) -> Result<(DensityMatrix, DensityMatrix)> {
    Ok((
        partial_trace(rho, Subsystem::B)?,
        partial_trace(rho, Subsystem::A)?,
    ))
}

/// `I(A:B) = H(rho_A) + H(rho_B) - H(rho_AB)`.
pub fn mutual_information(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    let (ra, rb) = marginals(rho)?;
    let v = von_neumann_entropy(&ra, base)? + von_neumann_entropy(&rb, base)?
        - von_neumann_entropy(rho, base)?;
    Ok(v.max(0.0))
}

/// The relative-entropy form `H(rho || rho_A (x) rho_B)` of the mutual information.
pub fn mutual_information_relative(rho: &DensityMatrix, base: LogBase) -> Result<RelativeEntropy> {
    let (ra, rb) = marginals(rho)?;
    let prod = DensityMatrix::from_trusted(tensor(ra.matrix(), rb.matrix()));
    relative_entropy(rho, &prod, base)
}

/// Direction of a coherent information `I(X>Y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `I(A>B) = H(B) - H(AB)`
    AtoB,
    /// `I(B>A) = H(A) - H(AB)`
    BtoA,
}

pub fn coherent_information_state(
    rho: &DensityMatrix,
    direction: Direction,
    base: LogBase,
) -> Result<f64> {
    let kept = match direction {
        Direction::AtoB => partial_trace(rho, Subsystem::A)?,
        Direction::BtoA => partial_trace(rho, Subsystem::B)?,
    };
    Ok(von_neumann_entropy(&kept, base)? - von_neumann_entropy(rho, base)?)
}

/// `max{H(rho_A), H(rho_B)} - H(rho)`: a computable lower bound on the relative
/// entropy of entanglement.
pub fn ic_lower_bound(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    let (ra, rb) = marginals(rho)?;
    let ha = von_neumann_entropy(&ra, base)?;
    let hb = von_neumann_entropy(&rb, base)?;
    Ok(ha.max(hb) - von_neumann_entropy(rho, base)?)
}
