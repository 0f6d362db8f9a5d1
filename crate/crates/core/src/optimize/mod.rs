//! Numerical searches producing the certificates consumed by [`crate::bounds`].
//!
//! All searches are deterministic given [`OptimizerConfig::seed`].

mod input_state;
mod ppt;
mod seesaw;

pub use input_state::{
    channel_ic_gradient, evaluate_input_objective, maximize_channel_ic, maximize_channel_l,
    minimize_channel_ic, InputObjective,
};
pub use ppt::{
    certify_ree, project_ppt, ree_gradient, ree_ppt_lower, trace_dist_to_ppt, ReeOutcome,
};
pub use seesaw::{seesaw_diamond_lower, seesaw_value};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::LogBase;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DensityMatrix, PureState};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Stagnation threshold on the objective.
    pub tol: f64,
    /// Initial step size.
    pub step: f64,
    /// Backtracking factor.
    pub backtrack: f64,
    pub seed: u64,
    pub base: LogBase,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_iters: 500,
            tol: 1e-7,
            step: 0.1,
            backtrack: 0.5,
            seed: 0,
            base: LogBase::Two,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.restarts >= 1
            && self.max_iters >= 1
            && self.tol > 0.0
            && self.step > 0.0
            && self.backtrack > 0.0
            && self.backtrack < 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("optimizer config {self:?}")))
        }
    }

    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// Number of consecutive small changes that count as stagnation.
pub(crate) const STAGNATION_WINDOW: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    Ic,
    NegIc,
    L,
    ErLower,
    DsOracle,
    DiamondLower,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Input state of a channel, or the closest PPT state found.
    State(DensityMatrix),
    /// Input vector on `A (x) R`.
    Pure(PureState),
    /// PPT state at which the relative entropy was linearized, plus the dual split
    /// `G = G1 + G2` certifying the linear minimum.
    PptDual { sigma: DensityMatrix, split: CMatrix },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub value: f64,
    pub witness: Witness,
    pub converged: bool,
    pub iterations: usize,
}

impl Certificate {
    pub fn witness_state(&self) -> Option<&DensityMatrix> {
        match &self.witness {
            Witness::State(s) => Some(s),
            Witness::PptDual { sigma, .. } => Some(sigma),
            Witness::Pure(_) => None,
        }
    }
}

/// Tracks stagnation of an objective sequence.
#[derive(Debug)]
pub(crate) struct Stagnation {
    tol: f64,
    quiet: usize,
}

impl Stagnation {
    pub(crate) fn new(tol: f64) -> Self {
        Self { tol, quiet: 0 }
    }

    /// Records a change; true once the last [`STAGNATION_WINDOW`] changes were all below tolerance.
    pub(crate) fn record(&mut self, change: f64) -> bool {
        if change.abs() < self.tol {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.quiet >= STAGNATION_WINDOW
    }
}
