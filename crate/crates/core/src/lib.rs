//! Certified lower bounds on the distance of quantum channels to the degradable,
//! antidegradable and entanglement-breaking sets, and of bipartite states to the
//! separable and product sets.
//!
//! Entropic quantities are computed from explicit witnesses (input states, PPT
//! duals, see-saw inputs) and pushed through inverted continuity bounds.

pub mod bounds;
pub mod channel;
pub mod entropy;
pub mod error;
pub mod io;
pub mod linalg;
pub mod optimize;
pub mod random;

pub use bounds::{BoundEntry, BoundReport, FormulaTag, TargetSet};
pub use channel::KrausChannel;
pub use entropy::LogBase;
pub use error::{Error, Result};
pub use linalg::{CMatrix, DensityMatrix, PureState, C64};
pub use optimize::{Certificate, OptimizerConfig, Witness};
