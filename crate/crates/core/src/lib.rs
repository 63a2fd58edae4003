//! Qudit density matrices in the angular-momentum ladder parametrization,
//! bipartite entanglement measures, CHSH evaluation and coupled-spin dynamics.

pub mod angmom;
pub mod bell;
pub mod bipartite;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod gell_mann;
pub mod linalg;
pub mod random;
pub mod state;

pub use angmom::{Ladder, Spin};
pub use bipartite::{BipartiteState, Side};
pub use error::{Error, Invariant, Result};
pub use gell_mann::{gell_mann, GellMannBasis};
pub use linalg::OperatorMatrix;
pub use state::{DensityMatrix, ExpectationTable};
