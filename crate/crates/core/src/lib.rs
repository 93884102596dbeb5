//! Exact-arithmetic toolkit for two-field lattice systems and the
//! Yang-Baxter maps obtained from them by reduction to edge invariants.
//!
//! Every routine is generic over a [`Scalar`] field. Verdicts rely on exact
//! equality, so the aliases below fix the field to [`Rational`]; that is the
//! instance the command-line tool and the acceptance suite use.

pub mod chains;
pub mod error;
pub mod exactnum;
pub mod lax;
pub mod quadgraph;
pub mod reduction;
mod scalar;
pub mod verify;
pub mod ybmaps;

pub use error::{Error, Result};
pub use exactnum::{gamma_pair_from_slope, parse_rational, sample_rational, Delta, Draws, Rational};
pub use quadgraph::Family;
pub use scalar::Scalar;
pub use verify::{Property, VerificationReport};
pub use ybmaps::Mutation;

pub type GammaPair = exactnum::GammaPair<Rational>;
pub type QuadSystem = quadgraph::QuadSystem<Rational>;
pub type EdgeParam = quadgraph::EdgeParam<Rational>;
pub type FieldPoint = quadgraph::FieldPoint<Rational>;
pub type QuadData = quadgraph::QuadData<Rational>;
pub type SymmetryAction = quadgraph::SymmetryAction<Rational>;
pub type MapId = ybmaps::MapId<Rational>;
pub type YbPoint = ybmaps::YbPoint<Rational>;
pub type YbMap = ybmaps::YbMap<Rational>;
pub type SquareSolution = reduction::SquareSolution<Rational>;
pub type PathState = chains::PathState<Rational>;
pub type LaxMatrix = lax::LaxMatrix<Rational>;
pub type TripleState = verify::TripleState<Rational>;
pub type SweepConfig = verify::SweepConfig<Rational>;
