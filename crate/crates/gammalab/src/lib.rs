//! A laboratory for expansive operations on the open families of small
//! finite topological spaces.
//!
//! The crate computes, for an operation `γ: τ → P(X)` with `V ⊆ V^γ`:
//! the derived interior/closure pair `int_γ`/`cl_γ`, the γ-open and γ-closed
//! families, the `γ*`-semi-open/semi-closed layer with its hulls and derived
//! sets, and classification predicates for maps between spaces. On top of
//! that sits a registry of checkable statements together with a driver that
//! sweeps them over every small space, operation, and map, reporting
//! counterexamples with replayable witnesses.

pub mod gamma;
pub mod io;
pub mod maps;
pub mod ops;
pub mod semi;
pub mod space;
pub mod theorems;

pub mod cli;

pub use gamma::{ClosedDef, GammaCalculus};
pub use maps::PointMap;
pub use ops::{OpKind, OpenDir, Operation, OperationProfile, SubspacePolicy};
pub use semi::{Analysis, Analyzed};
pub use space::{enumerate_topologies, FiniteSpace, Mask, SpaceError, TopologyViolation};
