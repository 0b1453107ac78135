//! Exact symbolic computation of the ideal lattice and primitive ideal space
//! of the graph C*-algebra of a finite directed graph with no sources.
//!
//! - [`graph`]: graphs, hereditary and saturated vertex sets, entrance-free cycles.
//! - [`tails`]: maximal tails and their cyclic / aperiodic classification.
//! - [`circle`]: exact open and closed subsets of the circle with rational endpoints.
//! - [`ideal`]: primitive ideals, ideal pairs, hulls, and the lattice operations.
//! - [`oracle`]: brute-force cross-checks and random instance generators.
//! - [`cli`]: the `prim-lattice` command-line front end.

pub mod circle;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod ideal;
pub mod oracle;
pub mod tails;

pub use circle::{Angle, ClosedCircleSet, OpenCircleSet, Rational};
pub use error::{Error, Result};
pub use graph::{Cycle, DirectedGraph, Edge, Path, RawGraph, VertexSet};
pub use ideal::{Hull, HullEntry, IdealPair, PrimitiveIdeal};
pub use tails::{MaximalTail, TailKind};
