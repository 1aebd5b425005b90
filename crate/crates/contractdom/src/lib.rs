//! Deciders for the question: can a single edge contraction reduce the
//! domination number of a connected graph?
//!
//! Three mutually checking routes are provided:
//! - [`oracle::decide_bruteforce`] contracts every edge and re-solves;
//! - [`oracle::decide_characterization`] searches for a non-stable minimum
//!   dominating set, which is equivalent by a known characterization;
//! - [`polyalgo::decide_driver`] runs the polynomial-time structural
//!   algorithm for P3+kP2-free graphs.

pub mod claims;
pub mod domination;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod polyalgo;
pub mod report;
pub mod structure;

pub use graph::{DistanceMatrix, Graph, GraphError, VertexSet};
pub use oracle::{Decision, Method};
