//! Zero forcing and edge forcing on simple graphs.
//!
//! An edge-forcing set is a matching whose endpoints, colored black, turn the
//! whole graph black under the color change rule. The crate provides the
//! forcing engine, exact solvers for small graphs, butterfly networks with
//! their binding structure, explicit and recursive edge-forcing
//! constructions for `BF(r)`, the zero forcing to edge forcing reduction,
//! and a self-verifying certificate format.

pub mod butterfly;
pub mod certificate;
pub mod constructions;
pub mod dot;
pub mod forcing;
pub mod graph;
pub mod io;
pub mod reduction;
pub mod solver;

pub use butterfly::{build_butterfly, Butterfly, ButterflyCoordinate, Diamond, DiamondKind, EdgeKind};
pub use forcing::{closure, is_edge_forcing_set, is_zero_forcing_set, ColorState, ForcingTrace};
pub use graph::{is_matching, matchings_of_size, Edge, Graph, Matching};
pub use solver::{min_edge_forcing, min_zero_forcing, SearchMode, SolverOptions};

/// Version recorded in emitted certificates.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
