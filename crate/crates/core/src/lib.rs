//! Facial unique-maximum colourings of plane graphs.
//!
//! A colouring of the vertices (or edges) of a plane graph is *facial
//! unique-maximum* (FUM) if it is proper (facially proper, for edges) and the
//! largest colour on every face occurs on exactly one vertex (edge) of it.
//!
//! - [`embedding`]: rotation systems, face tracing, blocks, embedding-preserving edits.
//! - [`fumcheck`]: verifiers for every colouring contract.
//! - [`exact`]: exhaustive solvers used as ground truth.
//! - [`constructive`]: recursive 4-colouring algorithms for the classes where they are known to work.
//! - [`families`]: tight examples, quadrangulation search and small-graph enumerators.
//! - [`cli`]: file formats, JSON reports and the command-line front end.

pub mod cli;
pub mod constructive;
pub mod embedding;
pub mod exact;
pub mod families;
pub mod fumcheck;

pub use embedding::{Dart, Edge, PlaneGraph};
pub use fumcheck::{EdgeColoring, FreePairSet, PrecoloredPath, VertexColoring};
