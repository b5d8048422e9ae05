//! Decremental connectivity for embedded planar graphs.
//!
//! Edges of a planar graph are deleted one at a time while connectivity
//! queries are answered in between. The crate provides three interchangeable
//! algorithms behind [`DecrementalConnectivity`]:
//!
//! * [`dc_base::DcBase`]: explicit component ids, relabeling the smaller side
//!   of each split found by two lockstep searches; `O(n log n)` total.
//! * [`skeleton::Level`]: an r-division with one inner instance per region
//!   and a skeleton graph over boundary vertices; levels nest.
//! * [`skeleton::assemble_full`]: two levels over table-driven micro
//!   instances ([`micro::MicroDc`]), `O(n)` total update work and constant
//!   query cost.
//!
//! Splits are detected with [`bridge::DualComplement`], which tracks faces
//! through a union-find over the dual graph and applies Euler's formula.

pub mod bridge;
pub mod dc;
pub mod dc_base;
pub mod division;
pub mod error;
pub mod exec;
pub mod harness;
pub mod micro;
pub mod planar;
pub mod rng;
pub mod skeleton;
pub mod union_find;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type HalfEdgeId = usize;

pub use dc::{CcId, Counters, DcBuilder, DecrementalConnectivity, DeleteOutcome};
pub use error::{DcError, GraphError};
pub use planar::PlanarGraph;
