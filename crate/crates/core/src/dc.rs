//! The interface every decremental connectivity algorithm in this crate
//! implements, so that levels can be stacked over any of them.

use std::fmt;
use std::ops::AddAssign;

use crate::error::DcError;
use crate::planar::PlanarGraph;
use crate::{EdgeId, VertexId};

/// Connected-component identifier. Two vertices of one instance have equal
/// ids exactly when they are connected. Ids handed out after a split are
/// fresh within the instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CcId(pub u64);

impl fmt::Display for CcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Monotone work counters.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Counters {
    /// Half-edges (or skeleton adjacencies) inspected by lockstep searches.
    pub dfs_steps: u64,
    /// Vertex id rewrites after splits.
    pub relabels: u64,
    pub dsu_ops: u64,
    /// Skeleton membership moves and auxiliary vertex creations.
    pub skeleton_ops: u64,
    pub micro_hits: u64,
    pub micro_misses: u64,
}

impl Counters {
    /// Update work excluding union-find operations.
    pub fn work(&self) -> u64 {
        self.dfs_steps + self.relabels + self.skeleton_ops + self.micro_hits + self.micro_misses
    }
}

impl AddAssign for Counters {
    fn add_assign(&mut self, o: Counters) {
        self.dfs_steps += o.dfs_steps;
        self.relabels += o.relabels;
        self.dsu_ops += o.dsu_ops;
        self.skeleton_ops += o.skeleton_ops;
        self.micro_hits += o.micro_hits;
        self.micro_misses += o.micro_misses;
    }
}

/// Result of one deletion: whether it split a component, and the new ids of
/// the explicit-set vertices whose id changed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DeleteOutcome {
    pub critical: bool,
    pub changes: Vec<(VertexId, CcId)>,
}

/// One layer of a stacked instance, for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub kind: &'static str,
    pub r: Option<usize>,
    /// Largest graph handled by an instance at this layer.
    pub max_vertices: usize,
    pub instances: usize,
}

pub trait DecrementalConnectivity: Send {
    fn vertex_count(&self) -> usize;

    fn delete(&mut self, e: EdgeId) -> Result<DeleteOutcome, DcError>;

    fn cc_id(&self, v: VertexId) -> CcId {
        self.cc_id_traced(v).0
    }

    /// The id of `v` together with the number of nested instance queries
    /// needed to produce it.
    fn cc_id_traced(&self, v: VertexId) -> (CcId, u32);

    fn connected(&self, u: VertexId, v: VertexId) -> bool {
        self.cc_id(u) == self.cc_id(v)
    }

    /// Every id this instance can ever return is below this bound.
    fn id_bound(&self) -> u64;

    fn counters(&self) -> Counters;

    /// Current number of components derived from Euler's formula, when the
    /// instance maintains the face structure.
    fn euler_component_count(&self) -> Option<usize> {
        None
    }

    /// Layers from this instance down to the leaves.
    fn layers(&self) -> Vec<Layer>;
}

/// Builds instances over a graph with a given explicit set.
pub trait DcBuilder: Send + Sync {
    fn build(
        &self,
        g: PlanarGraph,
        explicit: Vec<bool>,
    ) -> Result<Box<dyn DecrementalConnectivity>, DcError>;
}

/// Merges per-instance layer lists of sibling instances.
pub(crate) fn merge_layers(acc: &mut Vec<Layer>, child: Vec<Layer>) {
    for (i, l) in child.into_iter().enumerate() {
        match acc.get_mut(i) {
            Some(a) => {
                a.max_vertices = a.max_vertices.max(l.max_vertices);
                a.instances += l.instances;
                if a.kind != l.kind {
                    a.kind = "mixed";
                }
            }
            None => acc.push(l),
        }
    }
}
