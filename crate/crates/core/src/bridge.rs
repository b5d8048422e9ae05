//! Detects whether a deletion disconnects a component.
//!
//! The faces of the current graph are the components of the graph of dual
//! edges of deleted primal edges, so a union-find over the initial faces
//! tracks the face count. Euler's formula then yields the component count.

use crate::error::{DcError, GraphError};
use crate::planar::{euler_components, trace_faces, PlanarGraph};
use crate::union_find::{Dsu, UnionFind};
use crate::EdgeId;

#[derive(Debug, Clone)]
pub struct DualComplement<U: UnionFind = Dsu> {
    faces: U,
    dual: Vec<(u32, u32)>,
    alive: Vec<bool>,
    alive_count: usize,
    vertex_count: usize,
    components: usize,
}

impl DualComplement<Dsu> {
    pub fn attach(g: &PlanarGraph) -> Result<Self, GraphError> {
        let f = trace_faces(g)?;
        Self::attach_with(g, Dsu::new(f.walk_count().max(1)), &f.faces, &f.face_of)
    }
}

impl<U: UnionFind> DualComplement<U> {
    /// `faces` must have one element per face walk (or one, if there are no
    /// walks).
    pub fn attach_with(
        g: &PlanarGraph,
        mut faces: U,
        walks: &[Vec<usize>],
        face_of: &[usize],
    ) -> Result<Self, GraphError> {
        // Walks of different components bordering the unbounded region are
        // one face of the plane; join one walk of every component.
        let (label, _) = g.components();
        let mut outer: Vec<Option<usize>> = vec![None; g.vertex_count()];
        let mut shared = None;
        for (i, w) in walks.iter().enumerate() {
            let c = label[g.tail(w[0])];
            if outer[c].is_none() {
                outer[c] = Some(i);
                match shared {
                    None => shared = Some(i),
                    Some(s) => {
                        faces.union(s, i);
                    }
                }
            }
        }
        let dual = (0..g.edge_count())
            .map(|e| {
                if g.is_alive(e) {
                    (face_of[2 * e] as u32, face_of[2 * e + 1] as u32)
                } else {
                    (u32::MAX, u32::MAX)
                }
            })
            .collect();
        let alive: Vec<bool> = (0..g.edge_count()).map(|e| g.is_alive(e)).collect();
        let alive_count = g.alive_edge_count();
        let components =
            euler_components(g.vertex_count(), alive_count, faces.component_count())?;
        Ok(Self {
            faces,
            dual,
            alive,
            alive_count,
            vertex_count: g.vertex_count(),
            components,
        })
    }

    /// Records the deletion of `e` and reports whether it was critical, that
    /// is, whether it increased the number of components.
    pub fn on_delete(&mut self, e: EdgeId) -> Result<bool, DcError> {
        if e >= self.alive.len() {
            return Err(DcError::EdgeOutOfRange(e));
        }
        if !self.alive[e] {
            return Err(DcError::DeadEdge(e));
        }
        self.alive[e] = false;
        self.alive_count -= 1;
        let (a, b) = self.dual[e];
        // A loop in the dual is a no-op union; the Euler count decides.
        self.faces.union(a as usize, b as usize);
        let before = self.components;
        self.components = euler_components(
            self.vertex_count,
            self.alive_count,
            self.faces.component_count(),
        )?;
        Ok(self.components > before)
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn face_count(&self) -> usize {
        self.faces.component_count()
    }

    pub fn alive_edge_count(&self) -> usize {
        self.alive_count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_alive(&self, e: EdgeId) -> bool {
        self.alive[e]
    }

    pub fn dsu_ops(&self) -> u64 {
        self.faces.op_count()
    }
}
