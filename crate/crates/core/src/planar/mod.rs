//! Embedded planar multigraphs stored as a rotation system.
//!
//! Edge `e` owns the half-edges `2e` (from its first endpoint) and `2e + 1`
//! (from its second endpoint), so `twin(h) = h ^ 1`. Around every vertex the
//! alive half-edges leaving it form a doubly linked cycle in counterclockwise
//! order. Deleting an edge splices both of its half-edges out of those cycles,
//! so every traversal only ever sees alive edges.

mod augment;
mod degree;
mod faces;
mod generate;
mod io;

pub use augment::augment_biconnect_triangulate;
pub use degree::{reduce_degree, VertexMap};
pub use faces::{build_dual, euler_components, trace_faces, DualGraph, FaceStructure};
pub use generate::{generate, GraphKind};
pub use io::{parse_graph, parse_graph_lines, write_graph};

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::GraphError;
use crate::{EdgeId, HalfEdgeId, VertexId};

pub(crate) const NONE: usize = usize::MAX;

#[inline]
pub fn twin(h: HalfEdgeId) -> HalfEdgeId {
    h ^ 1
}

#[inline]
pub fn edge_of(h: HalfEdgeId) -> EdgeId {
    h >> 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarGraph {
    n: usize,
    head: Vec<VertexId>,
    rot_next: Vec<HalfEdgeId>,
    rot_prev: Vec<HalfEdgeId>,
    first: Vec<HalfEdgeId>,
    degree: Vec<usize>,
    alive: Vec<bool>,
    deletable: Vec<bool>,
    alive_count: usize,
}

impl PlanarGraph {
    /// `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            head: Vec::new(),
            rot_next: Vec::new(),
            rot_prev: Vec::new(),
            first: vec![NONE; n],
            degree: vec![0; n],
            alive: Vec::new(),
            deletable: Vec::new(),
            alive_count: 0,
        }
    }

    /// Builds a graph from an edge list and, per vertex, the counterclockwise
    /// order of its incident edge ids. The input must be simple.
    pub fn from_rotations(
        n: usize,
        edges: &[(VertexId, VertexId)],
        rotations: &[Vec<EdgeId>],
    ) -> Result<Self, GraphError> {
        if rotations.len() != n {
            return Err(GraphError::Rotation {
                vertex: rotations.len().min(n),
                msg: format!("expected {n} rotation lists, got {}", rotations.len()),
            });
        }
        let mut seen_pairs = HashSet::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen_pairs.insert((u.min(v), u.max(v))) {
                return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
            }
        }
        let m = edges.len();
        let mut g = Self::new(n);
        g.head = Vec::with_capacity(2 * m);
        for &(u, v) in edges {
            g.head.push(v);
            g.head.push(u);
        }
        g.rot_next = vec![NONE; 2 * m];
        g.rot_prev = vec![NONE; 2 * m];
        g.alive = vec![true; m];
        g.deletable = vec![true; m];
        g.alive_count = m;
        let mut placed = vec![0u8; 2 * m];
        for (v, rot) in rotations.iter().enumerate() {
            let mut hs = Vec::with_capacity(rot.len());
            for &e in rot {
                if e >= m {
                    return Err(GraphError::EdgeOutOfRange(e));
                }
                let (a, b) = edges[e];
                let h = if a == v {
                    2 * e
                } else if b == v {
                    2 * e + 1
                } else {
                    return Err(GraphError::Rotation {
                        vertex: v,
                        msg: format!("edge {e} is not incident"),
                    });
                };
                if placed[h] != 0 {
                    return Err(GraphError::Rotation {
                        vertex: v,
                        msg: format!("edge {e} listed twice"),
                    });
                }
                placed[h] = 1;
                hs.push(h);
            }
            let k = hs.len();
            for i in 0..k {
                g.rot_next[hs[i]] = hs[(i + 1) % k];
                g.rot_prev[hs[(i + 1) % k]] = hs[i];
            }
            g.first[v] = hs.first().copied().unwrap_or(NONE);
            g.degree[v] = k;
        }
        if let Some(h) = placed.iter().position(|&p| p == 0) {
            return Err(GraphError::Rotation {
                vertex: g.tail(h),
                msg: format!("edge {} missing from rotation", edge_of(h)),
            });
        }
        g.check_planar()?;
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edge ids ever allocated (alive or deleted).
    pub fn edge_count(&self) -> usize {
        self.alive.len()
    }

    pub fn alive_edge_count(&self) -> usize {
        self.alive_count
    }

    pub fn is_alive(&self, e: EdgeId) -> bool {
        self.alive[e]
    }

    pub fn is_deletable(&self, e: EdgeId) -> bool {
        self.deletable[e]
    }

    pub fn set_deletable(&mut self, e: EdgeId, deletable: bool) {
        self.deletable[e] = deletable;
    }

    pub fn head(&self, h: HalfEdgeId) -> VertexId {
        self.head[h]
    }

    pub fn tail(&self, h: HalfEdgeId) -> VertexId {
        self.head[twin(h)]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.head[2 * e + 1], self.head[2 * e])
    }

    pub fn rot_next(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.rot_next[h]
    }

    pub fn rot_prev(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.rot_prev[h]
    }

    /// Some alive half-edge leaving `v`, if any.
    pub fn first_out(&self, v: VertexId) -> Option<HalfEdgeId> {
        let h = self.first[v];
        (h != NONE).then_some(h)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v]
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    /// Alive half-edges leaving `v` in counterclockwise order.
    pub fn rotation(&self, v: VertexId) -> Rotation<'_> {
        let start = self.first[v];
        Rotation {
            g: self,
            start,
            cur: start,
        }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation(v).map(move |h| self.head[h])
    }

    pub fn alive_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.alive.len()).filter(move |&e| self.alive[e])
    }

    /// Inserts edge `u`-`v`. The new half-edge at `u` is placed right after
    /// `after_u` in the rotation of `u` (or appended before `first_out(u)` when
    /// `None`); likewise for `v`.
    pub fn add_edge(
        &mut self,
        u: VertexId,
        v: VertexId,
        after_u: Option<HalfEdgeId>,
        after_v: Option<HalfEdgeId>,
    ) -> EdgeId {
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert_ne!(u, v, "self-loops are not supported");
        let e = self.alive.len();
        self.head.push(v);
        self.head.push(u);
        self.rot_next.push(NONE);
        self.rot_next.push(NONE);
        self.rot_prev.push(NONE);
        self.rot_prev.push(NONE);
        self.alive.push(true);
        self.deletable.push(true);
        self.alive_count += 1;
        self.link(2 * e, u, after_u);
        self.link(2 * e + 1, v, after_v);
        e
    }

    fn link(&mut self, h: HalfEdgeId, v: VertexId, after: Option<HalfEdgeId>) {
        self.degree[v] += 1;
        if self.first[v] == NONE {
            debug_assert!(after.is_none());
            self.first[v] = h;
            self.rot_next[h] = h;
            self.rot_prev[h] = h;
            return;
        }
        let p = match after {
            Some(p) => {
                debug_assert!(self.tail(p) == v && self.alive[edge_of(p)]);
                p
            }
            None => self.rot_prev[self.first[v]],
        };
        let nx = self.rot_next[p];
        self.rot_next[p] = h;
        self.rot_prev[h] = p;
        self.rot_next[h] = nx;
        self.rot_prev[nx] = h;
    }

    fn unlink(&mut self, h: HalfEdgeId) {
        let v = self.tail(h);
        self.degree[v] -= 1;
        let nx = self.rot_next[h];
        if nx == h {
            self.first[v] = NONE;
            return;
        }
        let p = self.rot_prev[h];
        self.rot_next[p] = nx;
        self.rot_prev[nx] = p;
        if self.first[v] == h {
            self.first[v] = nx;
        }
    }

    /// Removes `e` from the embedding. Panics if `e` is already dead.
    pub fn delete_edge(&mut self, e: EdgeId) {
        assert!(self.alive[e], "edge {e} already deleted");
        self.alive[e] = false;
        self.alive_count -= 1;
        self.unlink(2 * e);
        self.unlink(2 * e + 1);
    }

    /// Component label per vertex (labels are the minimum vertex id of the
    /// component) and the number of components.
    pub fn components(&self) -> (Vec<VertexId>, usize) {
        let mut label = vec![NONE; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != NONE {
                continue;
            }
            count += 1;
            label[s] = s;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if label[w] == NONE {
                        label[w] = s;
                        queue.push_back(w);
                    }
                }
            }
        }
        (label, count)
    }

    /// Checks the rotation-system invariants and planarity of the embedding.
    pub fn validate(&self) -> Result<(), GraphError> {
        let mut seen = vec![false; self.head.len()];
        for v in 0..self.n {
            let mut count = 0;
            if let Some(start) = self.first_out(v) {
                let mut h = start;
                loop {
                    if !self.alive[edge_of(h)] {
                        return Err(GraphError::Rotation {
                            vertex: v,
                            msg: format!("dead half-edge {h} in rotation"),
                        });
                    }
                    if self.tail(h) != v {
                        return Err(GraphError::Rotation {
                            vertex: v,
                            msg: format!("half-edge {h} has another tail"),
                        });
                    }
                    if seen[h] {
                        return Err(GraphError::Rotation {
                            vertex: v,
                            msg: format!("half-edge {h} visited twice"),
                        });
                    }
                    if self.rot_prev[self.rot_next[h]] != h {
                        return Err(GraphError::Rotation {
                            vertex: v,
                            msg: "rot_prev is not the inverse of rot_next".into(),
                        });
                    }
                    seen[h] = true;
                    count += 1;
                    h = self.rot_next[h];
                    if h == start {
                        break;
                    }
                }
            }
            if count != self.degree[v] {
                return Err(GraphError::Rotation {
                    vertex: v,
                    msg: format!("degree {} but rotation has {count}", self.degree[v]),
                });
            }
        }
        for e in 0..self.alive.len() {
            if self.alive[e] && !(seen[2 * e] && seen[2 * e + 1]) {
                return Err(GraphError::Rotation {
                    vertex: self.tail(2 * e),
                    msg: format!("alive edge {e} missing from a rotation"),
                });
            }
        }
        if self.alive_edges().count() != self.alive_count {
            return Err(GraphError::Rotation {
                vertex: 0,
                msg: "alive edge counter out of sync".into(),
            });
        }
        self.check_planar()
    }

    /// Per connected component with at least one edge, `V - E + W = 2` where
    /// `W` counts face walks; isolated vertices contribute 1 each.
    pub(crate) fn check_planar(&self) -> Result<(), GraphError> {
        let faces = trace_faces(self)?;
        let (label, count) = self.components();
        let mut has_edge = vec![false; self.n];
        for v in 0..self.n {
            if self.degree[v] > 0 {
                has_edge[label[v]] = true;
            }
        }
        let with_edges = (0..self.n).filter(|&v| label[v] == v && has_edge[v]).count();
        let isolated = count - with_edges;
        let got = self.n as i64 - self.alive_count as i64 + faces.walk_count() as i64;
        let expected = 2 * with_edges as i64 + isolated as i64;
        if got != expected {
            return Err(GraphError::NotPlanar { got, expected });
        }
        Ok(())
    }

    /// Copies the sub-embedding spanned by `edges` onto `vertices`. Local
    /// vertex `i` is `vertices[i]` and local edge `j` is `edges[j]`; rotation
    /// order is inherited from `self`. Every endpoint must appear in
    /// `vertices`.
    pub fn restrict(&self, vertices: &[VertexId], edges: &[EdgeId]) -> PlanarGraph {
        let local_vertex: HashMap<VertexId, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let local_edge: HashMap<EdgeId, usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let m = edges.len();
        let mut g = PlanarGraph::new(vertices.len());
        g.head = Vec::with_capacity(2 * m);
        for &e in edges {
            let (a, b) = self.endpoints(e);
            g.head.push(local_vertex[&b]);
            g.head.push(local_vertex[&a]);
        }
        g.rot_next = vec![NONE; 2 * m];
        g.rot_prev = vec![NONE; 2 * m];
        g.alive = edges.iter().map(|&e| self.alive[e]).collect();
        g.deletable = edges.iter().map(|&e| self.deletable[e]).collect();
        g.alive_count = g.alive.iter().filter(|&&a| a).count();
        let mut hs = Vec::new();
        for (lv, &v) in vertices.iter().enumerate() {
            hs.clear();
            for h in self.rotation(v) {
                if let Some(&le) = local_edge.get(&edge_of(h)) {
                    hs.push(2 * le + (h & 1));
                }
            }
            let k = hs.len();
            for i in 0..k {
                g.rot_next[hs[i]] = hs[(i + 1) % k];
                g.rot_prev[hs[(i + 1) % k]] = hs[i];
            }
            g.first[lv] = hs.first().copied().unwrap_or(NONE);
            g.degree[lv] = k;
        }
        g
    }
}

pub struct Rotation<'a> {
    g: &'a PlanarGraph,
    start: HalfEdgeId,
    cur: HalfEdgeId,
}

impl Iterator for Rotation<'_> {
    type Item = HalfEdgeId;

    fn next(&mut self) -> Option<HalfEdgeId> {
        if self.cur == NONE {
            return None;
        }
        let h = self.cur;
        let nx = self.g.rot_next[h];
        self.cur = if nx == self.start { NONE } else { nx };
        Some(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> PlanarGraph {
        PlanarGraph::from_rotations(
            3,
            &[(0, 1), (1, 2), (2, 0)],
            &[vec![0, 2], vec![1, 0], vec![2, 1]],
        )
        .unwrap()
    }

    #[test]
    fn triangle_is_valid() {
        let g = triangle();
        g.validate().unwrap();
        assert_eq!(g.alive_edge_count(), 3);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn delete_splices_rotation() {
        let mut g = triangle();
        g.delete_edge(0);
        g.validate().unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![2]);
        g.delete_edge(2);
        assert_eq!(g.first_out(0), None);
        g.validate().unwrap();
        assert_eq!(g.components().1, 2);
    }

    #[test]
    fn rejects_parallel_and_loops() {
        assert_eq!(
            PlanarGraph::from_rotations(2, &[(0, 1), (1, 0)], &[vec![0, 1], vec![0, 1]]),
            Err(GraphError::ParallelEdge(0, 1))
        );
        assert_eq!(
            PlanarGraph::from_rotations(1, &[(0, 0)], &[vec![0]]),
            Err(GraphError::SelfLoop(0))
        );
    }

    #[test]
    fn rejects_non_planar_rotation() {
        // K4 with a rotation that embeds it on the torus.
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let rot = vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 3, 5], vec![2, 4, 5]];
        assert!(matches!(
            PlanarGraph::from_rotations(4, &edges, &rot),
            Err(GraphError::NotPlanar { .. })
        ));
        let rot = vec![vec![0, 1, 2], vec![0, 4, 3], vec![1, 3, 5], vec![2, 5, 4]];
        PlanarGraph::from_rotations(4, &edges, &rot).unwrap();
    }

    #[test]
    fn restrict_keeps_order() {
        let g = triangle();
        let sub = g.restrict(&[0, 1, 2], &[0, 2]);
        sub.validate().unwrap();
        assert_eq!(sub.alive_edge_count(), 2);
        assert_eq!(sub.degree(0), 2);
        assert_eq!(sub.degree(1), 1);
    }
}
