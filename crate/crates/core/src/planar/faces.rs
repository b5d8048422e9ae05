use super::{edge_of, twin, PlanarGraph, NONE};
use crate::error::GraphError;
use crate::{EdgeId, HalfEdgeId};

/// Partition of the alive half-edges into closed face walks, where the walk
/// successor of `h` is `rot_next(twin(h))`.
#[derive(Debug, Clone)]
pub struct FaceStructure {
    /// Walk index per half-edge; `usize::MAX` for dead half-edges.
    pub face_of: Vec<usize>,
    pub faces: Vec<Vec<HalfEdgeId>>,
    /// Faces of the plane drawing: walks of different components that share
    /// the unbounded region are counted once, and an edgeless graph has one.
    pub face_count: usize,
}

impl FaceStructure {
    pub fn walk_count(&self) -> usize {
        self.faces.len()
    }
}

pub fn trace_faces(g: &PlanarGraph) -> Result<FaceStructure, GraphError> {
    let hn = 2 * g.edge_count();
    let mut face_of = vec![NONE; hn];
    let mut faces = Vec::new();
    for start in 0..hn {
        if face_of[start] != NONE || !g.is_alive(edge_of(start)) {
            continue;
        }
        let id = faces.len();
        let mut walk = Vec::new();
        let mut h = start;
        loop {
            if face_of[h] != NONE {
                return Err(GraphError::OpenFace(start));
            }
            face_of[h] = id;
            walk.push(h);
            h = g.rot_next(twin(h));
            if h == start {
                break;
            }
            if walk.len() > hn {
                return Err(GraphError::OpenFace(start));
            }
        }
        faces.push(walk);
    }
    let face_count = if faces.is_empty() {
        1
    } else {
        faces.len() + 1 - components_with_edges(g)
    };
    Ok(FaceStructure {
        face_of,
        faces,
        face_count,
    })
}

pub(crate) fn components_with_edges(g: &PlanarGraph) -> usize {
    let (label, _) = g.components();
    let mut marked = vec![false; g.vertex_count()];
    let mut count = 0;
    for v in 0..g.vertex_count() {
        if g.degree(v) > 0 && !marked[label[v]] {
            marked[label[v]] = true;
            count += 1;
        }
    }
    count
}

/// The dual of the embedding at the time of construction: one vertex per face
/// walk and one dual edge per alive primal edge joining the walks on its two
/// sides. Dead primal edges have no dual edge.
#[derive(Debug, Clone)]
pub struct DualGraph {
    pub vertex_count: usize,
    pub edges: Vec<Option<(usize, usize)>>,
}

impl DualGraph {
    pub fn dual_edge(&self, e: EdgeId) -> Option<(usize, usize)> {
        self.edges[e]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().count()
    }
}

pub fn build_dual(g: &PlanarGraph, f: &FaceStructure) -> DualGraph {
    let edges = (0..g.edge_count())
        .map(|e| g.is_alive(e).then(|| (f.face_of[2 * e], f.face_of[2 * e + 1])))
        .collect();
    DualGraph {
        vertex_count: f.walk_count(),
        edges,
    }
}

/// Number of connected components from Euler's formula `V - E + F = CC + 1`.
pub fn euler_components(v: usize, e_alive: usize, f: usize) -> Result<usize, GraphError> {
    let cc = v as i64 - e_alive as i64 + f as i64 - 1;
    if cc < 1 {
        return Err(GraphError::EulerInconsistent { v, e: e_alive, f });
    }
    Ok(cc as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{generate, GraphKind};

    #[test]
    fn triangle_has_two_faces() {
        let g = generate(GraphKind::Cycle, 3, 0).unwrap();
        let f = trace_faces(&g).unwrap();
        assert_eq!(f.face_count, 2);
        assert_eq!(f.walk_count(), 2);
        let d = build_dual(&g, &f);
        assert_eq!(d.vertex_count, 2);
        assert_eq!(d.edge_count(), 3);
        for e in 0..3 {
            let (a, b) = d.dual_edge(e).unwrap();
            assert_ne!(a, b);
        }
    }

    #[test]
    fn single_edge_has_one_face_and_a_dual_loop() {
        let g = generate(GraphKind::Path, 2, 0).unwrap();
        let f = trace_faces(&g).unwrap();
        assert_eq!(f.face_count, 1);
        assert_eq!(f.faces[0].len(), 2);
        let d = build_dual(&g, &f);
        assert_eq!(d.vertex_count, 1);
        assert_eq!(d.dual_edge(0), Some((0, 0)));
    }

    #[test]
    fn edgeless_graph_has_one_face() {
        let g = PlanarGraph::new(3);
        let f = trace_faces(&g).unwrap();
        assert_eq!(f.face_count, 1);
        assert_eq!(euler_components(3, 0, f.face_count).unwrap(), 3);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_components(3, 3, 2), Ok(1));
        assert_eq!(euler_components(3, 0, 1), Ok(3));
        assert_eq!(euler_components(4, 6, 4), Ok(1));
        assert!(euler_components(3, 5, 1).is_err());
    }

    #[test]
    fn disconnected_graph_shares_outer_face() {
        // two disjoint triangles: 4 walks, 3 plane faces
        let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        let rot = vec![
            vec![0, 2],
            vec![1, 0],
            vec![2, 1],
            vec![3, 5],
            vec![4, 3],
            vec![5, 4],
        ];
        let g = PlanarGraph::from_rotations(6, &edges, &rot).unwrap();
        let f = trace_faces(&g).unwrap();
        assert_eq!(f.walk_count(), 4);
        assert_eq!(f.face_count, 3);
        assert_eq!(euler_components(6, 6, f.face_count), Ok(2));
    }
}
