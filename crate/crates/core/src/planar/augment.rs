use std::collections::HashSet;

use super::{trace_faces, twin, PlanarGraph};
use crate::EdgeId;

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Adds edges until the graph is connected, simple and every face is a
/// triangle (which also makes it biconnected for `n >= 3`). Returns the
/// augmented graph and the ids of the new edges; original edge ids and their
/// relative rotation order are preserved, so deleting `added` restores the
/// input exactly.
///
/// Components are first chained to the component of vertex 0. Each face walk
/// longer than three is then cut down by ears: at walk position `v_i` the
/// chord `v_i v_{i+2}` is inserted inside the face whenever it is not a loop
/// and not already an edge.
pub fn augment_biconnect_triangulate(g: &PlanarGraph) -> (PlanarGraph, Vec<EdgeId>) {
    let mut out = g.clone();
    let first_new = out.edge_count();
    let n = out.vertex_count();
    if n <= 1 {
        return (out, Vec::new());
    }

    let (label, _) = out.components();
    let anchor = label[0];
    for v in 0..n {
        if label[v] == v && v != anchor {
            out.add_edge(anchor, v, None, None);
        }
    }

    let mut adj: HashSet<(usize, usize)> = out
        .alive_edges()
        .map(|e| {
            let (a, b) = out.endpoints(e);
            key(a, b)
        })
        .collect();

    let faces = trace_faces(&out).expect("augmentation input must be a valid embedding");
    for walk in faces.faces {
        if walk.len() <= 3 {
            continue;
        }
        triangulate_face(&mut out, &mut adj, walk);
    }
    let added = (first_new..out.edge_count()).collect();
    (out, added)
}

fn triangulate_face(g: &mut PlanarGraph, adj: &mut HashSet<(usize, usize)>, hs: Vec<usize>) {
    let mut hs = hs;
    let k = hs.len();
    let mut nxt: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    let mut prv: Vec<usize> = (0..k).map(|i| (i + k - 1) % k).collect();
    let mut len = k;
    let mut cur = 0;
    let mut fails = 0;
    while len > 3 {
        let x = hs[cur];
        let yi = nxt[cur];
        let y = hs[yi];
        let w = hs[prv[cur]];
        let a = g.tail(x);
        let c = g.head(y);
        if a != c && !adj.contains(&key(a, c)) {
            let e = g.add_edge(c, a, Some(twin(y)), Some(twin(w)));
            adj.insert(key(a, c));
            hs[cur] = 2 * e + 1;
            let zi = nxt[yi];
            nxt[cur] = zi;
            prv[zi] = cur;
            len -= 1;
            fails = 0;
        } else {
            cur = nxt[cur];
            fails += 1;
            assert!(fails <= len, "no admissible ear in a face of length {len}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{generate, GraphKind};
    use crate::rng::{seeded_rng, Stream};
    use rand::seq::SliceRandom;

    fn check_triangulated(g: &PlanarGraph) {
        g.validate().unwrap();
        let f = trace_faces(g).unwrap();
        if g.vertex_count() >= 3 {
            assert!(f.faces.iter().all(|w| w.len() == 3));
            assert_eq!(g.alive_edge_count(), 3 * g.vertex_count() - 6);
        }
        let mut pairs = HashSet::new();
        for e in g.alive_edges() {
            let (a, b) = g.endpoints(e);
            assert_ne!(a, b);
            assert!(pairs.insert(key(a, b)), "parallel edge {a}-{b}");
        }
        assert_eq!(g.components().1, 1);
    }

    fn biconnected(g: &PlanarGraph) -> bool {
        (0..g.vertex_count()).all(|cut| {
            let mut h = g.clone();
            let incident: Vec<_> = h.rotation(cut).map(super::super::edge_of).collect();
            for e in incident {
                h.delete_edge(e);
            }
            h.components().1 == 2
        })
    }

    #[test]
    fn triangle_unchanged() {
        let g = generate(GraphKind::Cycle, 3, 0).unwrap();
        let (out, added) = augment_biconnect_triangulate(&g);
        assert!(added.is_empty());
        assert_eq!(out, g);
    }

    #[test]
    fn path_becomes_triangle() {
        let g = generate(GraphKind::Path, 3, 0).unwrap();
        let (out, added) = augment_biconnect_triangulate(&g);
        assert_eq!(added.len(), 1);
        assert_eq!(key(out.endpoints(added[0]).0, out.endpoints(added[0]).1), (0, 2));
        check_triangulated(&out);
    }

    #[test]
    fn two_triangles_restore_exactly() {
        let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        let rot = vec![vec![0, 2], vec![1, 0], vec![2, 1], vec![3, 5], vec![4, 3], vec![5, 4]];
        let g = PlanarGraph::from_rotations(6, &edges, &rot).unwrap();
        let (mut out, added) = augment_biconnect_triangulate(&g);
        check_triangulated(&out);
        assert!(biconnected(&out));
        for e in added {
            out.delete_edge(e);
        }
        let before: HashSet<_> = g.alive_edges().map(|e| g.endpoints(e)).collect();
        let after: HashSet<_> = out.alive_edges().map(|e| out.endpoints(e)).collect();
        assert_eq!(before, after);
        out.validate().unwrap();
    }

    #[test]
    fn random_subgraphs_triangulate() {
        let mut rng = seeded_rng(11, Stream::Test);
        for trial in 0..150 {
            let kind = GraphKind::ALL[trial % 4];
            let n = 3 + trial % 60;
            let mut g = generate(kind, n, trial as u64).unwrap();
            let mut ids: Vec<_> = g.alive_edges().collect();
            ids.shuffle(&mut rng);
            let drop = ids.len() * (trial % 5) / 5;
            for &e in &ids[..drop] {
                g.delete_edge(e);
            }
            let (out, added) = augment_biconnect_triangulate(&g);
            check_triangulated(&out);
            if n <= 20 {
                assert!(biconnected(&out));
            }
            for e in g.alive_edges() {
                assert!(out.is_alive(e));
                assert_eq!(out.endpoints(e), g.endpoints(e));
            }
            assert!(added.iter().all(|&e| e >= g.edge_count()));
        }
    }

    #[test]
    fn stars_and_isolated_vertices() {
        let star = PlanarGraph::from_rotations(
            6,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)],
            &[vec![0, 1, 2, 3, 4], vec![0], vec![1], vec![2], vec![3], vec![4]],
        )
        .unwrap();
        check_triangulated(&augment_biconnect_triangulate(&star).0);
        check_triangulated(&augment_biconnect_triangulate(&PlanarGraph::new(7)).0);
    }
}
