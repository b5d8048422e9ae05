use super::{edge_of, PlanarGraph};
use crate::VertexId;

/// Correspondence between the vertices of a graph and its degree-reduced
/// expansion. Original vertex `v` keeps id `v` in the expansion and is the
/// first entry of `forward[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    pub forward: Vec<Vec<VertexId>>,
    pub back: Vec<VertexId>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        Self {
            forward: (0..n).map(|v| vec![v]).collect(),
            back: (0..n).collect(),
        }
    }

    pub fn original_count(&self) -> usize {
        self.forward.len()
    }

    pub fn is_identity(&self) -> bool {
        self.back.len() == self.forward.len()
    }
}

/// Replaces every vertex of degree `d > 3` by a path of `d - 2` copies
/// threaded through its rotation: the first copy takes the first two edges,
/// the last copy the last two, and each copy in between the next one. The path edges
/// are appended after the original edge ids and marked undeletable, so the
/// connectivity of original ids is unchanged under any deletion sequence of
/// deletable edges. Every vertex of the result has degree at most 3.
///
/// The input must not contain deleted edges.
pub fn reduce_degree(g: &PlanarGraph) -> (PlanarGraph, VertexMap) {
    assert_eq!(
        g.alive_edge_count(),
        g.edge_count(),
        "degree reduction expects a graph without deleted edges"
    );
    let n = g.vertex_count();
    let m = g.edge_count();
    if g.max_degree() <= 3 {
        return (g.clone(), VertexMap::identity(n));
    }

    let mut forward: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
    let mut back: Vec<VertexId> = (0..n).collect();
    // owner of each half-edge's tail in the expansion
    let mut owner: Vec<VertexId> = (0..2 * m).map(|h| g.tail(h)).collect();
    let mut path_edges: Vec<(VertexId, VertexId)> = Vec::new();
    // rotation of each expanded vertex as a list of "slots": original
    // half-edges or ends of path edges
    enum Slot {
        Half(usize),
        PathFrom(usize),
        PathTo(usize),
    }
    let mut slots: Vec<Vec<Slot>> = (0..n).map(|_| Vec::new()).collect();

    for v in 0..n {
        let hs: Vec<usize> = g.rotation(v).collect();
        let d = hs.len();
        if d <= 3 {
            slots[v] = hs.into_iter().map(Slot::Half).collect();
            continue;
        }
        let k = d - 2;
        let mut copies = vec![v];
        for _ in 1..k {
            let c = back.len();
            back.push(v);
            slots.push(Vec::new());
            copies.push(c);
        }
        let base = path_edges.len();
        for j in 0..k - 1 {
            path_edges.push((copies[j], copies[j + 1]));
        }
        for (j, &c) in copies.iter().enumerate() {
            let mut s = Vec::with_capacity(3);
            let own: &[usize] = if j == 0 {
                &hs[0..2]
            } else if j == k - 1 {
                &hs[d - 2..d]
            } else {
                &hs[j + 1..j + 2]
            };
            for &h in own {
                owner[h] = c;
                s.push(Slot::Half(h));
            }
            if j + 1 < k {
                s.push(Slot::PathFrom(base + j));
            }
            if j > 0 {
                s.push(Slot::PathTo(base + j - 1));
            }
            slots[c] = s;
        }
        forward[v] = copies;
    }

    let total = back.len();
    let mut edges = Vec::with_capacity(m + path_edges.len());
    for e in 0..m {
        edges.push((owner[2 * e], owner[2 * e + 1]));
    }
    edges.extend(path_edges.iter().copied());
    let rot: Vec<Vec<usize>> = slots
        .iter()
        .map(|s| {
            s.iter()
                .map(|slot| match *slot {
                    Slot::Half(h) => edge_of(h),
                    Slot::PathFrom(p) | Slot::PathTo(p) => m + p,
                })
                .collect()
        })
        .collect();
    let mut out = PlanarGraph::from_rotations(total, &edges, &rot)
        .expect("vertex expansion preserves planarity");
    for e in m..out.edge_count() {
        out.set_deletable(e, false);
    }
    (out, VertexMap { forward, back })
}
