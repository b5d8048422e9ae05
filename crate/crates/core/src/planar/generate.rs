use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::PlanarGraph;
use crate::error::GraphError;
use crate::rng::{seeded_rng, Stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Grid,
    StackedTriangulation,
    Cycle,
    Path,
}

impl GraphKind {
    pub const ALL: [GraphKind; 4] = [
        GraphKind::Grid,
        GraphKind::StackedTriangulation,
        GraphKind::Cycle,
        GraphKind::Path,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Grid => "grid",
            GraphKind::StackedTriangulation => "stacked_triangulation",
            GraphKind::Cycle => "cycle",
            GraphKind::Path => "path",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            GraphKind::Grid | GraphKind::Path => 1,
            GraphKind::StackedTriangulation | GraphKind::Cycle => 3,
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "grid" => Ok(GraphKind::Grid),
            "stacked_triangulation" | "stacked" => Ok(GraphKind::StackedTriangulation),
            "cycle" => Ok(GraphKind::Cycle),
            "path" => Ok(GraphKind::Path),
            other => Err(format!("unknown graph kind `{other}`")),
        }
    }
}

/// Generates an embedded planar graph on exactly `n` vertices.
///
/// `Grid` lays vertices out row-major on a `ceil(sqrt n)`-wide grid (the last
/// row may be partial). `StackedTriangulation` starts from a triangle and
/// repeatedly inserts a vertex into a uniformly random face, joining it to
/// the three corners of that face.
pub fn generate(kind: GraphKind, n: usize, seed: u64) -> Result<PlanarGraph, GraphError> {
    if n < kind.min_n() {
        return Err(GraphError::TooSmall {
            kind: kind.name(),
            min: kind.min_n(),
            n,
        });
    }
    Ok(match kind {
        GraphKind::Grid => grid(n),
        GraphKind::Cycle => cycle(n),
        GraphKind::Path => path(n),
        GraphKind::StackedTriangulation => stacked(n, seed),
    })
}

fn grid(n: usize) -> PlanarGraph {
    let w = (n as f64).sqrt().ceil() as usize;
    let w = w.max(1);
    let at = |r: usize, c: usize| -> Option<usize> {
        let i = r * w + c;
        (c < w && i < n).then_some(i)
    };
    let mut edges = Vec::new();
    let mut right = vec![usize::MAX; n];
    let mut down = vec![usize::MAX; n];
    for i in 0..n {
        let (r, c) = (i / w, i % w);
        if let Some(j) = at(r, c + 1) {
            right[i] = edges.len();
            edges.push((i, j));
        }
        if let Some(j) = at(r + 1, c) {
            down[i] = edges.len();
            edges.push((i, j));
        }
    }
    let mut rot = vec![Vec::with_capacity(4); n];
    for i in 0..n {
        let (r, c) = (i / w, i % w);
        // counterclockwise with rows growing downwards: east, north, west, south
        if right[i] != usize::MAX {
            rot[i].push(right[i]);
        }
        if r > 0 {
            rot[i].push(down[i - w]);
        }
        if c > 0 {
            rot[i].push(right[i - 1]);
        }
        if down[i] != usize::MAX {
            rot[i].push(down[i]);
        }
    }
    PlanarGraph::from_rotations(n, &edges, &rot).expect("grid embedding is planar")
}

fn cycle(n: usize) -> PlanarGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let rot: Vec<_> = (0..n).map(|i| vec![i, (i + n - 1) % n]).collect();
    PlanarGraph::from_rotations(n, &edges, &rot).expect("cycle embedding is planar")
}

fn path(n: usize) -> PlanarGraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    let rot: Vec<_> = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i + 1 < n {
                r.push(i);
            }
            if i > 0 {
                r.push(i - 1);
            }
            r
        })
        .collect();
    PlanarGraph::from_rotations(n, &edges, &rot).expect("path embedding is planar")
}

fn stacked(n: usize, seed: u64) -> PlanarGraph {
    let mut rng = seeded_rng(seed, Stream::Generator);
    let mut rot = vec![Vec::new(); n];
    rot[0] = vec![0, 2];
    rot[1] = vec![1, 0];
    rot[2] = vec![2, 1];
    let mut g = PlanarGraph::from_rotations(n, &[(0, 1), (1, 2), (2, 0)], &rot).expect("triangle");
    // A face is stored as its three half-edges (a->b, b->c, c->a); a new
    // vertex is attached at `a` right after a->b, and so on.
    let mut faces: Vec<[usize; 3]> = vec![[0, 2, 4], [5, 3, 1]];
    for x in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [h0, h1, h2] = faces[i];
        let (a, b, c) = (g.tail(h0), g.tail(h1), g.tail(h2));
        let ea = g.add_edge(a, x, Some(h0), None);
        let eb = g.add_edge(b, x, Some(h1), Some(2 * ea + 1));
        let ec = g.add_edge(c, x, Some(h2), Some(2 * eb + 1));
        faces[i] = [h0, 2 * eb, 2 * ea + 1];
        faces.push([h1, 2 * ec, 2 * eb + 1]);
        faces.push([h2, 2 * ea, 2 * ec + 1]);
    }
    g
}
