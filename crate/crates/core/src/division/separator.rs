//! Splitting one piece of a triangulated embedding with a fundamental-cycle
//! separator.

use std::collections::VecDeque;

use crate::planar::{edge_of, PlanarGraph};

const NONE: u32 = u32::MAX;

/// A piece: a set of vertices and edges of the augmented graph. Every vertex
/// is an endpoint of a piece edge unless the piece is a single vertex.
#[derive(Debug, Clone, Default)]
pub(crate) struct Piece {
    pub verts: Vec<u32>,
    pub edges: Vec<u32>,
}

/// Reusable global-to-local maps.
pub(crate) struct Scratch {
    loc: Vec<u32>,
    eloc: Vec<u32>,
    mark: Vec<u32>,
    stamp: u32,
}

impl Scratch {
    pub fn new(n: usize, m: usize) -> Self {
        Self {
            loc: vec![NONE; n],
            eloc: vec![NONE; m],
            mark: vec![0; n],
            stamp: 0,
        }
    }

    /// Piece made of `edges`, with their endpoints as vertices.
    pub fn piece_from_edges(&mut self, g: &PlanarGraph, edges: Vec<u32>) -> Piece {
        self.stamp += 1;
        let mut verts = Vec::new();
        for &e in &edges {
            let (a, b) = g.endpoints(e as usize);
            for x in [a, b] {
                if self.mark[x] != self.stamp {
                    self.mark[x] = self.stamp;
                    verts.push(x as u32);
                }
            }
        }
        Piece { verts, edges }
    }
}

/// Rotation system of one piece, with room for virtual hub vertices.
struct Local {
    real_v: usize,
    real_e: usize,
    head: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    first: Vec<u32>,
}

impl Local {
    fn tail(&self, h: usize) -> usize {
        self.head[h ^ 1] as usize
    }

    fn nv(&self) -> usize {
        self.first.len()
    }

    fn out(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let f = self.first[v];
        let mut h = f;
        let mut done = f == NONE;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = h as usize;
            h = self.next[cur];
            done = h == f;
            Some(cur)
        })
    }

    fn insert_after(&mut self, x: usize, y: usize) {
        let nx = self.next[x];
        self.next[y] = nx;
        self.prev[y] = x as u32;
        self.prev[nx as usize] = y as u32;
        self.next[x] = y as u32;
    }

    /// Face index per half-edge, face count, and one walk per face.
    fn faces(&self) -> (Vec<u32>, Vec<Vec<u32>>) {
        let mut face = vec![NONE; self.head.len()];
        let mut walks = Vec::new();
        for s in 0..self.head.len() {
            if face[s] != NONE {
                continue;
            }
            let id = walks.len() as u32;
            let mut walk = Vec::new();
            let mut h = s;
            while face[h] == NONE {
                face[h] = id;
                walk.push(h as u32);
                h = self.next[h ^ 1] as usize;
            }
            walks.push(walk);
        }
        (face, walks)
    }

    fn bfs(&self, root: usize, dist: &mut [u32], parent: &mut [u32]) -> Vec<usize> {
        dist.fill(NONE);
        dist[root] = 0;
        parent[root] = NONE;
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for h in self.out(v) {
                let w = self.head[h] as usize;
                if dist[w] == NONE {
                    dist[w] = dist[v] + 1;
                    parent[w] = h as u32;
                    order.push(w);
                }
            }
        }
        order
    }
}

fn build_local(g: &PlanarGraph, p: &Piece, s: &mut Scratch) -> Local {
    for (i, &v) in p.verts.iter().enumerate() {
        s.loc[v as usize] = i as u32;
    }
    for (k, &e) in p.edges.iter().enumerate() {
        s.eloc[e as usize] = k as u32;
    }
    let m = p.edges.len();
    let mut head = vec![0u32; 2 * m];
    for (k, &e) in p.edges.iter().enumerate() {
        let e = e as usize;
        head[2 * k] = s.loc[g.head(2 * e)];
        head[2 * k + 1] = s.loc[g.head(2 * e + 1)];
    }
    let mut next = vec![NONE; 2 * m];
    let mut prev = vec![NONE; 2 * m];
    let mut first = vec![NONE; p.verts.len()];
    let mut ring = Vec::new();
    for (i, &v) in p.verts.iter().enumerate() {
        ring.clear();
        for h in g.rotation(v as usize) {
            let k = s.eloc[edge_of(h)];
            if k != NONE {
                ring.push(2 * k + (h as u32 & 1));
            }
        }
        for j in 0..ring.len() {
            let a = ring[j] as usize;
            let b = ring[(j + 1) % ring.len()];
            next[a] = b;
            prev[b as usize] = a as u32;
        }
        if let Some(&h) = ring.first() {
            first[i] = h;
        }
    }
    for &v in &p.verts {
        s.loc[v as usize] = NONE;
    }
    for &e in &p.edges {
        s.eloc[e as usize] = NONE;
    }
    Local {
        real_v: p.verts.len(),
        real_e: m,
        head,
        next,
        prev,
        first,
    }
}

/// Connected components of a piece, as pieces.
fn components(l: &Local, p: &Piece) -> Vec<Piece> {
    let n = l.real_v;
    let mut comp = vec![NONE; n];
    let mut count = 0u32;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if comp[s] != NONE {
            continue;
        }
        comp[s] = count;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for h in l.out(v) {
                let w = l.head[h] as usize;
                if comp[w] == NONE {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    let mut out = vec![Piece::default(); count as usize];
    for (i, &v) in p.verts.iter().enumerate() {
        out[comp[i] as usize].verts.push(v);
    }
    for (k, &e) in p.edges.iter().enumerate() {
        out[comp[l.head[2 * k] as usize] as usize].edges.push(e);
    }
    out
}

/// Adds a hub vertex inside every face longer than three, joined to each
/// corner, so that every face becomes a triangle. Corners visited twice get
/// parallel spokes.
fn star_triangulate(l: &mut Local) {
    let (_, walks) = l.faces();
    for walk in walks.into_iter().filter(|w| w.len() > 3) {
        let hub = l.first.len();
        let k = walk.len();
        let base = l.head.len();
        for &h in &walk {
            let v = l.tail(h as usize);
            l.head.push(v as u32);
            l.head.push(hub as u32);
        }
        l.next.resize(base + 2 * k, NONE);
        l.prev.resize(base + 2 * k, NONE);
        for i in 0..k {
            let into = walk[(i + k - 1) % k] as usize ^ 1;
            l.insert_after(into, base + 2 * i + 1);
        }
        // Around the hub the spokes run against the walk direction.
        for i in 0..k {
            let a = base + 2 * i;
            let below = base + 2 * ((i + k - 1) % k);
            l.next[a] = below as u32;
            l.prev[below] = a as u32;
        }
        l.first.push(base as u32);
        debug_assert!({
            let step = |h: usize| l.next[h ^ 1] as usize;
            step(step(step(base))) == base
        });
    }
}

/// Splits a piece into at least two pieces whose edge sets partition the
/// piece's edges. A disconnected piece is split into its components;
/// otherwise a fundamental cycle of a BFS tree in the star-triangulated
/// piece separates the faces, balancing the total of `weight` over the two
/// sides while keeping the cycle short. Returns the piece unchanged when it
/// has fewer than two edges.
pub(crate) fn split_piece(
    g: &PlanarGraph,
    p: Piece,
    weight: &dyn Fn(u32) -> u64,
    s: &mut Scratch,
) -> Vec<Piece> {
    if p.edges.len() < 2 {
        return vec![p];
    }
    let mut l = build_local(g, &p, s);
    let comps = components(&l, &p);
    if comps.len() > 1 {
        return comps;
    }
    star_triangulate(&mut l);
    let nv = l.nv();
    let mut dist = vec![NONE; nv];
    let mut parent = vec![NONE; nv];

    // root at the middle of a long shortest path
    let order = l.bfs(0, &mut dist, &mut parent);
    let a = *order.last().unwrap();
    let order = l.bfs(a, &mut dist, &mut parent);
    let mut b = *order.last().unwrap();
    let mut path = vec![b];
    while parent[b] != NONE {
        b = l.tail(parent[b] as usize);
        path.push(b);
    }
    let root = path[path.len() / 2];
    let order = l.bfs(root, &mut dist, &mut parent);

    // depth counted in real vertices only
    let mut rdepth = vec![0u32; nv];
    let mut tree = vec![false; l.head.len() / 2];
    for &v in &order[1..] {
        let h = parent[v] as usize;
        tree[h / 2] = true;
        rdepth[v] = rdepth[l.tail(h)] + (v < l.real_v) as u32;
    }

    // cotree: duals of the non-tree edges, as CSR adjacency over faces
    let (face, walks) = l.faces();
    let fcount = walks.len();
    let mut deg = vec![0u32; fcount + 1];
    for k in (0..tree.len()).filter(|&k| !tree[k]) {
        deg[face[2 * k] as usize + 1] += 1;
        deg[face[2 * k + 1] as usize + 1] += 1;
    }
    for f in 0..fcount {
        deg[f + 1] += deg[f];
    }
    let mut adj = vec![0u32; deg[fcount] as usize];
    let mut fill = deg.clone();
    for k in (0..tree.len()).filter(|&k| !tree[k]) {
        for x in [2 * k, 2 * k + 1] {
            let f = face[x] as usize;
            adj[fill[f] as usize] = k as u32;
            fill[f] += 1;
        }
    }
    let mut pedge = vec![NONE; fcount];
    let mut pface = vec![NONE; fcount];
    let mut fseen = vec![false; fcount];
    let mut forder = vec![0usize];
    fseen[0] = true;
    let mut i = 0;
    while i < forder.len() {
        let f = forder[i];
        i += 1;
        for &k in &adj[deg[f] as usize..deg[f + 1] as usize] {
            let k = k as usize;
            let other = if face[2 * k] as usize == f {
                face[2 * k + 1]
            } else {
                face[2 * k]
            } as usize;
            if !fseen[other] {
                fseen[other] = true;
                pedge[other] = k as u32;
                pface[other] = f as u32;
                forder.push(other);
            }
        }
    }

    // each real vertex's weight sits on one incident face
    let mut sub = vec![0u64; fcount];
    let mut total = 0u64;
    for (v, &gv) in p.verts.iter().enumerate() {
        let w = weight(gv);
        sub[face[l.first[v] as usize] as usize] += w;
        total += w;
    }
    for &f in forder.iter().rev() {
        if pface[f] != NONE {
            sub[pface[f] as usize] += sub[f];
        }
    }

    let mut best: Option<(bool, u64, u32, usize)> = None;
    for &f in &forder[1..] {
        let k = pedge[f] as usize;
        let side = sub[f];
        let big = side.max(total - side);
        let balanced = 3 * big <= 2 * total;
        let len = rdepth[l.tail(2 * k)] + rdepth[l.head[2 * k] as usize];
        let better = match best {
            None => true,
            Some((bb, bbig, blen, _)) => {
                if balanced != bb {
                    balanced
                } else if balanced {
                    (len, big) < (blen, bbig)
                } else {
                    (big, len) < (bbig, blen)
                }
            }
        };
        if better {
            best = Some((balanced, big, len, f));
        }
    }

    let mut side_a = vec![false; l.real_e];
    let mut split_ok = false;
    if let Some((_, _, _, c)) = best {
        let mut in_a = vec![false; fcount];
        for &f in &forder {
            in_a[f] = f == c || (pface[f] != NONE && in_a[pface[f] as usize]);
        }
        let mut na = 0;
        for k in 0..l.real_e {
            side_a[k] = in_a[face[2 * k] as usize] || in_a[face[2 * k + 1] as usize];
            na += side_a[k] as usize;
        }
        split_ok = na > 0 && na < l.real_e;
    }
    if !split_ok {
        fallback_split(&l, &mut side_a);
    }
    let (mut ea, mut eb) = (Vec::new(), Vec::new());
    for (k, &e) in p.edges.iter().enumerate() {
        if side_a[k] {
            ea.push(e);
        } else {
            eb.push(e);
        }
    }
    vec![s.piece_from_edges(g, ea), s.piece_from_edges(g, eb)]
}

/// Splits by BFS order over the real edges; used when no cycle separates.
fn fallback_split(l: &Local, side_a: &mut [bool]) {
    let mut rank = vec![NONE; l.real_v];
    let mut order = vec![0usize];
    rank[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for h in l.out(v) {
            if h / 2 >= l.real_e {
                continue;
            }
            let w = l.head[h] as usize;
            if rank[w] == NONE {
                rank[w] = order.len() as u32;
                order.push(w);
            }
        }
    }
    let half = (l.real_v / 2) as u32;
    let mut na = 0;
    for k in 0..l.real_e {
        let lo = rank[l.head[2 * k] as usize].min(rank[l.head[2 * k + 1] as usize]);
        side_a[k] = lo < half;
        na += side_a[k] as usize;
    }
    if na == 0 || na == l.real_e {
        for (k, x) in side_a.iter_mut().enumerate() {
            *x = k < l.real_e / 2;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{augment_biconnect_triangulate, generate, GraphKind};

    fn whole(g: &PlanarGraph, s: &mut Scratch) -> Piece {
        s.piece_from_edges(g, g.alive_edges().map(|e| e as u32).collect())
    }

    #[test]
    fn hubs_make_triangles() {
        let g = generate(GraphKind::Grid, 25, 0).unwrap();
        let mut s = Scratch::new(25, g.edge_count());
        let p = whole(&g, &mut s);
        let mut l = build_local(&g, &p, &mut s);
        star_triangulate(&mut l);
        let (_, walks) = l.faces();
        assert!(walks.iter().all(|w| w.len() == 3));
        // one hub per inner square plus one for the outer face
        assert_eq!(l.nv(), 25 + 16 + 1);
        let v = l.nv() as i64;
        let e = (l.head.len() / 2) as i64;
        assert_eq!(v - e + walks.len() as i64, 2);
    }

    #[test]
    fn split_partitions_edges() {
        for (kind, n) in [
            (GraphKind::Grid, 400),
            (GraphKind::StackedTriangulation, 300),
            (GraphKind::Path, 50),
            (GraphKind::Cycle, 40),
        ] {
            let g0 = generate(kind, n, 1).unwrap();
            let (g, _) = augment_biconnect_triangulate(&g0);
            let mut s = Scratch::new(n, g.edge_count());
            let p = whole(&g, &mut s);
            let m = p.edges.len();
            let parts = split_piece(&g, p, &|_| 1, &mut s);
            assert_eq!(parts.len(), 2);
            let mut all: Vec<u32> = parts.iter().flat_map(|q| q.edges.clone()).collect();
            all.sort();
            assert_eq!(all, (0..m as u32).collect::<Vec<_>>());
            for q in &parts {
                assert!(q.verts.len() * 10 <= n * 8, "{kind}: side of {} from {n}", q.verts.len());
            }
        }
    }

    #[test]
    fn disconnected_piece_splits_into_components() {
        let g = PlanarGraph::from_rotations(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
            &[vec![0, 2], vec![1, 0], vec![2, 1], vec![3, 5], vec![4, 3], vec![5, 4]],
        )
        .unwrap();
        let mut s = Scratch::new(6, 6);
        let p = whole(&g, &mut s);
        let parts = split_piece(&g, p, &|_| 1, &mut s);
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|q| q.verts.len() == 3 && q.edges.len() == 3));
    }
}
