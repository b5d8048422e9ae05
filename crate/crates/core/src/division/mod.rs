//! r-divisions: partitions of the edges into regions of at most `r` vertices
//! with few boundary vertices each.
//!
//! The builder triangulates the graph, splits pieces with cycle separators
//! until they are small enough and their boundaries short enough, greedily
//! merges neighbouring pieces back together, and finally drops the edges
//! added by the triangulation.

mod separator;

use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::error::DcError;
use crate::planar::{augment_biconnect_triangulate, PlanarGraph};
use crate::{EdgeId, VertexId};
use separator::{split_piece, Piece, Scratch};

/// Region count constant: at most `max(1, ceil(C_REGIONS * n / r))` regions.
pub const C_REGIONS: f64 = 8.0;
/// Per-region boundary constant: at most `C_BOUNDARY * sqrt(r)`.
pub const C_BOUNDARY: f64 = 8.0;
/// Total boundary constant: at most `C_TOTAL * n / sqrt(r)` distinct
/// boundary vertices.
pub const C_TOTAL: f64 = 8.0;

pub fn region_limit(n: usize, r: usize) -> usize {
    ((C_REGIONS * n as f64 / r as f64).ceil() as usize).max(1)
}

pub fn boundary_limit(r: usize) -> usize {
    (C_BOUNDARY * (r as f64).sqrt()).floor() as usize
}

pub fn total_boundary_limit(n: usize, r: usize) -> usize {
    (C_TOTAL * n as f64 / (r as f64).sqrt()).floor() as usize
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub boundary: Vec<VertexId>,
}

#[derive(Debug, Clone)]
pub struct Division {
    pub n: usize,
    pub r: usize,
    pub regions: Vec<Region>,
    /// Regions containing each vertex.
    pub regions_of: Vec<SmallVec<[u32; 3]>>,
}

impl Division {
    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.regions_of[v].len() > 1
    }

    pub fn boundary_vertices(&self) -> Vec<VertexId> {
        (0..self.n).filter(|&v| self.is_boundary(v)).collect()
    }

    fn from_regions(n: usize, r: usize, mut regions: Vec<Region>) -> Self {
        regions.retain(|reg| !reg.vertices.is_empty());
        let mut regions_of: Vec<SmallVec<[u32; 3]>> = vec![SmallVec::new(); n];
        for (i, reg) in regions.iter_mut().enumerate() {
            reg.vertices.sort_unstable();
            reg.edges.sort_unstable();
            for &v in &reg.vertices {
                regions_of[v].push(i as u32);
            }
        }
        for reg in regions.iter_mut() {
            reg.boundary = reg
                .vertices
                .iter()
                .copied()
                .filter(|&v| regions_of[v].len() > 1)
                .collect();
        }
        Self {
            n,
            r,
            regions,
            regions_of,
        }
    }
}

/// Builds an r-division of the alive edges of `g`.
pub fn build(g: &PlanarGraph, r: usize) -> Result<Division, DcError> {
    if r < 2 {
        return Err(DcError::Division(format!("r = {r} is below 2")));
    }
    let n = g.vertex_count();
    if n <= r {
        let region = Region {
            vertices: (0..n).collect(),
            edges: g.alive_edges().collect(),
            boundary: Vec::new(),
        };
        return Ok(Division::from_regions(n, r, vec![region]));
    }
    let budget = boundary_limit(r);
    let (ga, _) = augment_biconnect_triangulate(g);
    let mut scratch = Scratch::new(n, ga.edge_count());
    let all = scratch.piece_from_edges(&ga, ga.alive_edges().map(|e| e as u32).collect());

    // small enough
    let mut stack = vec![all];
    let mut pieces = Vec::new();
    while let Some(p) = stack.pop() {
        if p.verts.len() > r && p.edges.len() > 1 {
            stack.extend(split_piece(&ga, p, &|_| 1, &mut scratch));
        } else {
            pieces.push(p);
        }
    }

    // short boundaries
    let mut count = vec![0u32; n];
    for p in &pieces {
        for &v in &p.verts {
            count[v as usize] += 1;
        }
    }
    let mut queue = pieces;
    let mut pieces = Vec::new();
    while let Some(p) = queue.pop() {
        let bc = p.verts.iter().filter(|&&v| count[v as usize] > 1).count();
        if bc > budget && p.edges.len() > 1 {
            for &v in &p.verts {
                count[v as usize] -= 1;
            }
            let parts = {
                let c = &count;
                split_piece(&ga, p, &|v| (c[v as usize] > 0) as u64, &mut scratch)
            };
            for q in parts {
                for &v in &q.verts {
                    count[v as usize] += 1;
                }
                queue.push(q);
            }
        } else {
            pieces.push(p);
        }
    }

    let bins = merge_pieces(n, r, budget, pieces);
    Ok(finalize(g, r, &bins))
}

struct Bins {
    verts: Vec<Vec<u32>>,
    edges: Vec<Vec<u32>>,
    bnd: Vec<Vec<u32>>,
    alive: Vec<bool>,
    of: Vec<SmallVec<[u32; 4]>>,
}

impl Bins {
    fn new(n: usize, pieces: Vec<Piece>) -> Self {
        let mut of: Vec<SmallVec<[u32; 4]>> = vec![SmallVec::new(); n];
        for (i, p) in pieces.iter().enumerate() {
            for &v in &p.verts {
                of[v as usize].push(i as u32);
            }
        }
        let bnd = pieces
            .iter()
            .map(|p| {
                p.verts
                    .iter()
                    .copied()
                    .filter(|&v| of[v as usize].len() > 1)
                    .collect()
            })
            .collect();
        let alive = vec![true; pieces.len()];
        let (verts, edges) = pieces.into_iter().map(|p| (p.verts, p.edges)).unzip();
        Self {
            verts,
            edges,
            bnd,
            alive,
            of,
        }
    }

    fn shared(&self, b: usize, p: usize) -> usize {
        self.bnd[p]
            .iter()
            .filter(|&&v| self.of[v as usize].contains(&(b as u32)))
            .count()
    }

    /// Vertex and boundary counts of the union of bins `b` and `p`.
    fn eval(&self, b: usize, p: usize) -> (usize, usize) {
        let (bu, pu) = (b as u32, p as u32);
        let size = self.verts[b].len() + self.verts[p].len() - self.shared(b, p);
        let from_b = self.bnd[b]
            .iter()
            .filter(|&&v| self.of[v as usize].iter().any(|&x| x != bu && x != pu))
            .count();
        let from_p = self.bnd[p]
            .iter()
            .filter(|&&v| !self.of[v as usize].contains(&bu))
            .count();
        (size, from_b + from_p)
    }

    /// Moves bin `p` into bin `b`.
    fn merge(&mut self, b: usize, p: usize) {
        let (bu, pu) = (b as u32, p as u32);
        let pv = std::mem::take(&mut self.verts[p]);
        for &v in &pv {
            let of = &mut self.of[v as usize];
            let had_b = of.contains(&bu);
            of.retain(|x| *x != pu);
            if !had_b {
                of.push(bu);
                self.verts[b].push(v);
            }
        }
        let pe = std::mem::take(&mut self.edges[p]);
        self.edges[b].extend(pe);
        let mut cand = std::mem::take(&mut self.bnd[b]);
        cand.extend(std::mem::take(&mut self.bnd[p]));
        cand.sort_unstable();
        cand.dedup();
        cand.retain(|&v| self.of[v as usize].len() > 1);
        self.bnd[b] = cand;
        self.alive[p] = false;
    }
}

fn merge_pieces(n: usize, r: usize, budget: usize, pieces: Vec<Piece>) -> Bins {
    let mut bins = Bins::new(n, pieces);
    let k = bins.alive.len();

    // neighbours first: merging along shared vertices also removes boundary
    for _ in 0..16 {
        let mut merged = false;
        for p in 0..k {
            if !bins.alive[p] {
                continue;
            }
            let mut near: Vec<u32> = bins.bnd[p]
                .iter()
                .flat_map(|&v| bins.of[v as usize].iter().copied())
                .filter(|&q| q as usize != p)
                .collect();
            near.sort_unstable();
            near.dedup();
            let mut best: Option<(usize, usize, usize)> = None;
            for q in near {
                let q = q as usize;
                let (size, bc) = bins.eval(q, p);
                if size > r || bc > budget {
                    continue;
                }
                let shared = bins.verts[q].len() + bins.verts[p].len() - size;
                if best.is_none_or(|(s, sz, _)| (shared, usize::MAX - size) > (s, usize::MAX - sz)) {
                    best = Some((shared, size, q));
                }
            }
            if let Some((_, _, q)) = best {
                bins.merge(q, p);
                merged = true;
            }
        }
        if !merged {
            break;
        }
    }

    // then first-fit packing on conservative sums
    let mut order: Vec<usize> = (0..k).filter(|&i| bins.alive[i]).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(bins.verts[i].len()));
    let mut packs: Vec<(usize, usize, usize)> = Vec::new();
    for i in order {
        let (s, b) = (bins.verts[i].len(), bins.bnd[i].len());
        match packs
            .iter_mut()
            .find(|(ps, pb, _)| *ps + s <= r && *pb + b <= budget)
        {
            Some(pack) => {
                pack.0 += s;
                pack.1 += b;
                let rep = pack.2;
                bins.merge(rep, i);
            }
            None => packs.push((s, b, i)),
        }
    }
    bins
}

fn finalize(g: &PlanarGraph, r: usize, bins: &Bins) -> Division {
    let n = g.vertex_count();
    let m0 = g.edge_count();
    let mut home = vec![u32::MAX; n];
    let mut regions = Vec::new();
    let mut mark = vec![u32::MAX; n];
    for (i, edges) in bins.edges.iter().enumerate() {
        if !bins.alive[i] {
            continue;
        }
        let id = regions.len() as u32;
        let mut reg = Region {
            vertices: Vec::new(),
            edges: Vec::new(),
            boundary: Vec::new(),
        };
        for &e in edges {
            let e = e as usize;
            if e >= m0 {
                continue;
            }
            reg.edges.push(e);
            let (a, b) = g.endpoints(e);
            for x in [a, b] {
                if mark[x] != id {
                    mark[x] = id;
                    reg.vertices.push(x);
                }
            }
        }
        for &v in &bins.verts[i] {
            let v = v as usize;
            if g.degree(v) == 0 && home[v] == u32::MAX {
                home[v] = id;
                reg.vertices.push(v);
            }
        }
        regions.push(reg);
    }
    Division::from_regions(n, r, regions)
}

/// Summary of a checked division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisionStats {
    pub regions: usize,
    pub max_vertices: usize,
    pub max_boundary: usize,
    pub total_boundary: usize,
}

/// Verifies edge-disjointness, coverage and the size bounds.
pub fn check(g: &PlanarGraph, d: &Division) -> Result<DivisionStats, String> {
    let n = g.vertex_count();
    let r = d.r;
    if d.n != n || d.regions_of.len() != n {
        return Err(format!("division is for {} vertices, graph has {n}", d.n));
    }
    let mut owner = vec![usize::MAX; g.edge_count()];
    let mut seen_in = vec![0usize; n];
    for (i, reg) in d.regions.iter().enumerate() {
        let mut present = std::collections::HashSet::with_capacity(reg.vertices.len());
        for &v in &reg.vertices {
            if v >= n || !present.insert(v) {
                return Err(format!("region {i}: bad or repeated vertex {v}"));
            }
            seen_in[v] += 1;
            if !d.regions_of[v].contains(&(i as u32)) {
                return Err(format!("region {i}: vertex {v} missing from its region list"));
            }
        }
        for &e in &reg.edges {
            if e >= g.edge_count() || !g.is_alive(e) {
                return Err(format!("region {i}: edge {e} is not an alive edge"));
            }
            if owner[e] != usize::MAX {
                return Err(format!("edge {e} in regions {} and {i}", owner[e]));
            }
            owner[e] = i;
            let (a, b) = g.endpoints(e);
            if !present.contains(&a) || !present.contains(&b) {
                return Err(format!("region {i}: edge {e} has an endpoint outside"));
            }
        }
        if reg.vertices.len() > r {
            return Err(format!("region {i}: {} vertices > r = {r}", reg.vertices.len()));
        }
        let expected: Vec<_> = reg
            .vertices
            .iter()
            .copied()
            .filter(|&v| d.regions_of[v].len() > 1)
            .collect();
        if reg.boundary != expected {
            return Err(format!("region {i}: boundary list is inconsistent"));
        }
        if reg.boundary.len() > boundary_limit(r) {
            return Err(format!(
                "region {i}: {} boundary vertices > {}",
                reg.boundary.len(),
                boundary_limit(r)
            ));
        }
    }
    if let Some(e) = g.alive_edges().find(|&e| owner[e] == usize::MAX) {
        return Err(format!("edge {e} is in no region"));
    }
    for v in 0..n {
        if seen_in[v] == 0 {
            return Err(format!("vertex {v} is in no region"));
        }
        if seen_in[v] != d.regions_of[v].len() {
            return Err(format!("vertex {v}: region list is inconsistent"));
        }
    }
    if d.regions.len() > region_limit(n, r) {
        return Err(format!(
            "{} regions > {}",
            d.regions.len(),
            region_limit(n, r)
        ));
    }
    let total = d.boundary_vertices().len();
    if total > total_boundary_limit(n, r) {
        return Err(format!(
            "{total} boundary vertices > {}",
            total_boundary_limit(n, r)
        ));
    }
    Ok(DivisionStats {
        regions: d.regions.len(),
        max_vertices: d.regions.iter().map(|x| x.vertices.len()).max().unwrap_or(0),
        max_boundary: d.regions.iter().map(|x| x.boundary.len()).max().unwrap_or(0),
        total_boundary: total,
    })
}

/// Text dump: a header line, then one line per region.
pub fn dump(d: &Division) -> String {
    let mut s = format!("division n {} r {} regions {}\n", d.n, d.r, d.regions.len());
    let join = |xs: &[usize]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    for (i, reg) in d.regions.iter().enumerate() {
        writeln!(
            s,
            "region {i} vertices {} | boundary {} | edges {}",
            join(&reg.vertices),
            join(&reg.boundary),
            join(&reg.edges)
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{generate, reduce_degree, GraphKind};

    fn log_sq(n: usize) -> usize {
        let l = (n as f64).log2();
        (l * l).ceil() as usize
    }

    #[test]
    fn small_graph_is_one_region() {
        let g = generate(GraphKind::Cycle, 5, 0).unwrap();
        let d = build(&g, 10).unwrap();
        assert_eq!(d.regions.len(), 1);
        assert!(d.boundary_vertices().is_empty());
        check(&g, &d).unwrap();
    }

    #[test]
    fn grid_division_is_valid() {
        let g = generate(GraphKind::Grid, 2500, 0).unwrap();
        let r = log_sq(2500);
        let d = build(&g, r).unwrap();
        let stats = check(&g, &d).unwrap();
        assert!(stats.regions > 1);
    }

    #[test]
    fn degree_reduced_triangulations_are_valid() {
        for (n, seed) in [(100, 1), (1000, 2), (5000, 3)] {
            let g0 = generate(GraphKind::StackedTriangulation, n, seed).unwrap();
            let (g, _) = reduce_degree(&g0);
            let r = log_sq(g.vertex_count());
            let d = build(&g, r).unwrap();
            check(&g, &d).unwrap();
        }
    }

    #[test]
    fn isolated_vertices_land_in_one_region() {
        let mut g = generate(GraphKind::Grid, 400, 0).unwrap();
        let incident: Vec<_> = g.rotation(0).map(crate::planar::edge_of).collect();
        for e in incident {
            g.delete_edge(e);
        }
        let d = build(&g, 40).unwrap();
        check(&g, &d).unwrap();
        assert_eq!(d.regions_of[0].len(), 1);
    }

    #[test]
    fn checker_rejects_shared_edges() {
        let g = generate(GraphKind::Grid, 100, 0).unwrap();
        let mut d = build(&g, 20).unwrap();
        let e = d.regions[0].edges[0];
        let (a, b) = g.endpoints(e);
        let reg = Region {
            vertices: vec![a, b],
            edges: vec![e],
            boundary: vec![],
        };
        d.regions.push(reg);
        assert!(check(&g, &d).is_err());
    }

    #[test]
    fn dump_has_one_line_per_region() {
        let g = generate(GraphKind::Grid, 100, 0).unwrap();
        let d = build(&g, 20).unwrap();
        assert_eq!(dump(&d).lines().count(), d.regions.len() + 1);
    }
}
